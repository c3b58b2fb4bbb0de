import json

import jsonschema
import pytest

from f2xf2.ball import build_ball, inside_distance
from f2xf2.convexity import (
    FAILS,
    HOLDS,
    REPORT_SCHEMA,
    CheckReport,
    check_ac_radius,
    check_mac_radius,
    check_mprimeac_radius,
    convexity_profile,
    default_loop_corpus,
    fftp_scan,
    lsp_scan,
    reverify_report,
    reverify_witness,
    thm2_witness,
    thm3_checkpoints,
    thm3_loop,
    verify_thm2,
    verify_thm3,
)
from f2xf2.group import IDENTITY, S1, S2, GroupElement, eval_word
from f2xf2.search import Loop


def test_check_ac_s2_radius2_fails_mac():
    rep = check_ac_radius(S2, 2, 3)
    assert rep.verdict == FAILS
    assert rep.stats["max_inside_distance"] == 4
    u, v = eval_word(S2, "aB"), eval_word(S2, "ta")
    assert inside_distance(build_ball(S2, 2), u, v) == 4
    assert all(w["inside_distance"] == 4 for w in rep.witnesses)
    assert len(rep.witnesses) == 16
    assert reverify_report(rep)


def test_check_mac_s1_radius2_holds():
    rep = check_mac_radius(S1, 2)
    assert rep.verdict == HOLDS
    assert rep.stats["max_inside_distance"] == 2
    assert rep.params["f_value"] == 3


@pytest.mark.parametrize("gs", [S1, S2], ids=["s1", "s2"])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_trivial_bound_2r_always_holds(gs, r):
    assert check_ac_radius(gs, r, 2 * r).verdict == HOLDS


def test_mac_and_mprimeac_on_s2():
    assert check_mac_radius(S2, 2).verdict == FAILS
    odd = check_mac_radius(S2, 3)
    assert odd.verdict == HOLDS and odd.stats["max_inside_distance"] == 4
    assert check_mprimeac_radius(S2, 2).verdict == FAILS
    assert check_mprimeac_radius(S1, 2).verdict == HOLDS


def test_verdict_is_monotone_in_f():
    ball = build_ball(S2, 4)
    verdicts = [check_ac_radius(S2, 3, f, ball=ball).verdict for f in range(0, 8)]
    first_hold = verdicts.index(HOLDS)
    assert all(v == FAILS for v in verdicts[:first_hold])
    assert all(v == HOLDS for v in verdicts[first_hold:])
    assert first_hold == 4


def test_convexity_profiles():
    assert convexity_profile(S2, 4) == [(1, 2), (2, 4), (3, 4), (4, 8)]
    assert convexity_profile(S1, 4) == [(1, 2), (2, 2), (3, 2), (4, 2)]


def test_thm2_witness():
    u, v = thm2_witness(1)
    assert u == eval_word(S2, "aB") and v == eval_word(S2, "ta")
    u, v = thm2_witness(2)
    assert u == GroupElement((1, 1, -2, -2), ())
    assert v == eval_word(S2, "taaB")
    with pytest.raises(ValueError):
        thm2_witness(0)


@pytest.mark.parametrize("n", [1, 2])
def test_verify_thm2(n):
    rep = verify_thm2(n)
    assert rep.verdict == f"MAC_FAILS_AT_RADIUS_{2 * n}"
    assert rep.stats["max_inside_distance"] == 4 * n
    assert rep.stats["length_u"] == rep.stats["length_v"] == 2 * n
    assert rep.stats["distance"] == 2
    assert all(rep.stats["checks"].values())
    assert reverify_report(rep)


def test_thm3_loop_shape():
    for k in range(1, 5):
        loop = thm3_loop(k)
        assert len(loop) == 16 * k + 2
        assert eval_word(S2, loop.word) == IDENTITY
    verts = thm3_loop(2).vertices
    positions = [verts.index(u) for u in thm3_checkpoints(2)]
    assert positions == sorted(positions)
    assert positions == [2, 14, 19, 31]


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("basepoint", [False, True])
def test_verify_thm3(k, basepoint):
    rep = verify_thm3(k, basepoint=basepoint)
    assert rep.verdict == f"{'BLSP' if basepoint else 'LSP'}_FAILS_AT_K_{k}"
    assert rep.witnesses[0]["word"] == thm3_loop(k).word
    assert reverify_report(rep)


def test_fftp_scan_s1():
    rep = fftp_scan(S1, 4, 3)
    assert rep.verdict == HOLDS
    assert rep.stats["minimal_k"] == 2
    assert rep.stats["words_examined"] == 2024
    small = fftp_scan(S1, 2, 1)
    assert small.verdict == HOLDS and small.stats["minimal_k"] == 1


def test_fftp_scan_s2_k1_counterexamples_reverify():
    rep = fftp_scan(S2, 4, 1)
    assert rep.verdict == FAILS
    assert rep.stats["counterexamples"] == 1256
    assert rep.witnesses[0]["word"] == "aAA"
    assert reverify_report(rep)


def test_lsp_scan():
    assert lsp_scan(S1, [], 1).verdict == HOLDS
    doubled = [Loop(S1, IDENTITY, "acAC" * 2)]
    assert lsp_scan(S1, doubled, 2, strict=False).verdict == HOLDS
    rep = lsp_scan(S1, None, 2, basepoint=False, strict=True)
    assert rep.verdict == HOLDS and rep.stats["loops_examined"] == 36
    rep = lsp_scan(S2, None, 2, basepoint=False, strict=True)
    assert rep.verdict == FAILS
    assert [w["word"] for w in rep.witnesses] == ["actCATactCAT", "bctCBTbctCBT"]
    assert reverify_report(rep)


def test_default_corpus():
    corpus = default_loop_corpus(S1)
    assert len(corpus) == 36
    assert all(eval_word(S1, loop.word) == IDENTITY for loop in corpus)


def test_report_json_round_trip():
    rep = check_mac_radius(S2, 2)
    doc = json.loads(rep.to_json())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert set(doc) == {"command", "genset", "params", "verdict", "witnesses", "stats", "version"}
    assert doc["version"] == 1
    back = CheckReport.from_json(rep.to_json())
    assert back.to_dict() == doc
    with pytest.raises(jsonschema.ValidationError):
        CheckReport.from_dict({**doc, "version": 2})


def test_tampered_witnesses_do_not_reverify():
    rep = check_mac_radius(S2, 2)
    w = dict(rep.witnesses[0])
    assert reverify_witness(w)
    assert not reverify_witness({**w, "inside_distance": 3})
    assert not reverify_witness({**w, "u_word": "ab"})
    fake = CheckReport(rep.command, rep.genset, rep.params, FAILS, [], rep.stats)
    assert not reverify_report(fake)
    loop_w = verify_thm3(1).witnesses[0]
    assert not reverify_witness({**loop_w, "strict": False, "k": 3, "word": "acAC" * 2})
