"""Per-radius convexity checks, theorem witness verifiers and corpus scans.

Every checker returns a :class:`CheckReport`.  Verdicts are HOLDS, FAILS or
INCONCLUSIVE for the checks; the two witness verifiers report a named
per-instance verdict such as ``MAC_FAILS_AT_RADIUS_4`` when the witness is
confirmed.  Witness records are plain dicts and can be re-checked from the
report alone with :func:`reverify_witness`.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import jsonschema
import numpy as np

from .ball import (
    DEFAULT_MAX_ELEMENTS,
    BallIndex,
    build_ball,
    distance,
    inside_distance,
    sphere_pairs_index,
)
from .group import (
    IDENTITY,
    RELATORS,
    S2,
    GenSet,
    GroupElement,
    canonical_key,
    eval_word,
    genset_from_name,
    parse_key,
)
from .search import Loop, fftp_falsify, loop_shorten_search

REPORT_VERSION = 1
WITNESS_CAP = 16
HOLDS, FAILS, INCONCLUSIVE, COMPUTED = "HOLDS", "FAILS", "INCONCLUSIVE", "COMPUTED"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "genset", "params", "verdict", "witnesses", "stats", "version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "genset": {"type": "string"},
        "params": {"type": "object"},
        "verdict": {"type": "string", "pattern": "^[A-Z][A-Z0-9_]*$"},
        "witnesses": {"type": "array", "items": {"type": "object", "required": ["kind"]}},
        "stats": {
            "type": "object",
            "required": ["ball_size", "pairs_examined", "max_inside_distance", "runtime_ms"],
            "properties": {
                "ball_size": {"type": ["integer", "null"]},
                "pairs_examined": {"type": ["integer", "null"]},
                "max_inside_distance": {"type": ["integer", "null"]},
                "runtime_ms": {"type": "number"},
            },
        },
        "version": {"const": REPORT_VERSION},
    },
}


@dataclass
class CheckReport:
    command: str
    genset: str
    params: dict
    verdict: str
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    version: int = REPORT_VERSION

    def to_dict(self) -> dict:
        d = asdict(self)
        stats = {"ball_size": None, "pairs_examined": None, "max_inside_distance": None, "runtime_ms": 0.0}
        stats.update(d["stats"])
        d["stats"] = stats
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        jsonschema.validate(d, REPORT_SCHEMA)
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        return cls.from_dict(json.loads(text))

    @property
    def confirmed(self) -> bool:
        """True for HOLDS, pure computations and confirmed witness verifications."""
        return self.verdict not in (FAILS, INCONCLUSIVE)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = round((time.perf_counter() - self.t0) * 1000.0, 3)


def _ball_for(gs: GenSet, radius: int, ball: Optional[BallIndex], max_elements: int) -> BallIndex:
    if ball is not None and ball.genset.name == gs.name and ball.radius >= radius:
        return ball
    return build_ball(gs, radius, max_elements)


def _pair_witness(ball: BallIndex, u: GroupElement, v: GroupElement, r: int, d: int, inside: int) -> dict:
    return {
        "kind": "sphere_pair",
        "genset": ball.genset.name,
        "radius": r,
        "u": canonical_key(u),
        "v": canonical_key(v),
        "u_word": ball.geodesic_word(u),
        "v_word": ball.geodesic_word(v),
        "distance": d,
        "inside_distance": inside,
    }


# --- almost convexity --------------------------------------------------------


def _scan_radius(ball: BallIndex, r: int, chunk: int = 256):
    """Inside distances within the radius-r ball for all close pairs on Sph(r)."""
    i, j, d = sphere_pairs_index(ball, r)
    inside = np.empty(len(i), dtype=np.int64)
    if len(i):
        # one restricted BFS per distinct left endpoint
        src, inv = np.unique(i, return_inverse=True)
        for lo in range(0, len(src), chunk):
            block = src[lo:lo + chunk]
            rows = ball.restricted_distances(block, r)
            sel = (inv >= lo) & (inv < lo + len(block))
            vals = rows[inv[sel] - lo, j[sel]]
            if np.isinf(vals).any():
                raise AssertionError("sphere points disconnected inside the ball")
            inside[sel] = vals.astype(np.int64)
    return i, j, d, inside


def check_ac_radius(
    gs: GenSet,
    r: int,
    f_value: int,
    ball: Optional[BallIndex] = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    command: str = "check-ac",
) -> CheckReport:
    """Decide the almost convexity inequality at the single radius ``r``.

    All pairs u, v on Sph(r) with d(u, v) <= 2 are joined by a shortest path
    inside the closed ball of radius r; the verdict is HOLDS iff the longest
    of these is at most ``f_value``.  Witnesses are the pairs attaining the
    maximum, in key order, capped at 16.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    with _Timer() as timer:
        ball = _ball_for(gs, r + 1, ball, max_elements)
        i, j, d, inside = _scan_radius(ball, r)
        worst = int(inside.max()) if len(inside) else 0
        witnesses = []
        if len(inside):
            els = ball.elements
            hits = []
            for a, b, dd in zip(i[inside == worst], j[inside == worst], d[inside == worst]):
                u, v = sorted((els[a], els[b]), key=canonical_key)
                hits.append((canonical_key(u), canonical_key(v), u, v, int(dd)))
            hits.sort(key=lambda h: h[:2])
            witnesses = [_pair_witness(ball, u, v, r, dd, worst) for _, _, u, v, dd in hits[:WITNESS_CAP]]
    return CheckReport(
        command=command,
        genset=gs.name,
        params={"r": r, "f_value": f_value},
        verdict=HOLDS if worst <= f_value else FAILS,
        witnesses=witnesses,
        stats={
            "ball_size": ball.count(r),
            "pairs_examined": int(len(i)),
            "max_inside_distance": worst,
            "runtime_ms": timer.ms,
        },
    )


def check_mac_radius(gs: GenSet, r: int, **kw) -> CheckReport:
    """Minimal almost convexity at radius r: f(r) = 2r - 1."""
    return check_ac_radius(gs, r, 2 * r - 1, command="check-mac", **kw)


def check_mprimeac_radius(gs: GenSet, r: int, **kw) -> CheckReport:
    """The slightly stronger M'AC condition at radius r: f(r) = 2r - 2."""
    return check_ac_radius(gs, r, 2 * r - 2, command="check-mprimeac", **kw)


def convexity_profile(
    gs: GenSet,
    r_max: int,
    ball: Optional[BallIndex] = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> list[tuple[int, int]]:
    """(r, max inside distance) for r = 1..r_max, from exhaustive scans."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    ball = _ball_for(gs, r_max + 1, ball, max_elements)
    out = []
    for r in range(1, r_max + 1):
        _, _, _, inside = _scan_radius(ball, r)
        out.append((r, int(inside.max()) if len(inside) else 0))
    return out


# --- the MAC witness family ---------------------------------------------------


def thm2_witness(n: int) -> tuple[GroupElement, GroupElement]:
    """The pair a^n b^-n and t a^n b^-(n-1) under s2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return (
        eval_word(S2, "a" * n + "B" * n),
        eval_word(S2, "t" + "a" * n + "B" * (n - 1)),
    )


def verify_thm2(
    n: int,
    ball: Optional[BallIndex] = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> CheckReport:
    """Confirm that the n-th witness pair breaks MAC at radius 2n.

    Checks |u| = |v| = 2n, d(u, v) = 2 and that the shortest path between
    them inside the ball of radius 2n has length exactly 4n > 2(2n) - 1.
    """
    with _Timer() as timer:
        r = 2 * n
        u, v = thm2_witness(n)
        ball = _ball_for(S2, r, ball, max_elements)
        len_u, len_v = ball.distance_of(u), ball.distance_of(v)
        d_uv = distance(S2, u, v, 2)
        inside = inside_distance(ball, u, v, r) if len_u == r and len_v == r else None
        checks = {
            "length_u": len_u == r,
            "length_v": len_v == r,
            "distance_2": d_uv == 2,
            "inside_distance_4n": inside == 4 * n,
            "exceeds_mac_bound": inside is not None and inside > 2 * r - 1,
        }
        ok = all(checks.values())
        witnesses = [_pair_witness(ball, u, v, r, d_uv, inside)] if ok else []
    return CheckReport(
        command="verify-thm2",
        genset=S2.name,
        params={"n": n, "r": r, "f_value": 2 * r - 1},
        verdict=f"MAC_FAILS_AT_RADIUS_{r}" if ok else INCONCLUSIVE,
        witnesses=witnesses,
        stats={
            "ball_size": ball.count(r),
            "pairs_examined": 1,
            "max_inside_distance": inside,
            "runtime_ms": timer.ms,
            "length_u": len_u,
            "length_v": len_v,
            "distance": d_uv,
            "checks": checks,
        },
    )


# --- the loop shortening witness family ----------------------------------------


def thm3_word(k: int) -> str:
    return "a" * (2 * k) + "B" * (4 * k) + "a" * (2 * k) + "t" + "A" * (2 * k) + "b" * (4 * k) + "A" * (2 * k) + "T"


def thm3_loop(k: int) -> Loop:
    """The loop a^2k b^-4k a^2k t a^-2k b^4k a^-2k t^-1 at the identity (length 16k + 2)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return Loop(S2, IDENTITY, thm3_word(k))


def thm3_checkpoints(k: int) -> list[GroupElement]:
    """u_1 = a^k, u_2 = a^2k b^-4k a^k, u_3 = t u_2, u_4 = t a^k."""
    u2 = "a" * (2 * k) + "B" * (4 * k) + "a" * k
    return [eval_word(S2, w) for w in ("a" * k, u2, "t" + u2, "t" + "a" * k)]


def _loop_witness(loop: Loop, k: int, strict: bool, basepoint: bool) -> dict:
    return {
        "kind": "unshortenable_loop",
        "genset": loop.genset.name,
        "base": canonical_key(loop.base),
        "word": loop.word,
        "k": k,
        "strict": strict,
        "basepoint": basepoint,
    }


def verify_thm3(k: int, basepoint: bool = False, strict: bool = True) -> CheckReport:
    """Confirm that the k-th loop has no shorter k-fellow-travelling loop."""
    with _Timer() as timer:
        loop = thm3_loop(k)
        shorter = loop_shorten_search(S2, loop, k, strict=strict, basepoint_fixed=basepoint)
        ok = shorter is None and len(loop) == 16 * k + 2
    prop = "BLSP" if basepoint else "LSP"
    return CheckReport(
        command="verify-thm3",
        genset=S2.name,
        params={"k": k, "strict": strict, "basepoint": basepoint},
        verdict=f"{prop}_FAILS_AT_K_{k}" if ok else INCONCLUSIVE,
        witnesses=[_loop_witness(loop, k, strict, basepoint)] if ok else [
            {"kind": "shorter_loop", "genset": S2.name, "base": canonical_key(shorter.base), "word": shorter.word}
        ] if shorter is not None else [],
        stats={"loop_length": len(loop), "runtime_ms": timer.ms},
    )


# --- corpus scans ------------------------------------------------------------------


def all_words(gs: GenSet, max_len: int, min_len: int = 0) -> Iterable[str]:
    alphabet = gs.alphabet
    for n in range(min_len, max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield "".join(letters)


def fftp_scan(
    gs: GenSet,
    max_len: int,
    k: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> CheckReport:
    """Try to falsify every non-geodesic word of length <= max_len at bound k.

    Also records, for the corpus, the smallest k' <= k at which every word is
    falsified (``minimal_k``; None if none works).
    """
    with _Timer() as timer:
        ball = build_ball(gs, max_len, max_elements)
        failures = []
        per_word_k = []
        examined = 0
        for w in all_words(gs, max_len, 1):
            if ball.distance_of(eval_word(gs, w)) == len(w):
                continue
            examined += 1
            need = None
            for kk in range(1, k + 1):
                if fftp_falsify(gs, w, kk) is not None:
                    need = kk
                    break
            if need is None:
                failures.append(w)
            else:
                per_word_k.append(need)
        minimal_k = max(per_word_k, default=1) if not failures else None
        witnesses = [{"kind": "fftp_counterexample", "genset": gs.name, "word": w, "k": k} for w in failures[:WITNESS_CAP]]
    return CheckReport(
        command="fftp-scan",
        genset=gs.name,
        params={"max_len": max_len, "k": k},
        verdict=HOLDS if not failures else FAILS,
        witnesses=witnesses,
        stats={
            "ball_size": len(ball),
            "runtime_ms": timer.ms,
            "words_examined": examined,
            "counterexamples": len(failures),
            "minimal_k": minimal_k,
        },
    )


def default_loop_corpus(gs: GenSet, max_len: int = 4) -> list[Loop]:
    """Closed, freely reduced words of length <= max_len, then doubled relators."""
    words = []
    for w in all_words(gs, max_len, 1):
        if any(w[i] == w[i + 1].swapcase() for i in range(len(w) - 1)):
            continue
        if eval_word(gs, w) == IDENTITY:
            words.append(w)
    words.extend(rel * 2 for rel in RELATORS.get(gs.name, ()))
    return [Loop(gs, IDENTITY, w) for w in words]


def lsp_scan(
    gs: GenSet,
    loop_corpus: Optional[Sequence[Loop]],
    k: int,
    basepoint: bool = False,
    strict: bool = True,
) -> CheckReport:
    """Try to shorten every corpus loop of length >= 2 at bound k."""
    if loop_corpus is None:
        loop_corpus = default_loop_corpus(gs)
    with _Timer() as timer:
        failures = []
        outcomes = []
        for loop in loop_corpus:
            if len(loop) < 2:
                continue
            shorter = loop_shorten_search(gs, loop, k, strict=strict, basepoint_fixed=basepoint)
            outcomes.append({
                "base": canonical_key(loop.base),
                "word": loop.word,
                "shorter": None if shorter is None else {"base": canonical_key(shorter.base), "word": shorter.word},
            })
            if shorter is None:
                failures.append(loop)
    return CheckReport(
        command="lsp-scan",
        genset=gs.name,
        params={"k": k, "strict": strict, "basepoint": basepoint},
        verdict=HOLDS if not failures else FAILS,
        witnesses=[_loop_witness(loop, k, strict, basepoint) for loop in failures[:WITNESS_CAP]],
        stats={"runtime_ms": timer.ms, "loops_examined": len(outcomes), "outcomes": outcomes},
    )


# --- witness re-verification ----------------------------------------------------------


def reverify_witness(w: dict, max_elements: int = DEFAULT_MAX_ELEMENTS) -> bool:
    """Re-check one witness record against the underlying operation."""
    kind = w["kind"]
    if kind == "sphere_pair":
        return _reverify_pair(genset_from_name(w["genset"]), w, max_elements)
    if kind == "unshortenable_loop":
        gs = genset_from_name(w["genset"])
        loop = Loop(gs, parse_key(w["base"]), w["word"])
        return loop_shorten_search(gs, loop, w["k"], strict=w["strict"], basepoint_fixed=w["basepoint"]) is None
    if kind == "fftp_counterexample":
        gs = genset_from_name(w["genset"])
        return fftp_falsify(gs, w["word"], w["k"]) is None
    raise ValueError(f"unknown witness kind {kind!r}")


def _reverify_pair(gs: GenSet, w: dict, max_elements: int) -> bool:
    r = w["radius"]
    u, v = parse_key(w["u"]), parse_key(w["v"])
    if eval_word(gs, w["u_word"]) != u or eval_word(gs, w["v_word"]) != v:
        return False
    ball = build_ball(gs, r, max_elements)
    return (
        ball.distance_of(u) == r
        and ball.distance_of(v) == r
        and distance(gs, u, v, 2) == w["distance"]
        and inside_distance(ball, u, v, r) == w["inside_distance"]
    )


def reverify_report(report: CheckReport, max_elements: int = DEFAULT_MAX_ELEMENTS) -> bool:
    """True iff every witness in ``report`` re-verifies and supports its verdict."""
    if report.verdict == FAILS and not report.witnesses:
        return False
    for w in report.witnesses:
        if w.get("genset") != report.genset or not reverify_witness(w, max_elements):
            return False
        if w["kind"] == "sphere_pair" and report.verdict == FAILS and w["inside_distance"] <= report.params["f_value"]:
            return False
    return True
