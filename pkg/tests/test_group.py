import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2xf2.group import (
    IDENTITY,
    RELATORS,
    S1,
    S2,
    GroupElement,
    UnsupportedGenSetError,
    WordError,
    canonical_key,
    custom_genset,
    elem_inv,
    elem_mul,
    eval_h_word,
    eval_word,
    exponent_sum,
    format_h_word,
    genset_from_name,
    hom_h,
    in_H,
    invert_word,
    lemma1_express,
    len_s1_closed_form,
    make_element,
    parse_key,
    path_sheet_crossings,
    reduce_free_word,
    retraction_f,
    sheet,
)

from oracles import stack_reduce

left_letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12)
right_letters = st.lists(st.sampled_from([3, -3, 4, -4]), max_size=12)
elements = st.builds(make_element, left_letters, right_letters)
s2_words = st.text(alphabet="aAbBcCtT", max_size=10)


def test_reduce_free_word_examples():
    assert reduce_free_word([1, -1]) == ()
    assert reduce_free_word([1, 2, -2, -1, 1]) == (1,)
    assert reduce_free_word([3, 3, 4]) == (3, 3, 4)


def test_reduce_free_word_rejects_mixed_factors():
    with pytest.raises(WordError):
        reduce_free_word([1, 3])
    with pytest.raises(WordError):
        reduce_free_word([5])


@given(st.one_of(left_letters, right_letters))
def test_reduce_matches_stack_oracle(letters):
    out = reduce_free_word(letters)
    assert list(out) == stack_reduce(letters)
    assert reduce_free_word(out) == out
    assert len(out) <= len(letters)


def test_elem_mul_examples():
    g1 = GroupElement((1,), ())
    assert elem_mul(g1, elem_inv(g1)) == IDENTITY
    assert elem_mul(GroupElement((1,), (-3,)), GroupElement((2,), (-3,))) == GroupElement((1, 2), (-3, -3))
    assert elem_mul(GroupElement((1,), (-3,)), GroupElement((), (3,))) == GroupElement((1,), ())
    assert eval_word(S2, "ab") == GroupElement((1, 2), (-3, -3))
    assert eval_word(S2, "ac") == GroupElement((1,), ())


def test_elem_inv_examples():
    assert elem_inv(IDENTITY) == IDENTITY
    assert elem_inv(GroupElement((1, 2), (3,))) == GroupElement((-2, -1), (-3,))


@given(elements, elements, elements)
def test_group_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * IDENTITY == x == IDENTITY * x
    assert x * x.inverse() == IDENTITY == x.inverse() * x
    assert x.inverse().inverse() == x


def test_eval_word():
    assert eval_word(S1, "aC") == eval_word(S2, "a")
    assert eval_word(S2, "aabbBBAA") == IDENTITY
    assert eval_word(S2, "act") == eval_word(S2, "tac")
    assert eval_word(S2, "") == IDENTITY
    with pytest.raises(WordError):
        eval_word(S2, "ad")


@pytest.mark.parametrize("gs", [S1, S2], ids=["s1", "s2"])
def test_relators(gs):
    for rel in RELATORS[gs.name]:
        assert eval_word(gs, rel) == IDENTITY, rel


def test_tietze_identities():
    assert eval_word(S1, "aC") == eval_word(S2, "a")
    assert eval_word(S1, "bC") == eval_word(S2, "b")
    assert eval_word(S1, "c") == eval_word(S2, "c")
    assert eval_word(S1, "d") == eval_word(S2, "t")


@given(s2_words)
def test_invert_word(w):
    assert eval_word(S2, invert_word(w)) == eval_word(S2, w).inverse()


def test_exponent_sum():
    assert exponent_sum("aabA", "a") == 1
    assert exponent_sum("ab", "b") == 1
    from f2xf2.convexity import thm3_word

    w = thm3_word(1)
    assert exponent_sum(w, "a") == 0
    assert exponent_sum(w, "t") == 0
    assert exponent_sum((1, 1, -2, -1), 1) == 1


def test_len_s1_closed_form_examples():
    assert len_s1_closed_form(IDENTITY) == 0
    assert len_s1_closed_form(GroupElement((1, 1), (3, 3, 3))) == 5
    assert len_s1_closed_form(GroupElement((1, -2), (4,))) == 3


def test_in_H_examples():
    assert in_H(eval_word(S2, "ac"))
    assert not in_H(eval_word(S2, "a"))
    assert in_H(eval_word(S2, "bA"))


def test_lemma1_express_examples():
    assert format_h_word(lemma1_express("a")) == "(ac)"
    assert eval_h_word(lemma1_express("a")) == eval_word(S2, "ac")
    assert lemma1_express("") == ()
    assert format_h_word(lemma1_express("aB")) == "(ac)(bc)^-1"
    assert eval_h_word(lemma1_express("aB")) == eval_word(S2, "aB")
    with pytest.raises(WordError):
        lemma1_express("ac")


def _c_power(k):
    return eval_word(S2, "c" * k if k >= 0 else "C" * -k)


def test_lemma1_equivalence_randomized():
    rng = random.Random(20261019)
    for _ in range(1500):
        w = "".join(rng.choice("aAbB") for _ in range(rng.randint(0, 12)))
        k = exponent_sum(w, "a") + exponent_sum(w, "b")
        x = eval_word(S2, w) * _c_power(k)
        assert in_H(x)
        assert eval_h_word(lemma1_express(w)) == x
        assert len(lemma1_express(w)) == len(w)
        assert hom_h(x) == 0
    for _ in range(500):
        hw = [(rng.choice(["ac", "bc"]), rng.choice([1, -1])) for _ in range(rng.randint(0, 12))]
        assert in_H(eval_h_word(hw))


def test_retraction_f():
    assert retraction_f(eval_word(S2, "t")) == IDENTITY
    assert retraction_f(eval_word(S2, "act")) == eval_word(S2, "ac")


@given(elements, elements)
def test_retraction_f_is_idempotent_homomorphism(x, y):
    assert retraction_f(x * y) == retraction_f(x) * retraction_f(y)
    assert retraction_f(retraction_f(x)) == retraction_f(x)
    assert x.left == retraction_f(x).left


def test_hom_h_examples():
    assert hom_h(eval_word(S2, "c")) == -1
    assert hom_h(eval_word(S2, "aaaa" + "B" * 8 + "aa")) == -2
    for w in ("a", "b", "t"):
        assert hom_h(eval_word(S2, w)) == (0 if w == "t" else 1)


@given(elements, elements)
def test_hom_h_properties(x, y):
    assert hom_h(x * y) == hom_h(x) + hom_h(y)
    assert hom_h(GroupElement(x.left, ())) == 0


@pytest.mark.parametrize("rel", RELATORS["s2"])
def test_hom_h_and_f_kill_relators(rel):
    x = eval_word(S2, rel)
    assert hom_h(x) == 0 and retraction_f(x) == IDENTITY


def test_sheet_examples():
    assert sheet(eval_word(S2, "a")) == sheet(IDENTITY) == ()
    assert sheet(eval_word(S2, "t")) != sheet(IDENTITY)
    assert sheet(eval_word(S2, "tc")) == sheet(eval_word(S2, "t"))


@given(elements)
def test_sheet_cosets(x):
    for w in "abcABC":
        assert sheet(x * eval_word(S2, w)) == sheet(x)
    for w in "tT":
        assert sheet(x * eval_word(S2, w)) != sheet(x)


def test_path_sheet_crossings():
    from f2xf2.convexity import thm3_word

    assert path_sheet_crossings(S2, IDENTITY, "ab") == []
    assert path_sheet_crossings(S2, IDENTITY, "t") == [0]
    w = thm3_word(1)
    crossings = path_sheet_crossings(S2, IDENTITY, w)
    assert len(crossings) == 2
    assert [w[j] for j in crossings] == ["t", "T"]
    with pytest.raises(UnsupportedGenSetError):
        path_sheet_crossings(S1, IDENTITY, "d")


@given(s2_words)
def test_sheet_crossings_are_t_edges(w):
    assert all(w[j] in "tT" for j in path_sheet_crossings(S2, IDENTITY, w))


def test_canonical_key_examples():
    assert canonical_key(IDENTITY) == "|"
    assert canonical_key(GroupElement((1, -2), (3, 3))) == "1,-2|3,3"


@given(elements, elements)
def test_canonical_key_injective_and_parseable(x, y):
    assert (canonical_key(x) == canonical_key(y)) == (x == y)
    assert parse_key(canonical_key(x)) == x


@pytest.mark.parametrize("bad", ["1,-1|", "1|x", "3|", "1,2", "|1"])
def test_parse_key_rejects(bad):
    with pytest.raises(WordError):
        parse_key(bad)


def test_genset_images():
    assert [g for _, g in S1.generators] == [
        GroupElement((1,), ()), GroupElement((2,), ()), GroupElement((), (3,)), GroupElement((), (4,)),
    ]
    assert [g for _, g in S2.generators] == [
        GroupElement((1,), (-3,)), GroupElement((2,), (-3,)), GroupElement((), (3,)), GroupElement((), (4,)),
    ]
    for gs in (S1, S2):
        assert len(set(gs.edge_images)) == 8
        assert gs.alphabet == "".join(c + c.upper() for c in gs.labels)


def test_custom_genset():
    gs = custom_genset(["aC", "bC", "c", "d"])
    assert gs.edge_images == S2.edge_images
    assert genset_from_name(gs.name).edge_images == gs.edge_images
    with pytest.raises(WordError):
        custom_genset(["a", "aA", "c", "d"])  # identity generator
    with pytest.raises(WordError):
        custom_genset(["a", "A", "c", "d"])  # repeated image
    with pytest.raises(WordError):
        custom_genset(["a", "b", "c"])
    with pytest.raises(WordError):
        genset_from_name("s3")
