"""Exact arithmetic in G = F2 x F2.

Elements are stored as a pair of freely reduced words, one per free factor.
Letters are signed indices: +-1, +-2 generate the left factor and +-3, +-4
the right factor.  Because the normal form is unique, equality and hashing
are plain tuple operations.

Two markings of G are built in:

* ``S1``: the standard right-angled Artin generators ``a, b, c, d``.
* ``S2``: the HNN-style generators ``a, b, c, t`` with ``a -> (1 | -3)``,
  ``b -> (2 | -3)``, ``c -> (| 3)`` and ``t -> (| 4)``.  The letters ``x, y, d``
  of the other common notation for this marking correspond to ``a, b, t``.

Words over a marking are strings: a lowercase letter is a generator and the
matching uppercase letter is its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

LEFT_INDICES = frozenset({1, -1, 2, -2})
RIGHT_INDICES = frozenset({3, -3, 4, -4})

FreeWord = tuple  # tuple[int, ...], freely reduced
GenWord = str


class WordError(ValueError):
    """Rejected input: malformed word, mixed factors, bad generating set."""


class UnsupportedGenSetError(ValueError):
    pass


def reduce_free_word(letters: Sequence[int]) -> FreeWord:
    """Freely reduce a sequence of signed indices from a single factor."""
    letters = tuple(letters)
    if letters:
        factor = LEFT_INDICES if letters[0] in LEFT_INDICES else RIGHT_INDICES
        for x in letters:
            if x not in factor:
                raise WordError(f"letters {letters!r} mix factors or use unknown indices")
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def _concat(u: FreeWord, v: FreeWord) -> FreeWord:
    # both inputs reduced, so cancellation only happens at the seam
    if not u:
        return v
    if not v:
        return u
    i = 0
    n = min(len(u), len(v))
    while i < n and u[-1 - i] == -v[i]:
        i += 1
    if i == 0:
        return u + v
    return u[: len(u) - i] + v[i:]


def _invert(u: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(u))


class GroupElement(NamedTuple):
    """Normal form of an element of F2 x F2."""

    left: FreeWord = ()
    right: FreeWord = ()

    def __mul__(self, other: "GroupElement") -> "GroupElement":  # type: ignore[override]
        return GroupElement(_concat(self.left, other.left), _concat(self.right, other.right))

    def inverse(self) -> "GroupElement":
        return GroupElement(_invert(self.left), _invert(self.right))

    def __repr__(self) -> str:
        return f"GroupElement({canonical_key(self)!r})"


IDENTITY = GroupElement((), ())


def make_element(left: Sequence[int] = (), right: Sequence[int] = ()) -> GroupElement:
    """Build a normal-form element, reducing and validating both components."""
    left = reduce_free_word(left)
    right = reduce_free_word(right)
    if any(x not in LEFT_INDICES for x in left):
        raise WordError(f"left component {left!r} must use indices +-1, +-2")
    if any(x not in RIGHT_INDICES for x in right):
        raise WordError(f"right component {right!r} must use indices +-3, +-4")
    return GroupElement(left, right)


def elem_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def elem_inv(x: GroupElement) -> GroupElement:
    return x.inverse()


def elem_pow(x: GroupElement, n: int) -> GroupElement:
    base = x if n >= 0 else x.inverse()
    out = IDENTITY
    for _ in range(abs(n)):
        out = out * base
    return out


def canonical_key(x: GroupElement) -> str:
    """Injective ASCII key: ``"1,-2|3,3"`` for (g1 g2^-1 | g3^2)."""
    return ",".join(map(str, x.left)) + "|" + ",".join(map(str, x.right))


def parse_key(key: str) -> GroupElement:
    """Inverse of :func:`canonical_key`; rejects non-normal-form keys."""
    try:
        left_s, right_s = key.split("|")
        left = tuple(int(s) for s in left_s.split(",")) if left_s else ()
        right = tuple(int(s) for s in right_s.split(",")) if right_s else ()
    except ValueError as exc:
        raise WordError(f"malformed element key {key!r}") from exc
    x = make_element(left, right)
    if x.left != left or x.right != right:
        raise WordError(f"element key {key!r} is not freely reduced")
    return x


def len_s1_closed_form(x: GroupElement) -> int:
    """Word length under the standard marking: |left| + |right|."""
    return len(x.left) + len(x.right)


# --- generating sets -------------------------------------------------------


@dataclass(frozen=True)
class GenSet:
    """A marking of G by four generators.

    ``directed_edges`` lists the eight directed edge labels (generator then
    inverse, in generator order) with their images.
    """

    name: str
    generators: tuple[tuple[str, GroupElement], ...]
    directed_edges: tuple[tuple[str, GroupElement], ...] = field(init=False, repr=False)
    images: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.generators) != 4:
            raise WordError("a generating set needs exactly 4 generators")
        edges = []
        for label, g in self.generators:
            if len(label) != 1 or not label.islower():
                raise WordError(f"generator label {label!r} must be one lowercase letter")
            if g == IDENTITY:
                raise WordError(f"generator {label!r} is the identity")
            edges.append((label, g))
            edges.append((label.upper(), g.inverse()))
        if len({lab for lab, _ in edges}) != 8:
            raise WordError("generator labels must be distinct")
        if len({g for _, g in edges}) != 8:
            raise WordError("the 8 directed generator images must be pairwise distinct")
        object.__setattr__(self, "directed_edges", tuple(edges))
        object.__setattr__(self, "images", dict(edges))

    @property
    def labels(self) -> str:
        return "".join(lab for lab, _ in self.generators)

    @property
    def alphabet(self) -> str:
        return "".join(lab for lab, _ in self.directed_edges)

    @property
    def edge_images(self) -> tuple[GroupElement, ...]:
        return tuple(g for _, g in self.directed_edges)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"GenSet({self.name!r})"


S1 = GenSet(
    "s1",
    (
        ("a", GroupElement((1,), ())),
        ("b", GroupElement((2,), ())),
        ("c", GroupElement((), (3,))),
        ("d", GroupElement((), (4,))),
    ),
)

S2 = GenSet(
    "s2",
    (
        ("a", GroupElement((1,), (-3,))),
        ("b", GroupElement((2,), (-3,))),
        ("c", GroupElement((), (3,))),
        ("t", GroupElement((), (4,))),
    ),
)

RELATORS = {
    "s1": ("acAC", "bcBC", "adAD", "bdBD"),
    "s2": ("acAC", "bcBC", "actCAT", "bctCBT"),
}


def invert_word(w: GenWord) -> GenWord:
    return w[::-1].swapcase()


def check_word(gs: GenSet, w: GenWord) -> GenWord:
    bad = [ch for ch in w if ch not in gs.images]
    if bad:
        raise WordError(f"word {w!r} has tokens {''.join(sorted(set(bad)))!r} outside {gs.alphabet!r}")
    return w


def eval_word(gs: GenSet, w: GenWord) -> GroupElement:
    """Left-to-right product of the directed generator images of ``w``."""
    check_word(gs, w)
    images = gs.images
    x = IDENTITY
    for ch in w:
        x = x * images[ch]
    return x


def prefix_elements(gs: GenSet, w: GenWord, start: GroupElement = IDENTITY) -> list[GroupElement]:
    """Vertices of the path labelled ``w`` from ``start``: ``len(w) + 1`` of them."""
    check_word(gs, w)
    images = gs.images
    out = [start]
    for ch in w:
        out.append(out[-1] * images[ch])
    return out


def custom_genset(words: Sequence[str]) -> GenSet:
    """Generating set given by four words over the ``S1`` alphabet.

    The generators are labelled ``a, b, c, d`` and the set is named
    ``custom:w1,w2,w3,w4``.
    """
    words = [w.strip() for w in words]
    if len(words) != 4:
        raise WordError(f"custom generating set needs 4 words, got {len(words)}")
    gens = tuple((lab, eval_word(S1, w)) for lab, w in zip("abcd", words))
    return GenSet("custom:" + ",".join(words), gens)


def genset_from_name(name: str) -> GenSet:
    if name == "s1":
        return S1
    if name == "s2":
        return S2
    if name.startswith("custom:"):
        return custom_genset(name[len("custom:"):].split(","))
    raise WordError(f"unknown generating set {name!r} (expected s1, s2 or custom:w1,w2,w3,w4)")


# --- exponent sums and the maps used for S2 -----------------------------


def exponent_sum(w: Union[GenWord, FreeWord], letter: Union[str, int]) -> int:
    """Signed number of occurrences of ``letter`` in ``w``.

    ``w`` is either a generator word (``letter`` a lowercase label) or a free
    word (``letter`` a positive index).
    """
    if isinstance(w, str):
        return w.count(letter) - w.count(letter.upper())
    return sum(1 for x in w if x == letter) - sum(1 for x in w if x == -letter)


def in_H(x: GroupElement) -> bool:
    """Membership in H = <ac, bc>, which is the left factor in these coordinates."""
    return not x.right


def lemma1_express(w: GenWord) -> tuple[tuple[str, int], ...]:
    """Rewrite a word over ``a, b`` as a word in the generators ``ac, bc`` of H.

    Each letter ``s^p`` becomes ``(sc)^p``; the result evaluates to
    ``w c^k`` where ``k`` is the exponent sum of ``w``.
    """
    out = []
    for ch in w:
        if ch not in "abAB":
            raise WordError(f"word {w!r} must use only a, b and their inverses")
        out.append((ch.lower() + "c", 1 if ch.islower() else -1))
    return tuple(out)


def format_h_word(hw: Sequence[tuple[str, int]]) -> str:
    return "".join(f"({g})" if p == 1 else f"({g})^-1" for g, p in hw)


def eval_h_word(hw: Sequence[tuple[str, int]]) -> GroupElement:
    x = IDENTITY
    for g, p in hw:
        y = eval_word(S2, g)
        x = x * (y if p == 1 else y.inverse())
    return x


def retraction_f(x: GroupElement) -> GroupElement:
    """The quotient map fixing a, b, c and killing t."""
    return GroupElement(x.left, reduce_free_word([i for i in x.right if i not in (4, -4)]))


def hom_h(x: GroupElement) -> int:
    """Exponent of the homomorphism to Z with a, b -> 1, c -> -1, t -> 0."""
    return -exponent_sum(x.right, 3)


def sheet(x: GroupElement) -> FreeWord:
    """Tag of the coset x<a, b, c>: the right component minus its trailing c-run."""
    r = x.right
    end = len(r)
    while end and r[end - 1] in (3, -3):
        end -= 1
    return r[:end]


def path_sheet_crossings(gs: GenSet, start: GroupElement, w: GenWord) -> list[int]:
    """Indices of edges in the path ``w`` from ``start`` that change sheet."""
    if gs.name != "s2":
        raise UnsupportedGenSetError("sheets are defined only for the s2 marking")
    verts = prefix_elements(gs, w, start)
    return [j for j in range(len(w)) if sheet(verts[j]) != sheet(verts[j + 1])]
