"""Normal forms in F2 x F2 and the two generating sets."""
from f2xf2 import S1, S2, canonical_key, eval_word, exponent_sum, hom_h, in_H, lemma1_express, retraction_f, sheet
from f2xf2.group import RELATORS, format_h_word

# An element is a pair of reduced free words. Left letters are +-1,+-2, right are +-3,+-4
x = eval_word(S2, "ab")
print(x, canonical_key(x))

# s2 hides the commuting structure: a = (1|-3), so ac lands in the left factor
print(eval_word(S2, "ac"), eval_word(S1, "a"))

# every relator of both presentations evaluates to the identity
for name, gs in (("s1", S1), ("s2", S2)):
    print(name, [canonical_key(eval_word(gs, r)) for r in RELATORS[name]])

# Tietze moves between the presentations
for w1, w2 in (("aC", "a"), ("bC", "b"), ("c", "c"), ("d", "t")):
    print(w1, "->", w2, eval_word(S1, w1) == eval_word(S2, w2))

# a word over a,b times the right power of c sits in H = <ac, bc>
w = "aaBabA"
k = exponent_sum(w, "a") + exponent_sum(w, "b")
y = eval_word(S2, w + "c" * k)
print(w, k, in_H(y), format_h_word(lemma1_express(w)))

# the homomorphisms used for loops: h counts c, f forgets t
z = eval_word(S2, "actCbT")
print(hom_h(z), retraction_f(z), sheet(z))
