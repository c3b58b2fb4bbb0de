"""Falsification by fellow traveller on short words."""
from collections import Counter

from f2xf2 import S1, S2, fftp_falsify, fftp_scan, geodesic_check
from f2xf2.convexity import all_words

# the MAC witness words are not geodesic, but the shorter replacement drifts far away
for n in (1, 2):
    w = "a" * n + "B" * n + "tb"
    print(w, [fftp_falsify(S2, w, k) for k in range(1, 5)])

# how wide a corridor each short non-geodesic word needs
for gs in (S1, S2):
    need = Counter()
    for w in all_words(gs, 4, 1):
        if geodesic_check(gs, w):
            continue
        need[next((k for k in range(1, 5) if fftp_falsify(gs, w, k) is not None), None)] += 1
    print(gs.name, dict(need))

rep = fftp_scan(S1, 4, 2)
print(rep.verdict, rep.stats["words_examined"], rep.stats["minimal_k"])
