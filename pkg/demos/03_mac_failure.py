"""Sphere pairs that must detour: the s2 Cayley graph is not minimally almost convex."""
from f2xf2 import S1, S2, canonical_key, check_mac_radius, convexity_profile, thm2_witness, verify_thm2

# u = a^n b^-n and v = t a^n b^-(n-1) sit on the sphere of radius 2n,
# two steps apart, but any path between them inside the ball has length 4n
for n in (1, 2, 3):
    rep = verify_thm2(n)
    u, v = thm2_witness(n)
    print(n, canonical_key(u), canonical_key(v), rep.stats["max_inside_distance"], rep.verdict)

# per-radius maxima: s2 alternates, s1 stays at 2
print("s2", convexity_profile(S2, 5))
print("s1", convexity_profile(S1, 5))

rep = check_mac_radius(S2, 4)
print(rep.verdict, rep.stats["pairs_examined"], rep.witnesses[0]["u_word"], rep.witnesses[0]["v_word"])
print(rep.to_json()[:200])
