"""Loops that no shorter fellow traveller can replace."""
from f2xf2 import IDENTITY, S1, S2, Loop, lsp_scan, loop_shorten_search, path_sheet_crossings, thm3_loop

# a doubled commutator in s1 shrinks once the corridor is wide enough
loop = Loop(S1, IDENTITY, "acAC" * 2)
for k in (1, 2):
    print(k, loop_shorten_search(S1, loop, k, strict=False))

# the family below crosses two sheets; nothing shorter stays within k of it
for k in (1, 2, 3):
    loop = thm3_loop(k)
    crossings = path_sheet_crossings(S2, IDENTITY, loop.word)
    found = loop_shorten_search(S2, loop, k, strict=True)
    pinned = loop_shorten_search(S2, loop, k, strict=True, basepoint_fixed=True)
    print(k, len(loop), crossings, found, pinned)

# short loops: every one in s1 shrinks, a doubled relator in s2 does not
for gs in (S1, S2):
    rep = lsp_scan(gs, None, 2)
    print(gs.name, rep.verdict, rep.stats["loops_examined"], [w["word"] for w in rep.witnesses])
