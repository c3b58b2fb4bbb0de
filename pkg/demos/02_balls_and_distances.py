"""Balls, spheres and distances by breadth first search."""
import numpy as np

from f2xf2 import S1, S2, build_ball, distance, eval_word, inside_distance

for gs in (S1, S2):
    ball = build_ball(gs, 5)
    print(gs.name, ball.sphere_sizes())

# s1 is a product of free groups, so spheres are a convolution of free spheres
free = np.array([1] + [4 * 3 ** (i - 1) for i in range(1, 6)])
print(np.convolve(free, free)[:6])

# growth rate estimate from consecutive sphere ratios
sizes = np.array(build_ball(S2, 6).sphere_sizes(), dtype=float)
print(np.round(sizes[1:] / sizes[:-1], 3))

# distances in the whole graph versus inside a ball
u, v = eval_word(S2, "aB"), eval_word(S2, "ta")
b2 = build_ball(S2, 2)
print(distance(S2, u, v, 8), inside_distance(b2, u, v))

# the sub-ball of radius r is a prefix of the index, neighbours come from a table
ball = build_ball(S2, 4)
print(ball.count(2), ball.neighbors.shape, ball.adjacency(3).nnz)
