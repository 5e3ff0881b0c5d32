# coding: utf-8

# # Finite median algebras

# A finite median algebra is stored as a set of bit vectors closed under the majority vote. We take
# the hull of a ball in P4, then look at subalgebras, bridges and staircases.

# In[1]:

from medcube.acceptance import Corpus
from medcube.cubealg import from_group_points, grid_staircase, staircase_length, subalgebra_closure
from medcube.medgeom import hull_by_walls

p = Corpus().group("p4", "artin")
m, points, walls = from_group_points(hull_by_walls(p.ball(2)))
print(len(m), "points,", m.width, "walls, rank", m.rank())


# Median closure of a few points. In rank 2 it settles after at most two rounds.

# In[2]:

A = m.ordered[::23]
S, steps = subalgebra_closure(A, m.width)
print(len(S), steps)


# The bridge between two convex sets joins every pair of gates.

# In[3]:

C1, C2 = m.hull(m.ordered[:3]), m.hull(m.ordered[-3:])
B, par, perp = m.multi_bridge([C1, C2])
print(len(B), len(par), len(perp))


# Staircases: the grid example has one step per level, and the ball hull has length 2.

# In[4]:

print(staircase_length(grid_staircase(4)).length)
print(staircase_length(m).to_json())
