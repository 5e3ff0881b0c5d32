# coding: utf-8

# # Medians and walls in a right-angled Artin group

# The Cayley graph of a right-angled Artin group is the 1-skeleton of a CAT(0) cube complex, so every
# three elements have a unique median. Here we compute medians, intervals and hulls on the path P4.

# In[1]:

from medcube.acceptance import Corpus
from medcube.medgeom import dilworth_chains, hull_by_walls, interval, median

p = Corpus().group("p4", "artin")
p.graph


# The median of three elements lies on a geodesic between each pair.

# In[2]:

x, y, z = p("a b"), p("c d"), p("b c")
m = median(x, y, z)
print(m, [len(u.inverse() * m) + len(m.inverse() * v) == len(u.inverse() * v)
          for u, v in ((x, y), (x, z), (y, z))])


# An interval collects every element on some geodesic. Commuting letters give squares, so the
# interval from 1 to "a c d" holds more than one path.

# In[3]:

I = sorted(interval(p("1"), p("a c d")))
print(len(I), [str(g) for g in I])


# The hyperplanes separating 1 from g form a poset. Its minimal chain cover, found by bipartite
# matching, has one chain per letter of the widest antichain.

# In[4]:

for chain in dilworth_chains(p("1"), p("a c b d")):
    print(" < ".join(w.label for w, _ in chain))


# Hulls are cut out by walls: the hull of two elements is their interval.

# In[5]:

print(len(hull_by_walls([p("1"), p("a c d")])) == len(I))
