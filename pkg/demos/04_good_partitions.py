# coding: utf-8

# # Good partitions and amalgam splittings

# A connected graph that is not a join has a partition into three parts that splits the group as an
# amalgam over a parabolic subgroup. We construct one and factor elements along the splitting.

# In[1]:

from medcube.acceptance import Corpus, all_connected_irreducible
from medcube.autom import Automorphism, partial_conj
from medcube.splittings import (amalgam_factorize, bass_serre_ball, construct_good_partition, is_good,
                                preservative_representative)

c = Corpus()
p = c.group("p4", "artin")
P = construct_good_partition(p.graph)
print(P.to_json(), is_good(p.graph, P))


# Every connected irreducible graph on at most five vertices gets a certified partition.

# In[2]:

print(all(is_good(g, construct_good_partition(g))[0] for g in all_connected_irreducible(5)))


# Alternating factorisation over the two vertex groups.

# In[3]:

for s, f in [(side, str(h)) for h, side in amalgam_factorize(P, p("a d b a c"))]:
    print(s, f)


# A partial conjugation that moves A+ is replaced by an inner-equivalent one that preserves the
# splitting, so it acts on the Bass-Serre tree.

# In[4]:

kd = partial_conj(p, "d", {"a", "b"})
rep = preservative_representative(kd, P, p)
print(rep, bass_serre_ball(P, p, 2, rep)["equivariance"])
print(bass_serre_ball(P, p, 2, Automorphism(p, [kd]))["equivariance"])
