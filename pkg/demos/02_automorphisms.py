# coding: utf-8

# # Untwisted automorphisms and their fixed points

# Untwisted elementary automorphisms are inversions, graph symmetries, joins (transvections a -> ab
# with lk(a) inside st(b)) and partial conjugations. We parse them, compose them and look at the
# set of elements whose image is far from where the median structure predicts.

# In[1]:

from medcube.acceptance import Corpus
from medcube.autom import cmp_report, parse_automorphism, untwisted_generators
from medcube.fixsub import displacement_bound_check, fix_ball

p = Corpus().group("p4", "artin")
print([str(f) for f in untwisted_generators(p)])


# Composition reads right to left, like functions.

# In[2]:

phi = parse_automorphism(p, "pc(a,{c,d}); join(d,b)")
print(phi, phi(p("d c")))


# The μ-set of a single partial conjugation stays bounded as the radius grows.

# In[3]:

r = cmp_report(parse_automorphism(p, "pc(a,{c,d})"), [1, 2, 3])
print(r["sizes"], r["verdict"])


# Fixed elements in a ball, with candidate generators for the fixed subgroup.

# In[4]:

fx = fix_ball(parse_automorphism(p, "inv(a)"), 2).to_json()
print(fx["size"], fx["generator_candidates"])


# The displacement bound, half of d(g, φg) at most d(g, Fix), holds for isometries but not for a
# join on the free group: a^-1 moves by 3 yet sits next to a fixed point.

# In[5]:

f2 = Corpus().group("f2", "artin")
for s in ("inv(a)", "join(a,b)"):
    ok, info = displacement_bound_check(parse_automorphism(f2, s), 4)
    print(s, ok, info["violations"], info["first_violation"])
