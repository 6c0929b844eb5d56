"""
Finite quotients by brute force
===============================

Enumerate homomorphisms into small symmetric groups and ask whether any
of them separates an element from a subgroup.

Run with ``python demos/04_finite_quotients.py``.
"""

from lerfkit import DoubleSpec, Presentation, closure_member, double_presentation, enumerate_homs, separating_hom

# %% A free group
F = Presentation.of("a b")
print("homs F(a, b) -> S3:", sum(1 for _ in enumerate_homs(F, 3)))
hom = separating_hom(F, ["aa", "b"], "abA", 4)
print("abA separated from <aa, b> by", hom.format(F.generators), "in degree", hom.degree)

# %% The group <a, c | a^-1 c a = c^2>
# In any finite quotient c has odd order, since conjugating by a squares
# it.  So a c a^-1 lands in the image of <c> every time, up to degree 5.
G = Presentation.of("a c", ["AcaCC"])
for h in enumerate_homs(G, 2):
    print("  ", h.format(G.generators))
print("acA in the closure of <c> up to degree 5:", closure_member(G, ["c"], "acA", 5))

# %% The double along ab
D = double_presentation(DoubleSpec.of("a b", "ab"))
print("relator:", D.generators.format(D.relators[0]))
print("homs D -> S3:", sum(1 for _ in enumerate_homs(D, 3)))
