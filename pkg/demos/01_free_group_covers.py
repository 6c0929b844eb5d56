"""
Covers of a free group
======================

Fold a subgroup of F(a, b) into its graph, read membership off it, and
complete the graph to a finite cover in which a chosen element escapes.

Run with ``python demos/01_free_group_covers.py``.
"""

from lerfkit import (Alphabet, cyclic_intersection, fold, hall_complete, is_cover_free, lab_contains,
                     separate_free, subgroup_graph, to_dot, trace, verify_free_certificate)
from lerfkit.graphs import build

ab = Alphabet.of("a b")

# %% Folding
# Two a-edges leaving vertex 0 get identified, and so do their ends.
raw = build(ab, [(0, "a", 1), (0, "a", 2), (2, "b", 1)])
print("before folding:", raw)
print("after folding: ", fold(raw), fold(raw).positive_edges())

# %% The subgroup <aa, b>
# The folded graph has two vertices.  A word is in the subgroup exactly
# when it reads a loop at the basepoint.
H = subgroup_graph(ab, ["aa", "b"])
print(H, H.positive_edges())
for word in ["aa", "b", "abA", "aabAA", "ab"]:
    print(f"  {word:6s} in <aa, b>: {lab_contains(H, 0, word)}")

# the least power of w that lies in the subgroup; 0 means none does
for w in ["a", "b", "ab"]:
    print(f"  <aa, b> meets <{w}> in <{w}^{cyclic_intersection(H, 0, w)}>")

# %% Hall completion
# Vertex 1 has no b-edge yet.  Completing each letter to a permutation
# gives an index-2 cover without adding vertices.
C = hall_complete(H)
print("cover:", is_cover_free(C), C.positive_edges())

# %% A separating cover
# abA is not in <aa, b>.  Extending the graph along abA and completing it
# gives a 4-sheeted cover where the subgroup loops and abA does not.
cert = separate_free(ab, ["aa", "b"], "abA")
print("vertices:", cert.cover.num_vertices, "witness ends at", cert.witness_end)
print("abA from the basepoint:", trace(cert.cover, cert.basepoint, "abA"))
print("verified:", bool(verify_free_certificate(cert)))

print(to_dot(cert.cover))
