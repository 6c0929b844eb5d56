"""
Graphs over a double
====================

The double of F(a, b) along <ab> glues F(a, b) to a mirror copy F(a', b')
by identifying ab with a'b'.  Graphs over it use both alphabets; X-edges
and Y-edges are two colours.

Run with ``python demos/02_double_graphs.py``.
"""

from lerfkit import (DoubleSpec, compatibility_violation, complete_precover, double_up, is_cover_double,
                     is_precover, normal_form)
from lerfkit.errors import SpecInvariantError
from lerfkit.graphs import build

spec = DoubleSpec.of("a b", "ab")
print("w =", spec.format(spec.w), " w' =", spec.format(spec.w_mirror))

# the amalgamating word must not be a proper power
try:
    DoubleSpec.of("a b", "abab")
except SpecInvariantError as exc:
    print("rejected abab:", exc)

# %% Normal forms
# Syllables alternate colours.  An amalgamated syllable between two others
# is moved across and merged, so a'b' disappears into its neighbours.
for raw in ["a'b'", "aa'", "aba'b'", "aa'b'A", "abB'A'"]:
    syls = normal_form(spec, raw)
    print(f"  {raw:8s} -> {[spec.format(s) for s in syls]}")

# %% A graph that is not yet compatible
# The index-2 cover of F(a, b) and its mirror glued at one vertex.  From
# vertex 0, ab and a'b' lead to different places although they are the
# same element of the double.
g = build(spec.alphabet, [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1),
                          (0, "a'", 2), (2, "a'", 0), (0, "b'", 0), (2, "b'", 2)])
print("violation (vertex, power):", compatibility_violation(spec, g))
print("precover:", is_precover(spec, g))

# identifying the two ends repairs it; the monochromatic parts are untouched
h, vmap = complete_precover(spec, g, return_map=True)
print("after completion:", h, "vertex map", vmap, "cover of the double:", is_cover_double(spec, h))

# %% Doubling
# A precover embeds in a cover: glue the mirror image on at every
# monochromatic vertex.  Here every vertex is monochromatic.
factor = build(spec.alphabet, [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)])
cover = double_up(spec, factor)
print("doubled:", cover, is_cover_double(spec, cover))
