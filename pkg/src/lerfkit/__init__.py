"""Finite covers that separate subgroups of free groups and of doubles of free groups.

Words are tuples of signed ints; graphs are :class:`LabeledGraph` values.
The pieces compose bottom-up: words, folding, covers of free groups,
bicolored graphs over a double, the separation pipeline, and a brute-force
finite-quotient oracle used to cross-check certificates.
"""

from .doubles import (DoubleSpec, bichromatic_vertices, color_swap, compatibility_violation,
                      complete_precover, double_dot, double_up, graft, is_compatible, is_cover_double,
                      is_precover, normal_form)
from .errors import (ConfigurationError, DanglingVertex, ElementInSubgroup, EmptyWitness, EmptyWord,
                     Exhausted, LerfError, NoDeficientVertex, NoEmbedding, NotPrecover, NotWellLabeled,
                     ParseError, Property1Violated, SpecInvariantError, UnknownLetter)
from .free_cover import (FreeCertificate, Verdict, cyclic_intersection, hall_complete, is_cover_free,
                         separate_free, subgroup_graph, verify_free_certificate)
from .graphs import (FoldingGraph, LabeledGraph, TraceOutcome, build, canonical_form, components, fold,
                     induced_subgraph, is_saturated_at, is_well_labeled, lab_contains, to_dot, trace,
                     trace_extend)
from .oracle import (HomImage, Presentation, closure_member, cross_check, cycle_notation,
                     double_presentation, enumerate_homs, separating_hom)
from .pipeline import (DoubleCertificate, PipelineParams, StageRecord, build_seed_graph,
                       deficient_vertices, graft_cyclic_covers, pair_cyclic_structure, run_pipeline,
                       saturate_finite_index, verify_certificate)
from .textio import format_certificate, format_graph, parse_certificate, parse_input
from .words import (Alphabet, conjugate, cyclic_reduce, inverse, is_malnormal_cyclic, multiply, power,
                    primitive_root, reduce)

__version__ = "0.1.0"
