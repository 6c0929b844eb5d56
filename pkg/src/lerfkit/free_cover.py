"""Subgroup graphs and finite covers of free groups.

A finite cover of a free group is a well-labeled graph in which every letter
acts as a permutation of the vertices.  M. Hall's completion turns any
folded graph into one on the same vertex set, which is what makes finitely
generated subgroups of free groups separable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ElementInSubgroup, EmptyWord
from .graphs import (FoldingGraph, LabeledGraph, is_well_labeled, require_well_labeled, trace)
from .words import Alphabet, Word, reduce


def _words(alphabet, words) -> list:
    return [reduce(w, alphabet) for w in words]


def subgroup_graph(alphabet: Alphabet, generators: Iterable) -> LabeledGraph:
    """Folded based graph whose loops at the basepoint read exactly the subgroup."""
    f = FoldingGraph(alphabet)
    for w in _words(alphabet, generators):
        if w:
            f.close(f.base, w, f.base)
    return f.to_graph()[0]


def is_cover_free(g: LabeledGraph, letters: Optional[Sequence[int]] = None) -> bool:
    """Well-labeled, and every letter of the alphabet (or of ``letters``) leaves every vertex."""
    if not is_well_labeled(g):
        return False
    letters = g.alphabet.signed() if letters is None else letters
    return all(d.get(x) for d in g.out for x in letters)


def hall_complete(g: LabeledGraph, letters: Optional[Sequence[int]] = None,
                  vertices: Optional[Sequence[int]] = None) -> LabeledGraph:
    """Complete each letter's partial injection to a permutation, on the same vertex set.

    Deficient sources and missing targets are matched in ascending order.
    ``letters`` (positive) and ``vertices`` restrict the completion, which is
    how single monochromatic components get completed in place.
    """
    require_well_labeled(g)
    h = g.copy()
    letters = g.alphabet.positive() if letters is None else sorted({abs(x) for x in letters})
    vs = sorted(g.vertices if vertices is None else vertices)
    for x in letters:
        sources = [v for v in vs if not h.out[v].get(x)]
        targets = [v for v in vs if not h.out[v].get(-x)]
        for u, v in zip(sources, targets):
            h.add_edge(u, x, v)
    return h


def cyclic_intersection(g: LabeledGraph, v: int, w) -> int:
    """Least ``k > 0`` with ``w^k`` a loop at ``v`` in the folded graph, or 0 if none.

    The powers of ``w`` read from ``v`` visit distinct vertices until they
    either return to ``v`` or fall off the graph, so at most ``|V|`` steps
    are needed.
    """
    require_well_labeled(g)
    w = reduce(w, g.alphabet)
    if not w:
        raise EmptyWord("cyclic intersection with the trivial subgroup")
    cur = v
    for k in range(1, g.num_vertices + 1):
        t = trace(g, cur, w)
        if not t.complete:
            return 0
        cur = t.end
        if cur == v:
            return k
    return 0


@dataclass
class FreeCertificate:
    """A finite cover of a free group separating ``witness`` from a subgroup."""

    alphabet: Alphabet
    cover: LabeledGraph
    basepoint: int
    subgroup_generators: list
    witness: Word
    witness_end: int
    notes: dict = field(default_factory=dict)


@dataclass
class Verdict:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    @property
    def first(self) -> Optional[str]:
        return self.failures[0] if self.failures else None


def verify_free_certificate(cert: FreeCertificate) -> Verdict:
    failures = []
    g = cert.cover
    if not is_well_labeled(g):
        failures.append("not well-labeled")
    elif not is_cover_free(g):
        failures.append("not saturated")
    if not 0 <= cert.basepoint < g.num_vertices:
        failures.append("basepoint is not a vertex")
    if failures:
        return Verdict(False, failures)
    for s in cert.subgroup_generators:
        t = trace(g, cert.basepoint, s)
        if not (t.complete and t.end == cert.basepoint):
            failures.append(f"generator {cert.alphabet.token(s)} does not loop")
    t = trace(g, cert.basepoint, cert.witness)
    if not t.complete:
        failures.append("witness incomplete")
    elif t.end == cert.basepoint or cert.witness_end == cert.basepoint:
        failures.append("witness returns")
    elif t.end != cert.witness_end:
        failures.append("witness end mismatch")
    return Verdict(not failures, failures)


def separate_free(alphabet: Alphabet, S: Iterable, g) -> FreeCertificate:
    """Finite cover in which every element of ``S`` loops at the basepoint and ``g`` does not."""
    gens = _words(alphabet, S)
    g = reduce(g, alphabet)
    f = FoldingGraph(alphabet)
    for s in gens:
        if s:
            f.close(f.base, s, f.base)
    end = f.extend(f.base, g)
    if f.find(end) == f.base:
        raise ElementInSubgroup()
    h, index = f.to_graph()
    cover = hall_complete(h)
    return FreeCertificate(alphabet, cover, cover.basepoint, gens, g, index[f.find(end)])
