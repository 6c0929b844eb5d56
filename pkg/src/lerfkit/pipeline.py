"""Generate-and-verify separation of a subgroup from an element in a double.

Given the double ``D = F(X) *_{w = w'} F(X')``, a finite set ``S`` and an
element ``d``, the pipeline grows a finite bicolored graph in which ``S``
loops at the basepoint and ``d`` does not, completes it to a precover and
then to a finite cover of ``D``.  The stages are heuristic; the certificate
is accepted only after :func:`verify_certificate` re-checks it from scratch,
and a failed round is retried with a larger cyclic degree.

Stages, in order:

* ``seed``: wedge of ``S`` plus the ``d``-path, with a ``w``/``w'`` pair hung
  at every vertex, then identified along equal ``w``/``w'`` powers.
* ``pair``: at each bichromatic vertex the ``w``-powers and ``w'``-powers
  that close up are made to agree, and orbit neighbours that are
  bichromatic get matching paths of the other colour.
* ``saturate``: closed ``w``-orbits at bichromatic vertices are mirrored by
  ``w'``-orbits through the same vertices.
* ``graft``: a bichromatic vertex with open orbits on both sides gets a
  degree-M cyclic cover of ``<w>`` on each side.
* ``sigma``: every monochromatic component is completed to a cover.
* ``complete`` and ``double``: precover completion, then doubling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional

from .doubles import (DoubleSpec, bichromatic_vertices, compatibility_violation, complete_precover,
                      complete_precover_inplace, double_up, graft, is_bichromatic, matched_cycle,
                      normal_form, orbit,
                      orbit_at as _at)
from .errors import (ConfigurationError, ElementInSubgroup, EmptyWitness, Exhausted, LerfError,
                     NoDeficientVertex, NoEmbedding, NotPrecover, Property1Violated)
from .free_cover import Verdict, hall_complete
from .graphs import (FoldingGraph, LabeledGraph, canonical_form, components, induced_subgraph,
                     is_well_labeled, trace)
from .words import Alphabet, inverse, power, reduce

_W = Alphabet(("w",))
_MAX_PASSES = 1000


class _RoundFailed(LerfError):
    pass


@dataclass(frozen=True)
class PipelineParams:
    """``cyclic_degree`` None means ``2 * |V(seed)| + 1``."""

    cyclic_degree: Optional[int] = None
    max_rounds: int = 4
    escalation_factor: int = 2

    def __post_init__(self):
        if self.cyclic_degree is not None and self.cyclic_degree < 1:
            raise ConfigurationError("cyclic degree must be at least 1")
        if self.max_rounds < 0:
            raise ConfigurationError("max_rounds must be non-negative")
        if self.escalation_factor < 2:
            raise ConfigurationError("escalation factor must be at least 2")


@dataclass(frozen=True)
class StageRecord:
    stage: str
    vertices: int
    edges: int
    params: tuple = ()

    def format(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.params)
        return f"{self.stage} V={self.vertices} E={self.edges}{extra}"


@dataclass
class DoubleCertificate:
    spec: DoubleSpec
    cover: LabeledGraph
    basepoint: int
    subgroup_generators: list
    witness: tuple
    witness_end: int
    trail: list = field(default_factory=list)


def _size(g) -> tuple:
    if isinstance(g, FoldingGraph):
        vs = g.vertices()
        return len(vs), sum(1 for v in vs for x in g.out[v] if x > 0)
    return g.num_vertices, g.num_edges


def _record(trail, stage, g, **params):
    v, e = _size(g)
    trail.append(StageRecord(stage, v, e, tuple(params.items())))


def _closed_length(f: FoldingGraph, v: int, word) -> int:
    seq, closed = orbit(f.step, v, word, f.live)
    return len(seq) if closed else 0


def _seed(spec: DoubleSpec, S, d) -> tuple:
    gens = [reduce(s, spec.alphabet) for s in S]
    d = reduce(d, spec.alphabet)
    if not normal_form(spec, d):
        raise EmptyWitness("the element to separate is trivial in the double")
    f = FoldingGraph(spec.alphabet)
    for s in gens:
        if s:
            f.close(f.base, s, f.base)
    end = f.extend(f.base, d)
    for v in f.vertices():
        if f.find(v) == v:
            f.close(v, spec.w_mirror, f.extend(v, spec.w))
    complete_precover_inplace(spec, f)
    if f.find(end) == f.base:
        raise ElementInSubgroup()
    return f, end, gens, d


def _pair(spec: DoubleSpec, f: FoldingGraph) -> bool:
    w, wm = spec.w, spec.w_mirror
    changed = False
    done = set()
    for v in bichromatic_vertices(spec, f):
        v = f.find(v)
        if v in done or not is_bichromatic(spec, f.out[v]):
            continue
        cycle = matched_cycle(f.step, spec, v, f.live)
        if cycle:
            done.update(cycle)
            continue
        kx, ky = _closed_length(f, v, w), _closed_length(f, v, wm)
        if kx != ky:
            if kx and ky:
                g = gcd(kx, ky)
                f.close(v, power(w, g), v)
                f.close(v, power(wm, g), v)
            elif kx:
                f.close(v, power(wm, kx), v)
            else:
                f.close(v, power(w, ky), v)
            changed = True
        for word, other in ((w, wm), (wm, w), (inverse(w), inverse(wm)), (inverse(wm), inverse(w))):
            v = f.find(v)
            seq, _ = orbit(f.step, v, word, f.live)
            mirror = orbit(f.step, v, other, f.live)
            for j, u in enumerate(seq[1:], 1):
                u = f.find(u)
                if not is_bichromatic(spec, f.out[u]):
                    continue
                end = _at(*mirror, j)
                if end is None or f.find(end) != u:
                    f.close(v, power(other, j), u)
                    changed = True
                    break
    return changed


def _saturate(spec: DoubleSpec, f: FoldingGraph) -> bool:
    changed = False
    done = set()
    for v in bichromatic_vertices(spec, f):
        v = f.find(v)
        if v in done:
            continue
        cycle = matched_cycle(f.step, spec, v, f.live)
        if cycle:
            done.update(cycle)
            continue
        for word, other in ((spec.w, spec.w_mirror), (spec.w_mirror, spec.w)):
            seq, closed = orbit(f.step, f.find(v), word, f.live)
            if not closed:
                continue
            for j in range(len(seq)):
                a, b = f.find(seq[j]), f.find(seq[(j + 1) % len(seq)])
                if f.step(a, other) != b:
                    f.close(a, other, b)
                    changed = True
    return changed


def _settle(spec: DoubleSpec, f: FoldingGraph) -> None:
    for _ in range(_MAX_PASSES):
        merged = complete_precover_inplace(spec, f)
        paired = _pair(spec, f)
        saturated = _saturate(spec, f)
        if not (merged or paired or saturated):
            return
    raise _RoundFailed("cyclic structure did not stabilise")


def _deficient(spec: DoubleSpec, f: FoldingGraph) -> list:
    out, done = [], set()
    for v in bichromatic_vertices(spec, f):
        if v in done:
            continue
        cycle = matched_cycle(f.step, spec, v, f.live)
        if cycle:
            done.update(cycle)
        elif not _closed_length(f, v, spec.w) and not _closed_length(f, v, spec.w_mirror):
            out.append(v)
    return out


def _cycle(m: int) -> LabeledGraph:
    c = LabeledGraph(_W, m, 0)
    for i in range(m):
        c.add_edge(i, 1, (i + 1) % m)
    return c


def _graft_cycle(f: FoldingGraph, u: int, word, m: int) -> None:
    """Close the ``word``-line through ``u`` into an m-cycle, keeping existing vertices apart."""
    fwd, closed = orbit(f.step, u, word, f.live)
    if closed:
        return
    back, _ = orbit(f.step, u, inverse(word), f.live)
    line = back[:0:-1] + fwd
    overlay = LabeledGraph(_W, len(line), None)
    for i in range(len(line) - 1):
        overlay.add_edge(i, 1, i + 1)
    graft(overlay, len(back) - 1, _cycle(m), 0, [1])
    old = f.vertices()
    f.close(u, power(word, m), u)
    if len({f.find(v) for v in old}) != len(old):
        raise NoEmbedding("cyclic cover identified existing vertices")
    if _closed_length(f, u, word) != m:
        raise NoEmbedding(f"orbit did not close at degree {m}")


def _graft_step(spec: DoubleSpec, f: FoldingGraph, m: int) -> int:
    deficient = _deficient(spec, f)
    if not deficient:
        raise NoDeficientVertex("every bichromatic vertex has a nontrivial cyclic intersection")
    u = deficient[0]
    _graft_cycle(f, u, spec.w, m)
    _graft_cycle(f, f.find(u), spec.w_mirror, m)
    return u


def _grow(spec: DoubleSpec, f: FoldingGraph, m: int, trail) -> None:
    _settle(spec, f)
    _record(trail, "pair", f)
    count = len(_deficient(spec, f))
    while count:
        u = _graft_step(spec, f, m)
        _settle(spec, f)
        _record(trail, "graft", f, vertex=u, M=m)
        now = len(_deficient(spec, f))
        if now >= count:
            raise _RoundFailed("grafting did not reduce the deficient vertices")
        count = now


def _sigma(spec: DoubleSpec, g: LabeledGraph) -> LabeledGraph:
    for letters in (spec.x_alphabet.positive(), [x + spec.n for x in spec.x_alphabet.positive()]):
        for comp in components(g, letters)[0]:
            g = hall_complete(g, letters, comp)
    return g


def _mono_forms(spec: DoubleSpec, g: LabeledGraph) -> list:
    out = []
    for letters in (spec.x_alphabet.positive(), [x + spec.n for x in spec.x_alphabet.positive()]):
        for comp in components(g, letters)[0]:
            sub, index = induced_subgraph(g, comp, letters)
            out.append((comp, letters, canonical_form(sub, index[comp[0]])))
    return out


def _complete_preserving(spec: DoubleSpec, g: LabeledGraph) -> tuple:
    before = _mono_forms(spec, g)
    h, m = complete_precover(spec, g, return_map=True)
    for comp, letters, form in before:
        image = {m[v] for v in comp}
        if len(image) != len(comp):
            raise _RoundFailed("precover completion collapsed a monochromatic component")
        sub, index = induced_subgraph(h, sorted(image), letters)
        if canonical_form(sub, index[m[comp[0]]]) != form:
            raise _RoundFailed("precover completion altered a monochromatic component")
    return h, m


def _attempt(spec, seed: FoldingGraph, end: int, gens, d, m: int, trail) -> DoubleCertificate:
    f = seed.copy()
    _grow(spec, f, m, trail)
    g, index = f.to_graph(renumber=False)
    end = index[f.find(end)]
    g = _sigma(spec, g)
    _record(trail, "sigma", g)
    g, vmap = _complete_preserving(spec, g)
    end = vmap[end]
    _record(trail, "complete", g)
    cover = double_up(spec, g)
    _record(trail, "double", cover)
    return DoubleCertificate(spec, cover, cover.basepoint, gens, d, end, trail)


def run_pipeline(spec: DoubleSpec, S: Iterable, d, params: Optional[PipelineParams] = None) -> DoubleCertificate:
    """Separate ``d`` from ``<S>`` by a verified finite cover of the double.

    Raises :class:`ElementInSubgroup` when the seed graph already shows
    ``d`` in ``<S>``, and :class:`Exhausted` (carrying the trail) when no
    round produced a certificate that verifies.
    """
    params = params or PipelineParams()
    seed, end, gens, d = _seed(spec, S, d)
    trail = []
    _record(trail, "seed", seed)
    m = params.cyclic_degree or 2 * seed.live + 1
    for rnd in range(params.max_rounds):
        try:
            cert = _attempt(spec, seed, end, gens, d, m, trail)
        except (NoEmbedding, NotPrecover, Property1Violated, _RoundFailed) as exc:
            _record(trail, "failed", seed, round=rnd + 1, M=m, reason=type(exc).__name__)
        else:
            verdict = verify_certificate(cert)
            if verdict:
                _record(trail, "verified", cert.cover, round=rnd + 1, M=m)
                cert.trail = list(trail)
                return cert
            _record(trail, "rejected", cert.cover, round=rnd + 1, M=m,
                    reason=verdict.first.replace(" ", "_"))
        m *= params.escalation_factor
    raise Exhausted(params.max_rounds, trail)


def verify_certificate(cert: DoubleCertificate) -> Verdict:
    """Check the certificate from scratch: cover of the double, generators loop, witness escapes."""
    spec, g = cert.spec, cert.cover
    failures = []
    full = spec.alphabet.signed()
    if g.alphabet != spec.alphabet:
        failures.append("alphabet mismatch")
    elif not is_well_labeled(g):
        failures.append("not well-labeled")
    elif not all(d.get(x) for d in g.out for x in full):
        failures.append("not saturated")
    else:
        if compatibility_violation(spec, g) is not None:
            failures.append("not compatible")
    if not 0 <= cert.basepoint < g.num_vertices:
        failures.append("basepoint is not a vertex")
    if failures:
        return Verdict(False, failures)
    for s in cert.subgroup_generators:
        t = trace(g, cert.basepoint, s)
        if not (t.complete and t.end == cert.basepoint):
            failures.append(f"generator {spec.alphabet.token(s)} does not loop")
    t = trace(g, cert.basepoint, cert.witness)
    if not t.complete:
        failures.append("witness incomplete")
    elif t.end == cert.basepoint or cert.witness_end == cert.basepoint:
        failures.append("witness returns")
    elif t.end != cert.witness_end:
        failures.append("witness end mismatch")
    return Verdict(not failures, failures)


# Stage-by-stage entry points on plain graphs.  Vertex order is kept (no
# BFS renumbering) so results can be compared with their inputs.

def _export(f: FoldingGraph) -> LabeledGraph:
    return f.to_graph(renumber=False)[0]


def build_seed_graph(spec: DoubleSpec, S: Iterable, d) -> tuple:
    """Seed graph for ``(S, d)``; returns ``(graph, end of the d-path)``."""
    f, end, _, _ = _seed(spec, S, d)
    g, index = f.to_graph(renumber=False)
    return g, index[f.find(end)]


def pair_cyclic_structure(spec: DoubleSpec, g: LabeledGraph) -> LabeledGraph:
    """Make the closing powers of ``w`` and ``w'`` agree at every bichromatic vertex, to fixpoint."""
    f = FoldingGraph.from_graph(g)
    for _ in range(_MAX_PASSES):
        if not (complete_precover_inplace(spec, f) or _pair(spec, f)):
            break
    return _export(f)


def saturate_finite_index(spec: DoubleSpec, g: LabeledGraph) -> LabeledGraph:
    """Run each closed ``w``-orbit at a bichromatic vertex alongside a ``w'``-orbit (and vice versa)."""
    f = FoldingGraph.from_graph(g)
    for _ in range(_MAX_PASSES):
        if not (_saturate(spec, f) or complete_precover_inplace(spec, f)):
            break
    return _export(f)


def deficient_vertices(spec: DoubleSpec, g: LabeledGraph) -> list:
    """Bichromatic vertices where no nonzero power of ``w`` or ``w'`` closes up."""
    return _deficient(spec, FoldingGraph.from_graph(g))


def graft_cyclic_covers(spec: DoubleSpec, g: LabeledGraph, params: Optional[PipelineParams] = None) -> LabeledGraph:
    """Attach degree-M cyclic covers of ``<w>`` and ``<w'>`` at the lowest deficient vertex."""
    params = params or PipelineParams()
    m = params.cyclic_degree or 2 * g.num_vertices + 1
    f = FoldingGraph.from_graph(g)
    _graft_step(spec, f, m)
    return _export(f)
