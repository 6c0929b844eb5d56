"""Inverse-labeled graphs: construction, folding, tracing, components, DOT export.

Two representations live here.  :class:`LabeledGraph` is the public value
type: dense integer vertices, edges stored together with their formal
inverses, possibly several edges with the same label at a vertex.
:class:`FoldingGraph` is the mutable working form used inside algorithms;
it is well-labeled at all times because adding an edge or identifying two
vertices triggers folding immediately (union-find plus a coincidence queue).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DanglingVertex, NotWellLabeled, UnknownLetter
from .words import Alphabet, Word


def label_key(x: int):
    return (abs(x), x < 0)


class LabeledGraph:
    """A finite graph labeled by a signed alphabet, closed under edge inversion."""

    def __init__(self, alphabet: Alphabet, num_vertices: int = 1, basepoint: Optional[int] = 0):
        self.alphabet = alphabet
        self.out = [dict() for _ in range(num_vertices)]
        if basepoint is not None and not 0 <= basepoint < num_vertices:
            raise DanglingVertex(f"basepoint {basepoint} is not a vertex")
        self.basepoint = basepoint

    @property
    def num_vertices(self) -> int:
        return len(self.out)

    @property
    def vertices(self) -> range:
        return range(len(self.out))

    @property
    def num_edges(self) -> int:
        """Number of inverse pairs of edges."""
        return sum(len(ts) for d in self.out for x, ts in d.items() if x > 0)

    def add_vertex(self) -> int:
        self.out.append({})
        return len(self.out) - 1

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < len(self.out)):
            raise DanglingVertex(f"vertex {v} does not exist")

    def add_edge(self, u: int, x: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if x not in self.alphabet:
            raise UnknownLetter(x, self.alphabet.letters)
        for a, lab, b in ((u, x, v), (v, -x, u)):
            ts = self.out[a].setdefault(lab, [])
            if b not in ts:
                ts.append(b)
                ts.sort()

    def has_edge(self, u: int, x: int, v: int) -> bool:
        return v in self.out[u].get(x, ())

    def targets(self, v: int, x: int) -> tuple:
        return tuple(self.out[v].get(x, ()))

    def target(self, v: int, x: int) -> Optional[int]:
        ts = self.out[v].get(x)
        if not ts:
            return None
        if len(ts) > 1:
            raise NotWellLabeled(f"vertex {v} has {len(ts)} edges labeled {self.alphabet.symbol(x)}")
        return ts[0]

    def labels_at(self, v: int) -> list:
        return sorted((x for x, ts in self.out[v].items() if ts), key=label_key)

    def edges(self):
        """All directed edges (both orientations), in deterministic order."""
        return [(u, x, v) for u in self.vertices
                for x in sorted(self.out[u], key=label_key) for v in self.out[u][x]]

    def positive_edges(self):
        return [(u, x, v) for (u, x, v) in self.edges() if x > 0]

    def copy(self) -> "LabeledGraph":
        g = LabeledGraph(self.alphabet, 0, None)
        g.out = [{x: list(ts) for x, ts in d.items()} for d in self.out]
        g.basepoint = self.basepoint
        return g

    def relabeled(self, alphabet: Alphabet, letter_map) -> "LabeledGraph":
        """Copy with every label ``x`` replaced by ``letter_map(x)`` (must commute with inversion)."""
        g = LabeledGraph(alphabet, self.num_vertices, self.basepoint)
        for u, x, v in self.positive_edges():
            g.add_edge(u, letter_map(x), v)
        return g

    def signature(self):
        return (self.alphabet.letters, self.num_vertices, self.basepoint, tuple(self.positive_edges()))

    def __eq__(self, other):
        return isinstance(other, LabeledGraph) and self.signature() == other.signature()

    def __repr__(self):
        return (f"LabeledGraph(V={self.num_vertices}, E={self.num_edges}, "
                f"basepoint={self.basepoint})")


@dataclass(frozen=True)
class TraceOutcome:
    end: int
    consumed: int
    complete: bool


def _letter(alphabet, label):
    if isinstance(label, str):
        return alphabet.letter(label)
    if label not in alphabet:
        raise UnknownLetter(label, alphabet.letters)
    return label


def _word(alphabet, w) -> Word:
    return alphabet.parse(w) if isinstance(w, str) else tuple(w)


def build(alphabet: Alphabet, edges: Iterable, basepoint: Optional[int] = 0,
          num_vertices: Optional[int] = None) -> LabeledGraph:
    """Build a graph from ``(source, label, target)`` triples; inverses are added automatically."""
    edges = [(u, _letter(alphabet, x), v) for (u, x, v) in edges]
    if num_vertices is None:
        ids = [u for u, _, v in edges] + [v for u, _, v in edges]
        num_vertices = max(ids + [basepoint or 0, 0]) + 1
    for u, _, v in edges:
        for t in (u, v):
            if not (isinstance(t, int) and 0 <= t < num_vertices):
                raise DanglingVertex(f"edge endpoint {t} is not a vertex")
    g = LabeledGraph(alphabet, num_vertices, basepoint)
    for u, x, v in edges:
        g.add_edge(u, x, v)
    return g


def is_well_labeled(g: LabeledGraph) -> bool:
    return all(len(ts) <= 1 for d in g.out for ts in d.values())


def require_well_labeled(g: LabeledGraph) -> None:
    if not is_well_labeled(g):
        raise NotWellLabeled("graph has two edges with the same label at a vertex")


class FoldingGraph:
    """Mutable graph kept well-labeled by folding on every insertion or merge.

    Vertex ids are never reused; merged vertices point at their surviving
    representative, which is always the least id of its class.
    """

    def __init__(self, alphabet: Alphabet, num_vertices: int = 1, basepoint: int = 0):
        self.alphabet = alphabet
        self.parent = list(range(num_vertices))
        self.out = [dict() for _ in range(num_vertices)]
        self.basepoint = basepoint
        self.live = num_vertices

    @classmethod
    def from_graph(cls, g: LabeledGraph) -> "FoldingGraph":
        f = cls(g.alphabet, g.num_vertices, g.basepoint if g.basepoint is not None else 0)
        for u, x, v in g.positive_edges():
            f.add_edge(u, x, v)
        return f

    def copy(self) -> "FoldingGraph":
        f = FoldingGraph.__new__(FoldingGraph)
        f.alphabet = self.alphabet
        f.parent = list(self.parent)
        f.out = [None if d is None else dict(d) for d in self.out]
        f.basepoint = self.basepoint
        f.live = self.live
        return f

    def find(self, v: int) -> int:
        root = v
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    @property
    def base(self) -> int:
        return self.find(self.basepoint)

    def vertices(self) -> list:
        return [v for v in range(len(self.parent)) if self.parent[v] == v]

    def add_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.live += 1
        return len(self.parent) - 1

    def target(self, v: int, x: int) -> Optional[int]:
        t = self.out[self.find(v)].get(x)
        return None if t is None else self.find(t)

    def has_label(self, v: int, x: int) -> bool:
        return x in self.out[self.find(v)]

    def labels_at(self, v: int):
        return self.out[self.find(v)].keys()

    def add_edge(self, u: int, x: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        s = self.out[u].get(x)
        if s is not None:
            self.merge(s, v)
            return
        r = self.out[v].get(-x)
        self.out[u][x] = v
        self.out[v][-x] = u
        if r is not None:
            self.out[v][-x] = r
            self.merge(r, u)

    def merge(self, u: int, v: int) -> None:
        queue = [(u, v)]
        find = self.find
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.live -= 1
            eb, self.out[b] = self.out[b], None
            ea = self.out[a]
            for x, t in eb.items():
                s = ea.get(x)
                if s is None:
                    ea[x] = t
                else:
                    s, t = find(s), find(t)
                    if s != t:
                        queue.append((s, t))

    def step(self, v: int, word: Sequence[int]) -> Optional[int]:
        """End of the complete trace of ``word`` from ``v``, or None."""
        out, find = self.out, self.find
        cur = find(v)
        for x in word:
            t = out[cur].get(x)
            if t is None:
                return None
            cur = find(t)
        return cur

    def trace(self, v: int, word: Sequence[int]) -> tuple:
        out, find = self.out, self.find
        cur = find(v)
        for i, x in enumerate(word):
            t = out[cur].get(x)
            if t is None:
                return cur, i
            cur = find(t)
        return cur, len(word)

    def extend(self, v: int, word: Sequence[int]) -> int:
        cur, i = self.trace(v, word)
        for x in word[i:]:
            nv = self.add_vertex()
            self.add_edge(cur, x, nv)
            cur = nv
        return cur

    def close(self, v: int, word: Sequence[int], to: int) -> None:
        """Make ``word`` read from ``v`` to ``to`` (extending, then identifying and folding)."""
        self.merge(self.extend(v, word), to)

    def canonical_order(self, roots: Sequence[int] = ()) -> list:
        """Representatives in BFS order from the basepoint (then ``roots``, then by id)."""
        order, seen = [], set()
        starts = [self.base] + [self.find(r) for r in roots] + self.vertices()
        for s in starts:
            if s in seen:
                continue
            seen.add(s)
            queue = deque([s])
            while queue:
                v = queue.popleft()
                order.append(v)
                d = self.out[v]
                for x in sorted(d, key=label_key):
                    t = self.find(d[x])
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return order

    def to_graph(self, renumber: bool = True) -> tuple:
        """Export as a :class:`LabeledGraph`; returns ``(graph, rep -> new id)``."""
        order = self.canonical_order() if renumber else self.vertices()
        index = {v: i for i, v in enumerate(order)}
        g = LabeledGraph(self.alphabet, len(order), index[self.base])
        for v in order:
            for x, t in self.out[v].items():
                if x > 0:
                    g.add_edge(index[v], x, index[self.find(t)])
        return g, index

    def mapping(self, index) -> list:
        """Old vertex id -> exported id, for every id ever allocated."""
        return [index[self.find(v)] for v in range(len(self.parent))]


def fold(g: LabeledGraph) -> LabeledGraph:
    """Stallings folding: the well-labeled quotient, renumbered canonically from the basepoint."""
    return FoldingGraph.from_graph(g).to_graph()[0]


def fold_with_map(g: LabeledGraph, identify: Iterable = ()) -> tuple:
    """Fold after identifying the given vertex pairs; returns ``(graph, old id -> new id)``."""
    f = FoldingGraph.from_graph(g)
    for u, v in identify:
        f.merge(u, v)
    h, index = f.to_graph()
    return h, [index[f.find(v)] for v in range(g.num_vertices)]


def canonical_form(g: LabeledGraph, root: Optional[int] = None):
    """Isomorphism invariant of the component of ``root`` (default: basepoint) in a well-labeled graph."""
    require_well_labeled(g)
    root = g.basepoint if root is None else root
    index = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for x in g.labels_at(v):
            t = g.out[v][x][0]
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
    edges = sorted((index[u], x, index[v]) for u in order
                   for x, ts in g.out[u].items() if x > 0 for v in ts)
    return len(order), tuple(edges)


def trace(g: LabeledGraph, start: int, w) -> TraceOutcome:
    """Follow the unique path labeled ``w`` from ``start`` as far as it exists."""
    require_well_labeled(g)
    g._check_vertex(start)
    w = _word(g.alphabet, w)
    cur = start
    for i, x in enumerate(w):
        ts = g.out[cur].get(x)
        if not ts:
            return TraceOutcome(cur, i, False)
        cur = ts[0]
    return TraceOutcome(cur, len(w), True)


def trace_extend(g: LabeledGraph, start: int, w) -> tuple:
    """Trace ``w`` and append a fresh path for whatever could not be read.

    Existing vertex ids are kept; new vertices are appended in path order.
    """
    outcome = trace(g, start, w)
    w = _word(g.alphabet, w)
    h = g.copy()
    cur = outcome.end
    for x in w[outcome.consumed:]:
        nv = h.add_vertex()
        h.add_edge(cur, x, nv)
        cur = nv
    return h, cur


def lab_contains(g: LabeledGraph, v: int, w) -> bool:
    """Whether the reduced word ``w`` labels a loop at ``v`` in the folded graph ``g``."""
    t = trace(g, v, w)
    return t.complete and t.end == v


def is_saturated_at(g: LabeledGraph, v: int, letters: Iterable[int]) -> bool:
    return all(g.out[v].get(x) for x in letters)


def _symmetric(letters) -> set:
    s = set(letters)
    return s | {-x for x in s}


def components(g: LabeledGraph, letters: Iterable[int]) -> tuple:
    """Connected components of the subgraph of edges labeled in ``letters``.

    Returns ``(components, singletons)``: each component is a sorted tuple of
    vertices and carries at least one edge; vertices meeting no such edge
    are listed separately.
    """
    letters = _symmetric(letters)
    seen = set()
    comps, singles = [], []
    for s in g.vertices:
        if s in seen:
            continue
        if not any(x in letters and ts for x, ts in g.out[s].items()):
            singles.append(s)
            seen.add(s)
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for x, ts in g.out[v].items():
                if x in letters:
                    for t in ts:
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
        comps.append(tuple(sorted(comp)))
    return comps, singles


def induced_subgraph(g: LabeledGraph, vertices: Sequence[int], letters: Optional[Iterable[int]] = None,
                     basepoint: Optional[int] = None) -> tuple:
    """Subgraph on ``vertices`` with edges labeled in ``letters``; returns ``(graph, old -> new)``."""
    letters = None if letters is None else _symmetric(letters)
    index = {v: i for i, v in enumerate(sorted(vertices))}
    h = LabeledGraph(g.alphabet, len(index), index[basepoint] if basepoint is not None else None)
    for u, x, v in g.positive_edges():
        if u in index and v in index and (letters is None or x in letters):
            h.add_edge(index[u], x, index[v])
    return h, index


def to_dot(g: LabeledGraph, name: str = "G", colors: Optional[dict] = None) -> str:
    """Graphviz text: basepoint drawn as a double circle, one arrow per inverse pair."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for v in g.vertices:
        shape = " [shape=doublecircle]" if v == g.basepoint else ""
        lines.append(f"  {v}{shape};")
    for u, x, v in g.positive_edges():
        attrs = f'label="{g.alphabet.symbol(x)}"'
        if colors and x in colors:
            attrs += f', color="{colors[x]}", fontcolor="{colors[x]}"'
        lines.append(f"  {u} -> {v} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
