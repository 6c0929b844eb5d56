"""Bicolored graphs over a double of a free group along a cyclic subgroup.

The double of ``F(X)`` along ``<w>`` is ``F(X) *_{w = w'} F(X')`` where
``X'`` is a primed copy of ``X`` and ``w'`` the primed copy of ``w``.  Graphs
over it are ordinary :class:`~lerfkit.graphs.LabeledGraph` objects on the
combined alphabet; letters ``1..n`` are unprimed (the X colour) and
``n+1..2n`` are primed (the Y colour).

The amalgamated subgroup is never given a letter of its own.  Its structure
is read off the graph by tracing powers of ``w`` and ``w'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (EmptyWord, NoEmbedding, NotPrecover, NotWellLabeled, Property1Violated,
                     SpecInvariantError, UnknownLetter)
from .graphs import (FoldingGraph, LabeledGraph, components, is_well_labeled, require_well_labeled,
                     to_dot)
from .words import Alphabet, Word, cyclic_reduce, inverse, power_exponent, primitive_root, reduce

X_COLOR = "blue"
Y_COLOR = "red"


@dataclass(frozen=True)
class DoubleSpec:
    x_alphabet: Alphabet
    w: Word

    def __post_init__(self):
        if any("'" in s for s in self.x_alphabet.letters):
            raise SpecInvariantError("factor generators must be unprimed")
        w = self.w
        if isinstance(w, str):
            w = self.x_alphabet.parse(w)
        w = tuple(w)
        for x in w:
            if x not in self.x_alphabet:
                raise UnknownLetter(x, self.x_alphabet.letters)
        if tuple(reduce(w)) != w:
            raise SpecInvariantError("amalgamating word must be freely reduced")
        if not w:
            raise EmptyWord("amalgamating word must be nontrivial")
        if cyclic_reduce(w)[1]:
            raise SpecInvariantError("amalgamating word must be cyclically reduced")
        root, e = primitive_root(w)
        if e != 1:
            raise SpecInvariantError(
                f"amalgamating word is a proper power (exponent {e}); "
                "its cyclic subgroup is not malnormal")
        object.__setattr__(self, "w", w)
        n = self.x_alphabet.rank
        y = Alphabet(tuple(s + "'" for s in self.x_alphabet.letters))
        object.__setattr__(self, "y_alphabet", y)
        object.__setattr__(self, "alphabet", Alphabet(self.x_alphabet.letters + y.letters))
        object.__setattr__(self, "w_mirror", tuple(x + n if x > 0 else x - n for x in w))

    @classmethod
    def of(cls, letters, w) -> "DoubleSpec":
        return cls(Alphabet.of(letters), w)

    @property
    def n(self) -> int:
        return self.x_alphabet.rank

    def is_x(self, x: int) -> bool:
        return abs(x) <= self.n

    def x_letters(self) -> list:
        return self.x_alphabet.signed()

    def y_letters(self) -> list:
        n = self.n
        return [x + n if x > 0 else x - n for x in self.x_alphabet.signed()]

    def mirror(self, x: int) -> int:
        """The colour swap on letters (the isomorphism and its inverse)."""
        n = self.n
        if abs(x) <= n:
            return x + n if x > 0 else x - n
        return x - n if x > 0 else x + n

    def mirror_word(self, word: Sequence[int]) -> Word:
        return tuple(self.mirror(x) for x in word)

    def parse(self, text: str) -> Word:
        return reduce(self.alphabet.parse(text))

    def format(self, word) -> str:
        return self.alphabet.format(word)

    def amalgam_exponent(self, syllable: Sequence[int]) -> Optional[int]:
        """k if the monochromatic reduced syllable is ``w^k`` (or ``w'^k``), else None."""
        if not syllable:
            return 0
        base = self.w if self.is_x(syllable[0]) else self.w_mirror
        return power_exponent(syllable, base)


def _stepper(g: LabeledGraph):
    out = g.out

    def step(v, word):
        for x in word:
            ts = out[v].get(x)
            if not ts:
                return None
            v = ts[0]
        return v
    return step


def is_bichromatic(spec: DoubleSpec, labels) -> bool:
    n = spec.n
    has_x = has_y = False
    for x in labels:
        if abs(x) <= n:
            has_x = True
        else:
            has_y = True
    return has_x and has_y


def bichromatic_vertices(spec: DoubleSpec, g) -> list:
    if isinstance(g, FoldingGraph):
        return [v for v in g.vertices() if is_bichromatic(spec, g.out[v])]
    return [v for v in g.vertices if is_bichromatic(spec, (x for x, ts in g.out[v].items() if ts))]


def orbit(step, v: int, word: Sequence[int], limit: int) -> tuple:
    """Vertices ``v, v.word, v.word^2, ...`` while the trace stays complete.

    Returns ``(sequence, closed)``; ``closed`` means the next power returns to ``v``.
    """
    seq = [v]
    cur = v
    while len(seq) <= limit:
        cur = step(cur, word)
        if cur is None:
            return seq, False
        if cur == v:
            return seq, True
        seq.append(cur)
    return seq, False


def orbit_at(seq, closed, k):
    """The k-th vertex of an orbit from :func:`orbit`, or None past its end."""
    if closed:
        return seq[k % len(seq)]
    return seq[k] if k < len(seq) else None


def matched_cycle(step, spec: DoubleSpec, v: int, limit: int):
    """The closed orbit of ``v`` if ``w`` and ``w'`` run through it in step, else None.

    Every vertex of such a cycle satisfies compatibility trivially, so
    callers skip the whole cycle at once.
    """
    xs, xc = orbit(step, v, spec.w, limit)
    if not xc:
        return None
    ys, yc = orbit(step, v, spec.w_mirror, limit)
    return xs if yc and ys == xs else None


def pairings(step, spec: DoubleSpec, v: int, limit: int):
    """Yield ``(k, x_end, y_end)`` for each exponent whose ``w^k`` and ``w'^k`` traces from ``v`` both complete.

    Exponents run by increasing ``|k|``, positive before negative, until both
    power orbits have become periodic or incomplete.
    """
    w, wm = spec.w, spec.w_mirror
    xf = orbit(step, v, w, limit)
    yf = orbit(step, v, wm, limit)
    xb = orbit(step, v, inverse(w), limit)
    yb = orbit(step, v, inverse(wm), limit)
    bound = max(len(xf[0]), len(yf[0]), len(xb[0]), len(yb[0]))
    for k in range(1, bound + 1):
        for (xs, ys, sign) in ((xf, yf, 1), (xb, yb, -1)):
            a = orbit_at(*xs, k)
            b = orbit_at(*ys, k)
            if a is not None and b is not None:
                yield sign * k, a, b


def compatibility_violation(spec: DoubleSpec, g: LabeledGraph):
    """First ``(vertex, k)`` where ``w^k`` and ``w'^k`` lead to different places, or None."""
    require_well_labeled(g)
    step = _stepper(g)
    done = set()
    for v in bichromatic_vertices(spec, g):
        if v in done:
            continue
        cycle = matched_cycle(step, spec, v, g.num_vertices)
        if cycle:
            done.update(cycle)
            continue
        for k, a, b in pairings(step, spec, v, g.num_vertices):
            if a != b:
                return v, k
    return None


def is_compatible(spec: DoubleSpec, g: LabeledGraph) -> bool:
    return compatibility_violation(spec, g) is None


def _colour_saturated(spec, labels) -> bool:
    """A vertex meeting a colour must carry every letter of that colour."""
    n = spec.n
    xs = [x for x in labels if abs(x) <= n]
    ys = [x for x in labels if abs(x) > n]
    return (not xs or len(xs) == 2 * n) and (not ys or len(ys) == 2 * n)


def _monochromatic_covers(spec: DoubleSpec, g: LabeledGraph) -> bool:
    return all(_colour_saturated(spec, [x for x, ts in d.items() if ts]) for d in g.out)


def is_precover(spec: DoubleSpec, g: LabeledGraph) -> bool:
    """Monochromatic components are covers of their factor and the graph is compatible.

    A vertex that meets no edge at all lies in no component and is rejected.
    """
    if not is_well_labeled(g):
        return False
    if any(not any(d.values()) for d in g.out):
        return False
    if not _monochromatic_covers(spec, g):
        return False
    return is_compatible(spec, g)


def is_cover_double(spec: DoubleSpec, g: LabeledGraph) -> bool:
    full = spec.alphabet.signed()
    if not is_well_labeled(g):
        return False
    if not all(d.get(x) for d in g.out for x in full):
        return False
    return is_precover(spec, g)


def _check_property1(spec, f: FoldingGraph):
    for v in f.vertices():
        if not _colour_saturated(spec, f.out[v].keys()):
            raise Property1Violated(f"monochromatic component at vertex {v} is not a cover")


def complete_precover_inplace(spec: DoubleSpec, f: FoldingGraph) -> int:
    """Identify the differing ends of equal ``w``/``w'`` powers until compatible; returns merge count."""
    merges = 0
    changed = True
    while changed:
        changed = False
        done = set()
        for v in bichromatic_vertices(spec, f):
            if f.find(v) != v or v in done:
                continue
            cycle = matched_cycle(f.step, spec, v, f.live)
            if cycle:
                done.update(cycle)
                continue
            for k, a, b in list(pairings(f.step, spec, v, f.live)):
                a, b = f.find(a), f.find(b)
                if a != b:
                    f.merge(a, b)
                    merges += 1
                    changed = True
    return merges


def complete_precover(spec: DoubleSpec, g: LabeledGraph, return_map: bool = False):
    """Map a graph whose monochromatic components are covers onto a compatible precover.

    Surviving vertices keep their relative order (no BFS renumbering) so the
    caller can follow components through; with ``return_map`` the old-to-new
    vertex map is returned too.
    """
    require_well_labeled(g)
    f = FoldingGraph.from_graph(g)
    _check_property1(spec, f)
    complete_precover_inplace(spec, f)
    h, index = f.to_graph(renumber=False)
    if return_map:
        return h, [index[f.find(v)] for v in g.vertices]
    return h


def graft(host: LabeledGraph, host_vertex: int, patch: LabeledGraph, patch_vertex: int,
          letters: Iterable[int], return_map: bool = False):
    """Glue ``patch`` onto ``host`` along the ``letters``-component of ``host_vertex``.

    That component must embed in ``patch`` with ``host_vertex`` going to
    ``patch_vertex``; for well-labeled graphs the embedding is forced, so it
    is found by walking edges.  Host vertices keep their ids; patch vertices
    outside the image are appended in ascending order.
    """
    require_well_labeled(host)
    if not is_well_labeled(patch):
        raise NotWellLabeled("patch is not well-labeled")
    sub = set(letters) | {-x for x in letters}
    if any(x not in sub for d in patch.out for x, ts in d.items() if ts):
        raise NoEmbedding("patch carries labels outside the grafting alphabet")
    phi = {host_vertex: patch_vertex}
    stack = [host_vertex]
    while stack:
        u = stack.pop()
        for x, ts in host.out[u].items():
            if x not in sub or not ts:
                continue
            t = ts[0]
            pt = patch.target(phi[u], x)
            if pt is None:
                raise NoEmbedding(f"edge {u} -{host.alphabet.symbol(x)}-> {t} has no image in the patch")
            if t in phi:
                if phi[t] != pt:
                    raise NoEmbedding(f"vertex {t} would need two images")
            else:
                phi[t] = pt
                stack.append(t)
    if len(set(phi.values())) != len(phi):
        raise NoEmbedding("component does not embed injectively")
    back = {p: h for h, p in phi.items()}
    out = host.copy()
    pmap = {}
    for p in patch.vertices:
        pmap[p] = back[p] if p in back else out.add_vertex()
    for u, x, v in patch.positive_edges():
        out.add_edge(pmap[u], x, pmap[v])
    if return_map:
        return out, pmap
    return out


def double_up(spec: DoubleSpec, g: LabeledGraph) -> LabeledGraph:
    """Embed a finite precover in a finite cover of the double.

    The mirror image of the precover (colours swapped) is glued to it at
    every monochromatic vertex.  Original vertices keep their ids; mirror
    copies of bichromatic vertices are appended in ascending order.
    """
    if not is_precover(spec, g):
        raise NotPrecover("input is not a precover of the double")
    mono = set(g.vertices) - set(bichromatic_vertices(spec, g))
    out = g.copy()
    mirror_of = {}
    for v in g.vertices:
        mirror_of[v] = v if v in mono else out.add_vertex()
    for u, x, v in g.positive_edges():
        out.add_edge(mirror_of[u], spec.mirror(x), mirror_of[v])
    return out


def color_swap(spec: DoubleSpec, g: LabeledGraph) -> LabeledGraph:
    return g.relabeled(spec.alphabet, spec.mirror)


def _syllables(spec, word):
    out = []
    for x in word:
        if out and spec.is_x(out[-1][-1]) == spec.is_x(x):
            out[-1].append(x)
        else:
            out.append([x])
    return [tuple(s) for s in out]


def _merge_adjacent(spec, syls):
    out = []
    for s in syls:
        if not s:
            continue
        if out and spec.is_x(out[-1][0]) == spec.is_x(s[0]):
            merged = reduce(out[-1] + s)
            out.pop()
            if merged:
                out.append(merged)
        else:
            out.append(s)
    return out


def normal_form(spec: DoubleSpec, raw) -> list:
    """Alternating syllables with no amalgamated syllable unless it stands alone.

    Amalgamated syllables are moved to the colour of their neighbours and
    merged; a lone amalgamated syllable is written on the X side.  The
    result is empty exactly when the element is trivial in the double.
    """
    if isinstance(raw, str):
        raw = spec.alphabet.parse(raw)
    word = reduce(raw, spec.alphabet)
    syls = _syllables(spec, word)
    while True:
        prev = None
        while prev != syls:
            prev = syls
            syls = _merge_adjacent(spec, syls)
        if len(syls) <= 1:
            break
        for i, s in enumerate(syls):
            if spec.amalgam_exponent(s) is not None:
                syls = syls[:i] + [spec.mirror_word(s)] + syls[i + 1:]
                break
        else:
            break
    if len(syls) == 1 and not spec.is_x(syls[0][0]) and spec.amalgam_exponent(syls[0]) is not None:
        syls = [spec.mirror_word(syls[0])]
    return syls


def double_dot(spec: DoubleSpec, g: LabeledGraph, name: str = "G") -> str:
    colors = {x: X_COLOR for x in spec.x_alphabet.positive()}
    colors.update({x + spec.n: Y_COLOR for x in spec.x_alphabet.positive()})
    return to_dot(g, name, colors)
