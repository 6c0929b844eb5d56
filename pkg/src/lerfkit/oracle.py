"""Brute-force finite quotients: homomorphisms into small symmetric groups.

Permutations are tuples ``p`` on ``0..n-1`` acting on the right, so a word
``x1 x2 ...`` sends a point ``v`` to ``p_x2[p_x1[v]]``.  This matches the
way words are traced through a cover, which makes a cover's letter action a
homomorphism image directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence

from .doubles import DoubleSpec
from .errors import ConfigurationError
from .free_cover import FreeCertificate, Verdict, is_cover_free
from .graphs import LabeledGraph, is_well_labeled
from .words import Alphabet, inverse, multiply, reduce

MAX_DEGREE = 5


@dataclass(frozen=True)
class Presentation:
    generators: Alphabet
    relators: tuple = ()

    def __post_init__(self):
        rels = tuple(reduce(r, self.generators) for r in self.relators)
        object.__setattr__(self, "relators", tuple(r for r in rels if r))

    @classmethod
    def of(cls, generators, relators: Iterable = ()) -> "Presentation":
        alphabet = generators if isinstance(generators, Alphabet) else Alphabet.of(generators)
        return cls(alphabet, tuple(relators))


def double_presentation(spec: DoubleSpec) -> Presentation:
    """``<X, X' | w = w'>``."""
    return Presentation(spec.alphabet, (multiply(spec.w, inverse(spec.w_mirror)),))


@dataclass(frozen=True)
class HomImage:
    degree: int
    images: tuple

    def act(self, v: int, word: Sequence[int]) -> int:
        for x in word:
            p = self.images[abs(x) - 1]
            v = p[v] if x > 0 else p.index(v)
        return v

    def evaluate(self, word: Sequence[int]) -> tuple:
        return _evaluate(self.degree, _with_inverses(self.images), word)

    def format(self, alphabet: Alphabet) -> str:
        return " ".join(f"{s}={cycle_notation(p)}" for s, p in zip(alphabet.letters, self.images))


def cycle_notation(p: Sequence[int]) -> str:
    """1-based cycles, each starting at its least point; fixed points omitted."""
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, v = [], start
        while v not in seen:
            seen.add(v)
            cyc.append(str(v + 1))
            v = p[v]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def _inverse_perm(p):
    q = [0] * len(p)
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


def _with_inverses(images) -> dict:
    table = {}
    for i, p in enumerate(images, 1):
        table[i] = p
        table[-i] = _inverse_perm(p)
    return table


def _evaluate(n: int, table: dict, word) -> tuple:
    out = []
    for v in range(n):
        for x in word:
            v = table[x][v]
        out.append(v)
    return tuple(out)


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise ConfigurationError(f"degree must be between 1 and {MAX_DEGREE}, got {n}")


def enumerate_homs(p: Presentation, n: int) -> Iterator[HomImage]:
    """Every homomorphism into ``Sym(n)``, in lexicographic order of image tuples.

    Images are assigned one generator at a time and a relator is checked as
    soon as all its generators have images.
    """
    _check_degree(n)
    k = p.generators.rank
    perms = list(permutations(range(n)))
    due = [[] for _ in range(k + 1)]
    for r in p.relators:
        due[max(abs(x) for x in r)].append(r)
    identity = tuple(range(n))
    table = {}

    def search(i, chosen):
        if i > k:
            yield HomImage(n, tuple(chosen))
            return
        for perm in perms:
            table[i] = perm
            table[-i] = _inverse_perm(perm)
            if all(_evaluate(n, table, r) == identity for r in due[i]):
                chosen.append(perm)
                yield from search(i + 1, chosen)
                chosen.pop()
        table.pop(i, None)
        table.pop(-i, None)

    if k == 0:
        yield HomImage(n, ())
        return
    yield from search(1, [])


def _compose(p, q):
    return tuple(q[i] for i in p)


def generated_subgroup(gens: Iterable[tuple], n: int) -> frozenset:
    """All elements of the permutation group generated by ``gens`` (closure under products)."""
    gens = [g for g in gens]
    identity = tuple(range(n))
    seen = {identity}
    queue = deque([identity])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = _compose(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def separating_hom(p: Presentation, subgroup_gens: Iterable, g, n_max: int) -> Optional[HomImage]:
    """First homomorphism (by degree, then enumeration order) sending ``g`` outside the image of the subgroup."""
    _check_degree(n_max)
    gens = [reduce(s, p.generators) for s in subgroup_gens]
    g = reduce(g, p.generators)
    for n in range(1, n_max + 1):
        cache = {}
        for hom in enumerate_homs(p, n):
            images = tuple(hom.evaluate(s) for s in gens)
            if images not in cache:
                cache[images] = generated_subgroup(images, n)
            if hom.evaluate(g) not in cache[images]:
                return hom
    return None


def closure_member(p: Presentation, subgroup_gens: Iterable, g, n_max: int) -> bool:
    """True when no homomorphism of degree at most ``n_max`` separates ``g`` from the subgroup."""
    return separating_hom(p, subgroup_gens, g, n_max) is None


def cover_action(g: LabeledGraph) -> Optional[HomImage]:
    """The letters' permutation action on a cover's vertices, or None if some letter is not a bijection."""
    if not (is_well_labeled(g) and is_cover_free(g)):
        return None
    images = tuple(tuple(g.out[v][x][0] for v in g.vertices) for x in g.alphabet.positive())
    if any(len(set(p)) != len(p) for p in images):
        return None
    return HomImage(g.num_vertices, images)


def cross_check(cert) -> Verdict:
    """Recheck a free or double certificate through its permutation action.

    The action must respect the presentation (no relators for a free group,
    ``w = w'`` for a double), and the orbit of the basepoint under the
    subgroup's image must miss the image of the basepoint under the witness.
    """
    if isinstance(cert, FreeCertificate):
        presentation = Presentation(cert.alphabet)
    else:
        presentation = double_presentation(cert.spec)
    hom = cover_action(cert.cover)
    if hom is None:
        return Verdict(False, ["not a permutation action"])
    failures = []
    identity = tuple(range(hom.degree))
    for r in presentation.relators:
        if hom.evaluate(r) != identity:
            failures.append(f"relator {presentation.generators.format(r)} acts nontrivially")
    images = [hom.evaluate(s) for s in cert.subgroup_generators]
    orbit = {cert.basepoint}
    queue = deque([cert.basepoint])
    while queue:
        v = queue.popleft()
        for q in images:
            for t in (q[v], q.index(v)):
                if t not in orbit:
                    orbit.add(t)
                    queue.append(t)
    if hom.act(cert.basepoint, cert.witness) in orbit:
        failures.append("witness image lies in the subgroup orbit")
    return Verdict(not failures, failures)
