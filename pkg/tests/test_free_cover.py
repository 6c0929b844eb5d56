import random
from dataclasses import replace

import pytest

from lerfkit.errors import ElementInSubgroup, EmptyWord, NotWellLabeled
from lerfkit.free_cover import (cyclic_intersection, hall_complete, is_cover_free, separate_free,
                                subgroup_graph, verify_free_certificate)
from lerfkit.graphs import LabeledGraph, build, canonical_form, fold, lab_contains, trace
from lerfkit.words import Alphabet, inverse, multiply, power

from oracles import random_graph, random_word, reduced_words, subgroup_ball

AB = Alphabet.of("a b")


@pytest.fixture
def aa_b():
    return subgroup_graph(AB, ["aa", "b"])


class TestSubgroupGraph:
    def test_aa_b(self, aa_b):
        assert aa_b.num_vertices == 2 and aa_b.positive_edges() == [(0, 1, 1), (0, 2, 0), (1, 1, 0)]

    def test_trivial(self):
        g = subgroup_graph(AB, [])
        assert g.num_vertices == 1 and g.num_edges == 0

    def test_whole_group(self):
        g = subgroup_graph(AB, ["a", "b"])
        assert g.num_vertices == 1 and g.positive_edges() == [(0, 1, 0), (0, 2, 0)]

    def test_agrees_with_ball(self, aa_b):
        ball = subgroup_ball([AB.parse("aa"), AB.parse("b")], 8)
        for word in reduced_words(8):
            assert lab_contains(aa_b, 0, word) == (word in ball)


class TestIsCoverFree:
    def test_examples(self, aa_b):
        assert is_cover_free(build(AB, [(0, "a", 0), (0, "b", 0)]))
        assert not is_cover_free(aa_b)
        aa_b.add_edge(1, 2, 1)
        assert is_cover_free(aa_b)

    def test_not_well_labeled(self):
        assert not is_cover_free(build(AB, [(0, "a", 0), (0, "a", 1), (0, "b", 0), (1, "b", 1)]))


class TestHallComplete:
    def test_aa_b(self, aa_b):
        h = hall_complete(aa_b)
        assert is_cover_free(h) and h.has_edge(1, 2, 1) and h.num_vertices == 2

    def test_cover_unchanged(self):
        g = build(AB, [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)])
        assert hall_complete(g) == g

    def test_single_vertex(self):
        h = hall_complete(build(AB, []))
        assert h.positive_edges() == [(0, 1, 0), (0, 2, 0)]

    def test_requires_folded(self):
        with pytest.raises(NotWellLabeled):
            hall_complete(build(AB, [(0, "a", 0), (0, "a", 1)]))

    def test_random(self):
        rng = random.Random(17)
        for _ in range(200):
            g = fold(random_graph(rng, 10, 20))
            h = hall_complete(g)
            assert is_cover_free(h) and h.num_vertices == g.num_vertices
            assert set(g.edges()) <= set(h.edges())


class TestSeparateFree:
    def test_spec_example(self):
        cert = separate_free(AB, ["aa", "b"], "abA")
        assert cert.cover.num_vertices == 4 and cert.witness_end != cert.basepoint
        assert verify_free_certificate(cert)

    def test_member(self):
        with pytest.raises(ElementInSubgroup):
            separate_free(AB, ["aa", "b"], "b")
        with pytest.raises(ElementInSubgroup):
            separate_free(AB, ["aa", "b"], "")

    def test_trivial_subgroup(self):
        cert = separate_free(AB, [], "a")
        assert cert.cover.positive_edges() == [(0, 1, 1), (0, 2, 0), (1, 1, 0), (1, 2, 1)]
        assert cert.witness_end == 1

    def test_random_pairs(self):
        rng = random.Random(23)
        done = 0
        while done < 100:
            S = [random_word(rng, 6, min_len=1) for _ in range(rng.randint(1, 3))]
            g = random_word(rng, 6, min_len=1)
            if lab_contains(subgroup_graph(AB, S), 0, g):
                with pytest.raises(ElementInSubgroup):
                    separate_free(AB, S, g)
                continue
            cert = separate_free(AB, S, g)
            assert verify_free_certificate(cert), verify_free_certificate(cert).failures
            done += 1


def _coset_count(cover, probe_len=4):
    """Classes of words up to ``probe_len`` under u ~ v iff u v^-1 lies in the subgroup."""
    reps = []
    for word in reduced_words(probe_len):
        if not any(lab_contains(cover, cover.basepoint, multiply(word, inverse(r))) for r in reps):
            reps.append(word)
    return len(reps)


def test_index_equals_vertex_count():
    rng = random.Random(29)
    seen = 0
    while seen < 40:
        S = [random_word(rng, 4, min_len=1) for _ in range(rng.randint(1, 2))]
        g = random_word(rng, 4, min_len=1)
        try:
            cert = separate_free(AB, S, g)
        except ElementInSubgroup:
            continue
        if cert.cover.num_vertices > 3:
            continue
        assert _coset_count(cert.cover) == cert.cover.num_vertices
        seen += 1


class TestCyclicIntersection:
    def test_examples(self, aa_b):
        assert cyclic_intersection(aa_b, 0, "a") == 2
        assert cyclic_intersection(aa_b, 0, "b") == 1
        assert cyclic_intersection(aa_b, 0, "ab") == 0

    def test_identity(self, aa_b):
        with pytest.raises(EmptyWord):
            cyclic_intersection(aa_b, 0, "")

    def test_least_power(self):
        rng = random.Random(31)
        hits = set()
        for _ in range(300):
            g = fold(random_graph(rng, 8, 14))
            if rng.random() < 0.5:
                g = hall_complete(g)
            w = random_word(rng, 3, min_len=1)
            if not w:
                continue
            k = cyclic_intersection(g, 0, w)
            for j in range(1, 7):
                if k == 0 or j < k:
                    assert not lab_contains(g, 0, power(w, j))
            if k:
                hits.add(k)
                assert lab_contains(g, 0, power(w, k))
        assert len(hits) >= 3


class TestVerifyFree:
    @pytest.fixture
    def cert(self):
        return separate_free(AB, ["aa", "b"], "abA")

    def test_witness_returns(self, cert):
        assert verify_free_certificate(replace(cert, witness_end=cert.basepoint)).first == "witness returns"

    def test_end_mismatch(self, cert):
        other = next(v for v in cert.cover.vertices if v not in (cert.basepoint, cert.witness_end))
        assert verify_free_certificate(replace(cert, witness_end=other)).first == "witness end mismatch"

    def test_generator_does_not_loop(self, cert):
        bad = replace(cert, subgroup_generators=cert.subgroup_generators + [AB.parse("a")])
        assert verify_free_certificate(bad).first == "generator a does not loop"

    def test_not_saturated(self, cert):
        g = LabeledGraph(AB, cert.cover.num_vertices, cert.basepoint)
        for u, x, v in cert.cover.positive_edges()[1:]:
            g.add_edge(u, x, v)
        assert verify_free_certificate(replace(cert, cover=g)).first == "not saturated"

    def test_basepoint(self, cert):
        assert verify_free_certificate(replace(cert, basepoint=99)).first == "basepoint is not a vertex"

    def test_witness_actually_leaves(self, cert):
        assert trace(cert.cover, cert.basepoint, cert.witness).end == cert.witness_end
        assert canonical_form(cert.cover) == canonical_form(hall_complete(fold(cert.cover)))
