import random

import pytest
from hypothesis import given, settings, strategies as st

from lerfkit.doubles import (DoubleSpec, bichromatic_vertices, color_swap, complete_precover,
                             compatibility_violation, double_dot, double_up, graft, is_compatible,
                             is_cover_double, is_precover, normal_form)
from lerfkit.errors import (EmptyWitness, EmptyWord, NoEmbedding, NotPrecover, Property1Violated,
                            SpecInvariantError)
from lerfkit.free_cover import hall_complete, is_cover_free
from lerfkit.graphs import LabeledGraph, build, components, fold, is_well_labeled
from lerfkit.oracle import double_presentation, enumerate_homs
from lerfkit.pipeline import run_pipeline, verify_certificate
from lerfkit.words import Alphabet, inverse, multiply, reduce

from oracles import partially_glued, random_graph, random_precover, random_word

SPEC = DoubleSpec.of("a b", "ab")
LETTERS = (1, -1, 2, -2, 3, -3, 4, -4)


def g_of(edges, n=None):
    return build(SPEC.alphabet, edges, num_vertices=n)


def index2():
    # a swaps the two vertices, b fixes both
    return g_of([(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)])


def swap2_pair():
    """The index-2 cover on {0, 1} and its mirror on {2, 3}."""
    return [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1),
            (2, "a'", 3), (3, "a'", 2), (2, "b'", 2), (3, "b'", 3)]


class TestSpec:
    def test_mirror(self):
        assert SPEC.w == (1, 2) and SPEC.w_mirror == (3, 4)
        assert SPEC.mirror(-1) == -3 and SPEC.mirror(4) == 2
        assert SPEC.format(SPEC.mirror_word(SPEC.parse("aB"))) == "a'B'"

    def test_invariants(self):
        with pytest.raises(SpecInvariantError):
            DoubleSpec.of("a b", "abab")
        with pytest.raises(SpecInvariantError):
            DoubleSpec.of("a b", "Bab")
        with pytest.raises(EmptyWord):
            DoubleSpec.of("a b", "")
        with pytest.raises(SpecInvariantError):
            DoubleSpec.of("a a'", "a")

    def test_amalgam_exponent(self):
        assert SPEC.amalgam_exponent(SPEC.parse("abab")) == 2
        assert SPEC.amalgam_exponent(SPEC.parse("B'A'")) == -1
        assert SPEC.amalgam_exponent(SPEC.parse("ba")) is None


class TestBichromatic:
    def test_shared_source(self):
        assert bichromatic_vertices(SPEC, g_of([(0, "a", 1), (0, "a'", 2)])) == [0]

    def test_monochromatic(self):
        assert bichromatic_vertices(SPEC, index2()) == []

    def test_disjoint_colours(self):
        assert bichromatic_vertices(SPEC, g_of(swap2_pair())) == []


class TestCompatibility:
    def test_direct_violation(self):
        g = g_of([(0, "a", 1), (1, "b", 2), (0, "a'", 3), (3, "b'", 4)])
        assert compatibility_violation(SPEC, g) == (0, 1)

    def test_agreeing_ends(self):
        g = g_of([(0, "a", 1), (1, "b", 2), (0, "a'", 3), (3, "b'", 2)])
        assert is_compatible(SPEC, g)

    def test_vacuous(self):
        assert is_compatible(SPEC, index2())

    def test_negative_power(self):
        # only the inverse traces complete
        g = g_of([(1, "b", 0), (2, "a", 1), (4, "b'", 0), (3, "a'", 4)])
        assert compatibility_violation(SPEC, g) == (0, -1)


class TestPrecover:
    def test_factor_cover(self):
        assert is_precover(SPEC, index2())

    def test_glued_covers(self):
        g = build(SPEC.alphabet, [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1),
                                  (0, "a'", 1), (1, "a'", 0), (0, "b'", 0), (1, "b'", 1)])
        assert is_precover(SPEC, g) and is_cover_double(SPEC, g)

    def test_unsaturated(self):
        assert not is_precover(SPEC, g_of([(0, "a", 1), (1, "a", 0), (0, "b", 0)]))

    def test_isolated_vertex(self):
        assert not is_precover(SPEC, g_of([(0, "a", 0), (0, "b", 0)], n=2))

    def test_cover_double_negatives(self):
        assert not is_cover_double(SPEC, index2())
        assert not is_cover_double(SPEC, g_of([]))


def one_point_glue():
    """Index-2 cover and its mirror glued at a single vertex; w and w' part ways."""
    return g_of([(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1),
                 (0, "a'", 2), (2, "a'", 0), (0, "b'", 0), (2, "b'", 2)])


class TestCompletePrecover:
    def test_compatible_unchanged(self):
        g = index2()
        assert complete_precover(SPEC, g) == g

    def test_single_merge(self):
        g = one_point_glue()
        assert compatibility_violation(SPEC, g) == (0, 1)
        h, m = complete_precover(SPEC, g, return_map=True)
        assert h.num_vertices == 2 and m == [0, 1, 1]
        assert is_cover_double(SPEC, h)

    def test_property1(self):
        with pytest.raises(Property1Violated):
            complete_precover(SPEC, g_of([(0, "a", 1), (0, "a'", 0), (0, "b'", 0)]))

    def test_components_preserved(self):
        rng = random.Random(41)
        for i in range(60):
            g, _ = partially_glued(rng, SPEC, min_orbit=2, mirrored=True) if i % 2 else partially_glued(rng, SPEC)
            h, m = complete_precover(SPEC, g, return_map=True)
            assert is_compatible(SPEC, h) and is_precover(SPEC, h)
            for letters in (SPEC.x_letters(), SPEC.y_letters()):
                src, _ = components(g, letters)
                dst, _ = components(h, letters)
                assert len(src) == len(dst)
                for comp in src:
                    image = {m[v] for v in comp}
                    assert len(image) == len(comp) and tuple(sorted(image)) in dst
                    for u in comp:
                        for x in letters:
                            assert h.target(m[u], x) == m[g.target(u, x)]


class TestGraft:
    def test_single_vertex_patch(self):
        host = index2()
        patch = LabeledGraph(SPEC.alphabet, 1, 0)
        out = graft(host, 1, patch, 0, [3, 4])
        assert out == host

    def test_extends_path_to_cycle(self):
        alpha = Alphabet.of("c d")
        host = build(alpha, [(0, "c", 1), (1, "c", 2), (0, "d", 0)])
        patch = build(alpha, [(i, "c", (i + 1) % 6) for i in range(6)])
        out, pmap = graft(host, 0, patch, 0, [1], return_map=True)
        assert out.num_vertices == 6 and out.num_edges == 7
        assert pmap == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5}
        assert out.has_edge(5, 1, 0)

    def test_host_too_large(self):
        alpha = Alphabet.of("c")
        host = build(alpha, [(i, "c", i + 1) for i in range(7)])
        patch = build(alpha, [(i, "c", (i + 1) % 6) for i in range(6)])
        with pytest.raises(NoEmbedding):
            graft(host, 0, patch, 0, [1])

    def test_patch_with_foreign_letters(self):
        with pytest.raises(NoEmbedding):
            graft(index2(), 0, index2(), 0, [1])

    def test_random_embeddings(self):
        rng = random.Random(43)
        alpha = Alphabet.of("a b")
        for _ in range(200):
            host = fold(random_graph(rng, 8, 12, alphabet=alpha))
            v = rng.randrange(host.num_vertices)
            # the a-component of v is a path or cycle; find it in order
            back, cur = [], v
            while True:
                p = host.target(cur, -1)
                if p is None or p == v:
                    break
                back.append(p)
                cur = p
            start = cur if host.target(cur, -1) is None else v
            seq, cur = [start], start
            while True:
                t = host.target(cur, 1)
                if t is None or t == start:
                    break
                seq.append(t)
                cur = t
            closed = host.target(seq[-1], 1) == start and len(seq) > 0 and host.target(start, -1) is not None
            length = len(seq) if closed else len(seq) + rng.randint(0, 3)
            patch = build(alpha, [(i, "a", (i + 1) % length) for i in range(length)] if length > 1 or closed
                          else [], num_vertices=max(length, 1))
            out, pmap = graft(host, v, patch, seq.index(v), [1], return_map=True)
            assert is_well_labeled(out)
            assert set(host.edges()) <= set(out.edges())
            assert len(set(pmap.values())) == patch.num_vertices
            for u, x, t in patch.edges():
                assert out.has_edge(pmap[u], x, pmap[t])


class TestDoubleUp:
    def test_index2_cover(self):
        out = double_up(SPEC, index2())
        assert out.num_vertices == 2 and is_cover_double(SPEC, out)
        for x in (1, 2):
            for v in (0, 1):
                assert out.target(v, x) == out.target(v, x + 2)

    def test_already_cover(self):
        g = complete_precover(SPEC, one_point_glue())
        out = double_up(SPEC, g)
        assert out.num_vertices == 4 and len(components(out, SPEC.alphabet.positive())[0]) == 2

    def test_not_precover(self):
        with pytest.raises(NotPrecover):
            double_up(SPEC, g_of([(0, "a", 1)]))

    def test_random_precovers(self):
        rng = random.Random(47)
        for _ in range(100):
            g = random_precover(rng, SPEC)
            assert is_precover(SPEC, g)
            out = double_up(SPEC, g)
            assert is_cover_double(SPEC, out)
            assert out.num_vertices <= 2 * g.num_vertices
            assert set(g.edges()) <= set(out.edges()) and out.basepoint == g.basepoint


def test_colour_swap_symmetry():
    rng = random.Random(53)
    for _ in range(150):
        pick = rng.random()
        if pick < 0.4:
            g = random_precover(rng, SPEC)
        elif pick < 0.8:
            g = partially_glued(rng, SPEC)[0]
        else:
            g = fold(random_graph(rng, 8, 16, rank=4, alphabet=SPEC.alphabet))
        assert is_compatible(SPEC, g) == is_compatible(SPEC, color_swap(SPEC, g))
        assert is_precover(SPEC, g) == is_precover(SPEC, color_swap(SPEC, g))


class TestNormalForm:
    @pytest.mark.parametrize("raw, expected", [("a'b'", ["ab"]), ("aa'", ["a", "a'"]), ("aba'b'", ["abab"]),
                                               ("abB'A'", []), ("", []), ("B'A'", ["BA"]), ("b'A", ["b'", "A"]),
                                               ("aa'b'A", ["aabA"]), ("ab'A", ["a", "b'", "A"])])
    def test_examples(self, raw, expected):
        assert [SPEC.format(s) for s in normal_form(SPEC, raw)] == expected

    @given(st.lists(st.sampled_from(LETTERS), max_size=10))
    @settings(max_examples=200, deadline=None)
    def test_alternating_and_reduced(self, raw):
        syls = normal_form(SPEC, raw)
        for s in syls:
            assert s and reduce(s) == s
        for s, t in zip(syls, syls[1:]):
            assert SPEC.is_x(s[0]) != SPEC.is_x(t[0])
        if len(syls) > 1:
            assert all(SPEC.amalgam_exponent(s) is None for s in syls)

    def test_trivial_products_vanish(self):
        rng = random.Random(59)
        rel = multiply(SPEC.w, inverse(SPEC.w_mirror))
        for _ in range(200):
            word = ()
            for _ in range(rng.randint(1, 3)):
                c = random_word(rng, 3, LETTERS)
                r = rel if rng.random() < 0.5 else inverse(rel)
                word = word + c + r + inverse(c)
            assert normal_form(SPEC, word) == []

    def test_agrees_with_quotients_and_covers(self):
        rng = random.Random(61)
        homs = list(enumerate_homs(double_presentation(SPEC), 3))
        identity = (0, 1, 2)
        empty = nonempty = 0
        for _ in range(40):
            raw = [rng.choice(LETTERS) for _ in range(rng.randint(0, 8))]
            if rng.random() < 0.3:
                raw = raw + list(reduce(SPEC.mirror_word(inverse(raw))))
            syls = normal_form(SPEC, raw)
            if not syls:
                empty += 1
                assert all(h.evaluate(reduce(raw)) == identity for h in homs)
                with pytest.raises(EmptyWitness):
                    run_pipeline(SPEC, [], raw)
            else:
                nonempty += 1
                cert = run_pipeline(SPEC, [], raw)
                assert verify_certificate(cert)
        assert empty >= 3 and nonempty >= 15


def test_dot_colours():
    text = double_dot(SPEC, one_point_glue())
    assert 'label="a", color="blue"' in text and 'label="a\'", color="red"' in text


def test_factor_covers_from_hall():
    rng = random.Random(67)
    for _ in range(20):
        g = hall_complete(fold(random_graph(rng, 6, 8, alphabet=SPEC.x_alphabet)))
        lifted = g.relabeled(SPEC.alphabet, lambda x: x)
        assert is_cover_free(g) and is_precover(SPEC, lifted)
