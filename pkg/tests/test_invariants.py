"""
Tests for descents, the generic quasisymmetric function and its oracles
"""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import example, given, settings, strategies as st

from megagreedoids.constructions import (
    Poset,
    RootedMultigraph,
    UnsupportedInputError,
    from_poset,
    from_rooted_graph,
    with_universal_root,
)
from megagreedoids.core import (
    MalformedInputError,
    Megagreedoid,
    PreconditionError,
    direct_sum,
    feasible_permutations,
    format_permutation,
    parse_permutation,
)
from megagreedoids.complex import shelling_order, verify_shelling
from megagreedoids.corpus import corpus_megagreedoids, generate_corpus, random_poset, random_rooted_graph
from megagreedoids.documents import build_structure
from megagreedoids.invariants import (
    DescentCause,
    chi_F,
    chi_flag,
    chi_polynomial,
    chromatic_polynomial,
    convolution_check,
    convolution_sides,
    count_linear_extension_qsym,
    count_rooted_acyclic_orientations,
    descent_disagreements,
    descent_reports,
    descents,
    is_feasible,
    is_generic,
    is_proper_rooted_coloring,
    is_strongly_feasible,
    level_chain,
    oracle_count_generic,
    reciprocity_eval,
    reciprocity_sum,
    vertex_multiplicity,
)
from megagreedoids.qsym import QsymElement, count_specialize, evaluate, specialize_poly, to_basis

FIGURE_CHI = QsymElement("F", {((1, 2, 3), 4): 6, ((1, 3), 4): 2})


def in_order(labels, values):
    """Function given along another label order, as a label mapping"""
    return dict(zip(labels, values))


class TestDescents:
    def test_figure_permutation(self, graph_mg):
        sigma = parse_permutation(graph_mg.ground, "asfp")
        assert descents(graph_mg, sigma, "greedy").descent_set == (1, 2, 3)
        assert descents(graph_mg, sigma, "literal").descent_set == (1, 3)

    def test_greedoid_descents(self, greedoid_mg):
        described = [report.describe(greedoid_mg.ground) for report in descent_reports(greedoid_mg, "greedy")]
        assert described == ["fnu {2}", "fun {1,2}", "nfu {1,2}", "nuf {1,2}"]

    def test_polymatroid_rank_drop(self, polymatroid_mg):
        sigma = parse_permutation(polymatroid_mg.ground, "fnu")
        report = descents(polymatroid_mg, sigma, "greedy")
        assert DescentCause.RANK_DROP in report.causes[2]

    def test_infeasible_swap(self, graph_mg):
        sigma = parse_permutation(graph_mg.ground, "fpsa")
        report = descents(graph_mg, sigma, "greedy")
        assert report.causes[1] == (DescentCause.INFEASIBLE_SWAP,)

    def test_boolean_modular_descents_are_ordinary(self):
        m = Megagreedoid.from_labelled("abc", [(labels, len(labels)) for labels in ["", "a", "b", "c", "ab", "ac", "bc", "abc"]])
        for report in descent_reports(m, "greedy"):
            sigma = report.permutation
            assert report.descent_set == tuple(i + 1 for i in range(2) if sigma[i + 1] < sigma[i])

    def test_poset_listed_against_its_order(self):
        m = from_poset(Poset("abc", [("a", "c")]))
        assert shelling_order(m).kind == "searched"
        assert chi_F(m, "greedy") == QsymElement("F", {((1,), 3): 1, ((2,), 3): 1, ((1, 2), 3): 1})
        report = descents(m, parse_permutation(m.ground, "abc"), "greedy")
        assert report.descent_set == (2,)
        assert report.causes[2] == (DescentCause.EARLIER_SWAP,)
        steps = verify_shelling(m).steps
        assert [format_permutation(m.ground, step.permutation) for step in steps] == ["acb", "abc", "bac"]

    def test_examples_keep_the_greedy_order(self, graph_mg, greedoid_mg, polymatroid_mg):
        for m in (graph_mg, greedoid_mg, polymatroid_mg):
            assert shelling_order(m).kind == "greedy"

    def test_not_feasible(self, graph_mg):
        with pytest.raises(PreconditionError):
            descents(graph_mg, parse_permutation(graph_mg.ground, "pfsa"))
        with pytest.raises(PreconditionError):
            descents(graph_mg, (0, 1, 2))

    def test_unknown_reading(self, graph_mg):
        with pytest.raises(MalformedInputError):
            descents(graph_mg, feasible_permutations(graph_mg)[0], "sideways")

    def test_disagreements(self, graph_mg):
        found = {format_permutation(graph_mg.ground, sigma) for sigma, _, _ in descent_disagreements(graph_mg)}
        assert "asfp" in found


class TestChi:
    def test_figure(self, graph_mg):
        assert chi_F(graph_mg, "greedy").terms == FIGURE_CHI.terms
        assert chi_flag(graph_mg).terms == {((1, 2, 3), 4): 8, ((1, 3), 4): 2}

    def test_greedoid(self, greedoid_mg):
        assert chi_F(greedoid_mg, "greedy").terms == {((1, 2), 3): 3, ((2,), 3): 1}

    def test_polymatroid(self, polymatroid_mg):
        assert chi_F(polymatroid_mg, "greedy").terms == {((2,), 3): 1, ((1, 2), 3): 5}

    def test_empty(self):
        assert chi_F(Megagreedoid.empty()) == QsymElement.one()
        assert chi_flag(Megagreedoid.empty()) == QsymElement.one()

    def test_descents_match_flag_formula(self, corpus):
        for document, m in corpus:
            assert chi_F(m, "greedy") == to_basis(chi_flag(m), "F"), document.name

    @given(st.integers(0, 100_000))
    @example(2024)
    @settings(max_examples=20)
    def test_descents_match_flag_formula_across_seeds(self, seed):
        for document, m in corpus_megagreedoids(generate_corpus(seed=seed, size=10, max_ground=4)):
            assert chi_F(m, "greedy") == to_basis(chi_flag(m), "F"), document.name

    def test_literal_reading_is_diagnostic(self, graph_mg):
        assert chi_F(graph_mg, "literal") != chi_flag(graph_mg)
        assert chi_F(graph_mg, "literal").terms == {((1, 2, 3), 4): 4, ((1, 3), 4): 4}

    @given(st.integers(0, 100_000), st.integers(0, 100_000))
    @settings(max_examples=25)
    def test_multiplicative(self, first, second):
        rng = random.Random(first)
        m = from_poset(random_poset(rng, rng.randint(0, 3)))
        rng = random.Random(second)
        g = random_rooted_graph(rng, rng.randint(1, 3))
        n = from_rooted_graph(g).relabel({label: label.upper() for label in g.ground.elements})
        assert chi_flag(direct_sum(m, n)) == chi_flag(m) * chi_flag(n)
        assert chi_F(direct_sum(m, n), "greedy") == chi_F(m, "greedy") * chi_F(n, "greedy")

    def test_poset_partitions(self, corpus):
        for document, m in corpus:
            if document.structure.kind == "poset":
                assert count_linear_extension_qsym(build_structure(document)) == chi_F(m, "greedy")


class TestFunctions:
    ORDER = ["f", "p", "s", "a"]

    def test_generic_example(self, graph_mg):
        f = in_order(self.ORDER, (1, 2, 3, 2))
        assert is_generic(graph_mg, f)
        assert is_generic(graph_mg, (2, 1, 2, 3))

    def test_block_with_edge(self, graph_mg):
        f = in_order(self.ORDER, (1, 1, 2, 3))
        assert is_feasible(graph_mg, f)
        assert not is_generic(graph_mg, f)

    def test_infeasible_level(self, graph_mg):
        f = in_order(self.ORDER, (2, 1, 1, 2))
        assert not is_strongly_feasible(graph_mg, f)
        assert not is_generic(graph_mg, f)

    def test_level_chain(self, graph_mg):
        levels = level_chain(graph_mg, (2, 1, 2, 3))
        assert levels.chain == (0, graph_mg.mask("f"), graph_mg.mask("fap"), graph_mg.full_mask)

    def test_bad_functions(self, graph_mg):
        with pytest.raises(MalformedInputError):
            is_generic(graph_mg, (1, 2, 3))
        with pytest.raises(MalformedInputError):
            is_generic(graph_mg, (0, 1, 2, 3))
        with pytest.raises(MalformedInputError):
            is_generic(graph_mg, {"f": 1})

    @pytest.mark.parametrize("n, expected", [(1, 0), (2, 0), (3, 2), (4, 16)])
    def test_oracle_figure(self, graph_mg, n, expected):
        assert oracle_count_generic(graph_mg, n) == expected
        assert count_specialize(chi_F(graph_mg, "greedy"), n) == expected

    def test_oracle_needs_colours(self, graph_mg):
        with pytest.raises(PreconditionError):
            oracle_count_generic(graph_mg, 0)

    def test_oracle_corpus(self, corpus):
        for document, m in corpus:
            chi = chi_F(m, "greedy")
            for n in range(1, m.size + 2):
                assert oracle_count_generic(m, n) == count_specialize(chi, n), (document.name, n)

    @given(st.integers(0, 100_000))
    @example(2024)
    @settings(max_examples=15)
    def test_oracle_across_seeds(self, seed):
        for document, m in corpus_megagreedoids(generate_corpus(seed=seed, size=10, max_ground=4)):
            chi = chi_F(m, "greedy")
            for n in range(1, m.size + 2):
                assert oracle_count_generic(m, n) == count_specialize(chi, n), (document.name, n)

    def test_proper_rooted_colourings(self, corpus):
        for document, m in corpus:
            if document.structure.kind != "rooted_graph" or m.size > 4:
                continue
            g = build_structure(document)
            for f in product(range(1, 4), repeat=m.size):
                assert is_generic(m, f) == is_proper_rooted_coloring(g, f)


class TestPolynomial:
    def test_convolution_figure(self, graph_mg):
        assert convolution_sides(graph_mg, 2, 2) == (16, 16)

    def test_convolution_corpus(self, corpus_mgs):
        for m in corpus_mgs[:20]:
            for total in range(6):
                for n in range(total + 1):
                    assert convolution_check(m, n, total - n)

    def test_convolution_negative(self, graph_mg):
        with pytest.raises(PreconditionError):
            convolution_sides(graph_mg, -1, 2)

    def test_reciprocity_figure(self, graph_mg, rooted_graph):
        assert reciprocity_eval(graph_mg, 1) == 6
        assert reciprocity_sum(graph_mg, 1) == 6
        assert count_rooted_acyclic_orientations(rooted_graph) == 6
        assert vertex_multiplicity(graph_mg, (1, 1, 1, 1)) == 6

    def test_reciprocity_chain(self):
        m = from_poset(Poset("pq", [("p", "q")]))
        assert reciprocity_eval(m, 4) == 10
        assert reciprocity_sum(m, 4) == 10

    def test_reciprocity_corpus(self, corpus):
        for document, m in corpus:
            for n in (1, 2, 3):
                assert reciprocity_eval(m, n) == reciprocity_sum(m, n), (document.name, n)

    def test_multiplicity_needs_feasible(self, graph_mg):
        with pytest.raises(PreconditionError):
            vertex_multiplicity(graph_mg, in_order(["f", "p", "s", "a"], (2, 1, 1, 2)))

    def test_polynomial_values(self, graph_mg):
        poly = chi_polynomial(graph_mg)
        assert [evaluate(poly, n) for n in range(5)] == [0, 0, 0, 2, 16]
        assert poly.degree() == 4


class TestClassicalOracles:
    def test_triangle_chromatic(self):
        g = with_universal_root(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
        m = from_rooted_graph(g)
        polynomial = chromatic_polynomial(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
        for n in range(1, 5):
            assert evaluate(polynomial, n) == n * (n - 1) * (n - 2)
            assert count_specialize(chi_F(m, "greedy"), n) == evaluate(polynomial, n)

    def test_path_orientations(self):
        g = RootedMultigraph(["x", "y"], "r", [("r", "x"), ("x", "y")])
        assert count_rooted_acyclic_orientations(g) == 1
        assert reciprocity_eval(from_rooted_graph(g), 1) == 1

    def test_star_orientations(self):
        assert count_rooted_acyclic_orientations(with_universal_root(["x", "y"], [])) == 1

    def test_half_edges_unsupported(self):
        g = RootedMultigraph(["x"], "r", [("r", "x")], half_edges=["x"])
        with pytest.raises(UnsupportedInputError):
            count_rooted_acyclic_orientations(g)

    @given(st.integers(0, 100_000))
    @settings(max_examples=25)
    def test_orientations_match_reciprocity(self, seed):
        rng = random.Random(seed)
        g = random_rooted_graph(rng, rng.randint(1, 4))
        if len(g.full_edges) > 9:
            return
        assert count_rooted_acyclic_orientations(g) == reciprocity_eval(from_rooted_graph(g), 1)

    def test_flag_formula_in_fundamentals(self, graph_mg):
        assert to_basis(chi_flag(graph_mg), "F").terms == FIGURE_CHI.terms

    def test_rational_ranks_survive(self):
        m = Megagreedoid.from_labelled("ab", [("", 0), ("a", "1/2"), ("b", "1/2"), ("ab", 1)])
        assert chi_F(m, "greedy") == chi_flag(m)
        assert evaluate(chi_polynomial(m), Fraction(3)) == 9


@st.composite
def plain_graphs(draw, max_vertices=5):
    """A simple graph on vertices v0..v(k-1), as (vertices, edges)"""
    count = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(count)]
    pairs = [(vertices[i], vertices[j]) for i in range(count) for j in range(i + 1, count)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return vertices, edges


class TestUniversalRoot:
    """With a root joined to every vertex, generic functions are proper colourings"""

    @given(plain_graphs())
    @settings(max_examples=40)
    def test_chromatic_polynomial(self, graph):
        vertices, edges = graph
        m = from_rooted_graph(with_universal_root(vertices, edges))
        polynomial = chromatic_polynomial(vertices, edges)
        chi = chi_F(m, "greedy")
        assert chi == to_basis(chi_flag(m), "F")
        assert specialize_poly(chi) == polynomial
        for n in range(1, len(vertices) + 2):
            assert oracle_count_generic(m, n) == count_specialize(chi, n) == evaluate(polynomial, n)

    def test_path_on_four_vertices(self):
        vertices = ["x", "z", "u", "y"]
        edges = [("x", "z"), ("z", "u"), ("u", "y")]
        m = from_rooted_graph(with_universal_root(vertices, edges))
        chi = chi_F(m, "greedy")
        assert chi == to_basis(chi_flag(m), "F")
        assert [count_specialize(chi, n) for n in range(1, 5)] == [0, 2, 24, 108]
