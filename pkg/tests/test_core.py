"""
Tests for the megagreedoid data model
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from megagreedoids.core import (
    AxiomViolationError,
    GroundSet,
    GroundSetTooLargeError,
    InfeasibleSetError,
    LabelCollisionError,
    MalformedInputError,
    Megagreedoid,
    PreconditionError,
    check_axioms,
    contract,
    direct_sum,
    feasible_permutations,
    format_permutation,
    is_boolean_interval,
    is_modular_four_point,
    is_modular_on_interval,
    parse_permutation,
    restrict,
    submasks,
)
from megagreedoids.corpus import corpus_megagreedoids, generate_corpus

FIGURE_SETS = [
    ([], 0), (["f"], 2), (["a"], 2), (["f", "p"], 3), (["f", "a"], 3), (["a", "s"], 3),
    (["f", "p", "a"], 4), (["f", "p", "s"], 4), (["f", "s", "a"], 4), (["p", "s", "a"], 4),
    (["f", "p", "s", "a"], 4),
]


def random_megagreedoid(seed, max_ground=4):
    documents = generate_corpus(seed=seed, size=4, max_ground=max_ground)
    (_, m), = corpus_megagreedoids([documents[seed % 4]])
    return m


class TestAxioms:
    def test_figure_family_passes(self):
        ground = GroundSet(["a", "f", "p", "s"])
        ranks = {ground.mask_of(labels): value for labels, value in FIGURE_SETS}
        assert check_axioms(ground, ranks.keys(), ranks).passed

    def test_figure_matches_rooted_graph(self, graph_mg):
        expected = Megagreedoid.from_labelled(["a", "f", "p", "s"], FIGURE_SETS)
        assert graph_mg == expected
        assert len(graph_mg.family) == 11

    def test_boolean_cardinality_passes(self):
        ground = GroundSet(["a", "b"])
        ranks = {mask: bin(mask).count("1") for mask in range(4)}
        assert check_axioms(ground, ranks.keys(), ranks).passed

    def test_stuck_set_fails_axiom_one(self):
        ground = GroundSet(["a", "b"])
        report = check_axioms(ground, [0, 0b01], {0: 0, 0b01: 1})
        assert not report.passed
        assert any(v.axiom == "1" and v.sets == (0b01,) for v in report.violations)

    def test_missing_rank_is_malformed(self):
        ground = GroundSet(["a", "b"])
        with pytest.raises(MalformedInputError):
            check_axioms(ground, [0, 1], {0: 0})

    def test_stray_bits_are_malformed(self):
        with pytest.raises(MalformedInputError):
            check_axioms(GroundSet(["a"]), [0, 0b10], {0: 0, 0b10: 1})

    def test_local_submodularity_violation(self):
        ground = GroundSet(["a", "b"])
        ranks = {0: 0, 1: 1, 2: 1, 3: 3}
        report = check_axioms(ground, ranks.keys(), ranks)
        assert [v.axiom for v in report.violations] == ["2", "2"]
        with pytest.raises(AxiomViolationError, match="axiom \\(2\\)"):
            Megagreedoid(ground, ranks)

    def test_perturbed_rank_is_rejected(self, corpus):
        perturbed = 0
        for document, m in corpus:
            full = m.full_mask
            for z in range(m.size if m.size > 1 else 0):
                single, rest = 1 << z, full & ~(1 << z)
                if single not in m.family or rest not in m.family:
                    continue
                ranks = m.ranks()
                ranks[full] = ranks[rest] + ranks[single] + 1
                report = check_axioms(m.ground, ranks.keys(), ranks)
                assert any(v.axiom == "2" and v.element == z for v in report.violations), document.name
                with pytest.raises(AxiomViolationError):
                    Megagreedoid(m.ground, ranks)
                perturbed += 1
                break
        assert perturbed > 5

    def test_rank_of_empty_set_is_normalized(self):
        m = Megagreedoid.from_labelled(["a"], [([], 5), (["a"], 7)])
        assert m.rank(0) == 0
        assert m.rank(1) == 2

    def test_ranks_are_exact(self):
        m = Megagreedoid.from_labelled(["a"], [([], 0), (["a"], "1/3")])
        assert m.rank(1) == Fraction(1, 3)
        with pytest.raises(MalformedInputError):
            Megagreedoid.from_labelled(["a"], [([], 0), (["a"], 0.5)])


class TestGroundSet:
    def test_bound(self):
        with pytest.raises(GroundSetTooLargeError):
            GroundSet([f"x{i}" for i in range(17)])

    def test_duplicate_labels(self):
        with pytest.raises(MalformedInputError):
            GroundSet(["a", "a"])

    def test_format(self):
        ground = GroundSet(["a", "f", "p", "s"])
        assert ground.format_set(ground.mask_of(["p", "a"])) == "{a,p}"
        assert ground.format_set(0) == "{}"


class TestMinors:
    def test_restrict_example(self, graph_mg):
        r = restrict(graph_mg, graph_mg.mask(["f", "p"]))
        assert r.ground.elements == ("f", "p")
        assert r.ranks() == {0: 0, 0b01: 2, 0b11: 3}

    def test_restrict_trivial_cases(self, graph_mg):
        assert restrict(graph_mg, 0) == Megagreedoid.empty()
        assert restrict(graph_mg, graph_mg.full_mask) == graph_mg

    def test_contract_example(self, graph_mg):
        c = contract(graph_mg, graph_mg.mask(["f", "p"]))
        assert c.ground.elements == ("a", "s")
        assert c.ranks() == {0: 0, 0b01: 1, 0b10: 1, 0b11: 1}

    def test_contract_trivial_cases(self, graph_mg):
        assert contract(graph_mg, 0) == graph_mg
        assert contract(graph_mg, graph_mg.full_mask) == Megagreedoid.empty()

    def test_infeasible_minor(self, graph_mg):
        with pytest.raises(InfeasibleSetError):
            restrict(graph_mg, graph_mg.mask(["p"]))
        with pytest.raises(InfeasibleSetError):
            contract(graph_mg, graph_mg.mask(["p"]))

    def test_minor_closure(self, corpus_mgs):
        for m in corpus_mgs:
            for s in m.family:
                for minor in (restrict(m, s), contract(m, s)):
                    assert check_axioms(minor.ground, minor.family, minor.ranks()).passed

    def test_minors_are_coassociative(self, corpus_mgs):
        for m in corpus_mgs[:20]:
            for b in m.family:
                for a in m.family:
                    if a & ~b:
                        continue
                    positions = [p for p in range(m.size) if b >> p & 1]
                    inner = sum(1 << i for i, p in enumerate(positions) if a >> p & 1)
                    assert restrict(restrict(m, b), inner) == restrict(m, a)
                    rest = [p for p in range(m.size) if not a >> p & 1]
                    gap = sum(1 << i for i, p in enumerate(rest) if b >> p & 1)
                    assert contract(contract(m, a), gap) == contract(m, b)


class TestDirectSum:
    def test_two_singletons(self):
        left = Megagreedoid.from_labelled(["a"], [([], 0), (["a"], 1)])
        right = Megagreedoid.from_labelled(["b"], [([], 0), (["b"], 2)])
        total = direct_sum(left, right)
        assert total.ground.elements == ("a", "b")
        assert total.is_boolean()
        assert total.rank(0b11) == 3

    def test_unit(self, graph_mg):
        assert direct_sum(graph_mg, Megagreedoid.empty()) == graph_mg
        assert direct_sum(Megagreedoid.empty(), graph_mg) == graph_mg

    def test_label_collision(self, graph_mg):
        with pytest.raises(LabelCollisionError):
            direct_sum(graph_mg, graph_mg)

    @given(st.integers(0, 10_000), st.integers(0, 10_000))
    def test_sum_passes_axioms(self, first, second):
        left = random_megagreedoid(first, 3)
        right = random_megagreedoid(second, 3).relabel({label: label.upper() for label in "abc"})
        total = direct_sum(left, right)
        assert check_axioms(total.ground, total.family, total.ranks()).passed


class TestIntervals:
    def test_boolean_examples(self, graph_mg):
        mask = graph_mg.mask
        assert is_boolean_interval(graph_mg, mask(["f"]), mask(["f", "p", "a"]))
        assert is_boolean_interval(graph_mg, 0, mask(["f", "a"]))
        assert not is_boolean_interval(graph_mg, 0, graph_mg.full_mask)

    def test_modular_examples(self, graph_mg):
        mask = graph_mg.mask
        assert is_modular_on_interval(graph_mg, mask(["f"]), mask(["f", "p", "a"]))
        assert not is_modular_on_interval(graph_mg, 0, mask(["f", "a"]))
        assert is_modular_on_interval(graph_mg, mask(["f"]), mask(["f", "p"]))

    def test_preconditions(self, graph_mg):
        mask = graph_mg.mask
        with pytest.raises(PreconditionError):
            is_boolean_interval(graph_mg, mask(["f"]), mask(["a"]))
        with pytest.raises(PreconditionError):
            is_modular_on_interval(graph_mg, 0, graph_mg.full_mask)

    def test_additive_and_four_point_agree(self, corpus_mgs):
        for m in corpus_mgs:
            for y in m.family:
                for x in submasks(y):
                    if x in m.family and is_boolean_interval(m, x, y):
                        assert is_modular_on_interval(m, x, y) == is_modular_four_point(m, x, y)

    def test_squares_are_submodular(self, corpus_mgs):
        for m in corpus_mgs:
            for sigma in feasible_permutations(m):
                prefixes = [0]
                for p in sigma:
                    prefixes.append(prefixes[-1] | 1 << p)
                for i in range(1, m.size):
                    swapped = prefixes[i - 1] | 1 << sigma[i]
                    if swapped in m.family:
                        assert (
                            m.rank(prefixes[i]) + m.rank(swapped)
                            >= m.rank(prefixes[i + 1]) + m.rank(prefixes[i - 1])
                        )


class TestFeasiblePermutations:
    def test_rooted_graph(self, graph_mg):
        found = {format_permutation(graph_mg.ground, p) for p in feasible_permutations(graph_mg)}
        assert found == {"fpsa", "fpas", "faps", "fasp", "asfp", "aspf", "afps", "afsp"}

    def test_greedoid_in_greedy_order(self, greedoid_mg):
        found = [format_permutation(greedoid_mg.ground, p) for p in feasible_permutations(greedoid_mg)]
        assert found == ["fnu", "fun", "nfu", "nuf"]

    def test_boolean_gives_all_orders(self):
        m = Megagreedoid(GroundSet("abcd"), {mask: 0 for mask in range(16)})
        assert len(feasible_permutations(m)) == 24

    def test_parse_round_trip(self, graph_mg):
        assert format_permutation(graph_mg.ground, parse_permutation(graph_mg.ground, "asfp")) == "asfp"
        with pytest.raises(MalformedInputError):
            parse_permutation(graph_mg.ground, "asf")
