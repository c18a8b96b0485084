"""
Invariants of megagreedoids

Descents of feasible permutations, the F-expansion of the generic
quasisymmetric function and its flag (character) form, feasibility and
genericity of functions, the counting polynomial with its reciprocity, and
the brute-force oracles everything is cross-checked against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

import networkx as nx
import sympy as sp

from config import Config

from .constructions import Poset, RootedMultigraph, UnsupportedInputError
from .core import (
    GroundSet,
    Megagreedoid,
    MalformedInputError,
    PreconditionError,
    Subset,
    contract,
    feasible_permutations,
    format_permutation,
    is_boolean_interval,
    is_zeta_interval,
    popcount,
    prefix_masks,
    restrict,
)
from .complex import adjacent_swap, shelling_order
from .qsym import QsymElement, counting_polynomial, evaluate, specialize_poly

READINGS = ("greedy", "literal")


class DescentCause(str, Enum):
    INFEASIBLE_SWAP = "INFEASIBLE_SWAP"
    RANK_DROP = "RANK_DROP"
    TIE_ORDER = "TIE_ORDER"
    NON_MODULAR = "NON_MODULAR"
    EARLIER_SWAP = "EARLIER_SWAP"


@dataclass(frozen=True)
class DescentReport:
    """Descent set of a feasible permutation with the cause(s) at each position"""

    permutation: tuple[int, ...]
    descent_set: tuple[int, ...]
    causes: Mapping[int, tuple[DescentCause, ...]] = field(default_factory=dict)
    reading: str = "greedy"

    def describe(self, ground: GroundSet) -> str:
        positions = ",".join(str(i) for i in self.descent_set)
        return f"{format_permutation(ground, self.permutation)} {{{positions}}}"


def _resolve_reading(reading: str | None) -> str:
    reading = reading or Config.DESCENT_READING
    if reading not in READINGS:
        raise MalformedInputError(f"descent reading must be one of {READINGS}, got {reading!r}")
    return reading


def descents(m: Megagreedoid, sigma: Sequence[int], reading: str | None = None) -> DescentReport:
    """
    r-descents of a feasible permutation

    With P_i the prefix sets and Q_i = P_{i-1} + sigma_{i+1}, position i is a
    descent when [P_{i-1}, P_{i+1}] is not boolean and modular (Q_i
    infeasible, or r(P_i) - r(P_{i-1}) != r(P_{i+1}) - r(Q_i)), or when the
    swapped permutation comes earlier in shelling_order(m). For the greedy
    order that means r(Q_i) < r(P_i), or equal ranks with sigma_{i+1} before
    sigma_i in the ground order. These positions are the colours of the
    restriction face of sigma.

    The "literal" reading compares r(P_{i+1}) with r(P_i) instead of using
    the shelling order; it is kept as a diagnostic.

    Raises:
        PreconditionError: sigma is not an A-feasible permutation
        ShellingError: no shelling order was found (greedy reading only)
    """
    reading = _resolve_reading(reading)
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(m.size)):
        raise PreconditionError(f"{sigma} is not a permutation of the ground positions")
    prefixes = prefix_masks(sigma)
    if any(p not in m.family for p in prefixes):
        raise PreconditionError(f"{format_permutation(m.ground, sigma)} is not a feasible permutation")
    order = shelling_order(m) if reading == "greedy" else None

    causes: dict[int, tuple[DescentCause, ...]] = {}
    for i in range(1, m.size):
        current, following = sigma[i - 1], sigma[i]
        previous_prefix, prefix, next_prefix = prefixes[i - 1], prefixes[i], prefixes[i + 1]
        swapped = previous_prefix | 1 << following
        found = []
        if swapped not in m.family:
            found.append(DescentCause.INFEASIBLE_SWAP)
        else:
            if order is None:
                compared = m.rank(next_prefix)
                if compared < m.rank(prefix):
                    found.append(DescentCause.RANK_DROP)
                elif compared == m.rank(prefix) and following < current:
                    found.append(DescentCause.TIE_ORDER)
            elif order.precedes(adjacent_swap(sigma, i), sigma):
                if order.kind != "greedy":
                    found.append(DescentCause.EARLIER_SWAP)
                elif m.rank(swapped) < m.rank(prefix):
                    found.append(DescentCause.RANK_DROP)
                else:
                    found.append(DescentCause.TIE_ORDER)
            if m.rank(prefix) - m.rank(previous_prefix) != m.rank(next_prefix) - m.rank(swapped):
                found.append(DescentCause.NON_MODULAR)
        if found:
            causes[i] = tuple(found)
    return DescentReport(sigma, tuple(sorted(causes)), causes, reading)


def descent_reports(m: Megagreedoid, reading: str | None = None) -> list[DescentReport]:
    return [descents(m, sigma, reading) for sigma in feasible_permutations(m)]


def chi_F(m: Megagreedoid, reading: str | None = None) -> QsymElement:
    """Sum of F_{Des(sigma), |I|} over the feasible permutations"""
    terms: Counter = Counter()
    for report in descent_reports(m, reading):
        terms[(report.descent_set, m.size)] += 1
    return QsymElement("F", terms)


def descent_disagreements(m: Megagreedoid) -> list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """Permutations whose greedy and literal descent sets differ: (sigma, greedy, literal)"""
    found = []
    for sigma in feasible_permutations(m):
        greedy = descents(m, sigma, "greedy").descent_set
        literal = descents(m, sigma, "literal").descent_set
        if greedy != literal:
            found.append((sigma, greedy, literal))
    return found


def certified_chains(m: Megagreedoid) -> Counter:
    """
    Strict chains from the empty set to I whose consecutive intervals are
    boolean with modular local rank, counted by their intermediate cardinalities
    """
    full = m.full_mask
    members = m.sorted_family()

    @lru_cache(maxsize=None)
    def from_set(lower: Subset) -> tuple[tuple[tuple[int, ...], int], ...]:
        if lower == full:
            return (((), 1),)
        found: Counter = Counter()
        for upper in members:
            if upper == lower or upper & lower != lower:
                continue
            if not is_zeta_interval(m, lower, upper):
                continue
            for tail, count in from_set(upper):
                head = () if upper == full else (popcount(upper),)
                found[head + tail] += count
        return tuple(found.items())

    return Counter(dict(from_set(0)))


def chi_flag(m: Megagreedoid) -> QsymElement:
    """The character (flag) formula in the M basis"""
    return QsymElement("M", {(cardinalities, m.size): count for cardinalities, count in certified_chains(m).items()})


@dataclass(frozen=True)
class LevelChain:
    """Ordered set partition of I by the values of f, with its cumulative sets"""

    values: tuple[int, ...]
    blocks: tuple[Subset, ...]
    chain: tuple[Subset, ...]

    def intervals(self) -> list[tuple[Subset, Subset]]:
        return list(zip(self.chain, self.chain[1:]))


def _function_values(m: Megagreedoid, f) -> tuple[int, ...]:
    if isinstance(f, Mapping):
        missing = [label for label in m.ground.elements if label not in f]
        if missing:
            raise MalformedInputError(f"function is not defined on {missing}")
        values = tuple(f[label] for label in m.ground.elements)
    else:
        values = tuple(f)
    if len(values) != m.size:
        raise MalformedInputError(f"function has {len(values)} values; the ground set has {m.size} elements")
    for value in values:
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise MalformedInputError(f"function values must be positive integers, got {value!r}")
    return values


def level_chain(m: Megagreedoid, f) -> LevelChain:
    """
    Level chain of f: the blocks f^-1(v) for increasing used values v

    f is either a sequence aligned with the ground order or a label mapping.
    """
    values = _function_values(m, f)
    blocks, chain = [], [0]
    for level in sorted(set(values)):
        block = 0
        for position, value in enumerate(values):
            if value == level:
                block |= 1 << position
        blocks.append(block)
        chain.append(chain[-1] | block)
    return LevelChain(values, tuple(blocks), tuple(chain))


def is_feasible(m: Megagreedoid, f) -> bool:
    """Every sublevel set {i : f(i) <= c} is feasible"""
    return all(s in m.family for s in level_chain(m, f).chain)


def is_strongly_feasible(m: Megagreedoid, f) -> bool:
    """
    Feasible, and every interval of the level chain is boolean

    A small perturbation of f splits each level block in an arbitrary order,
    and the prefixes of those splittings are exactly the sets between two
    consecutive sublevel sets.
    """
    levels = level_chain(m, f)
    if any(s not in m.family for s in levels.chain):
        return False
    return all(is_boolean_interval(m, lower, upper) for lower, upper in levels.intervals())


def is_generic(m: Megagreedoid, f) -> bool:
    """Strongly feasible with modular local rank on every level interval"""
    levels = level_chain(m, f)
    if any(s not in m.family for s in levels.chain):
        return False
    return all(is_zeta_interval(m, lower, upper) for lower, upper in levels.intervals())


def oracle_count_generic(m: Megagreedoid, n: int) -> int:
    """Brute-force count of the generic functions I -> [n]"""
    if n < 1:
        raise PreconditionError("the oracle needs at least one colour")
    return sum(1 for f in product(range(1, n + 1), repeat=m.size) if is_generic(m, f))


def chi_polynomial(m: Megagreedoid, reading: str | None = None) -> sp.Poly:
    return _chi_polynomial(m, _resolve_reading(reading))


@lru_cache(maxsize=4096)
def _chi_polynomial(m: Megagreedoid, reading: str) -> sp.Poly:
    return specialize_poly(chi_F(m, reading))


def convolution_sides(m: Megagreedoid, n: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of chi(M, n + k) = sum over feasible S of chi(M|S, n) chi(M/S, k)"""
    if n < 0 or k < 0:
        raise PreconditionError("convolution arguments must be nonnegative")
    left = evaluate(chi_polynomial(m), n + k)
    right = sum(
        (
            evaluate(chi_polynomial(restrict(m, s)), n) * evaluate(chi_polynomial(contract(m, s)), k)
            for s in m.sorted_family()
        ),
        Fraction(0),
    )
    return left, right


def convolution_check(m: Megagreedoid, n: int, k: int) -> bool:
    left, right = convolution_sides(m, n, k)
    return left == right


def reciprocity_eval(m: Megagreedoid, n: int) -> Fraction:
    """(-1)^|I| chi(M, -n)"""
    sign = -1 if m.size % 2 else 1
    return sign * evaluate(chi_polynomial(m), -n)


def greedy_vertex(m: Megagreedoid, sigma: Sequence[int]) -> tuple[Fraction, ...]:
    """The vector sigma_i -> r(P_i) - r(P_{i-1}), indexed by ground position"""
    prefixes = prefix_masks(sigma)
    vertex = [Fraction(0)] * m.size
    for i, position in enumerate(sigma):
        vertex[position] = m.rank(prefixes[i + 1]) - m.rank(prefixes[i])
    return tuple(vertex)


def vertex_multiplicity(m: Megagreedoid, f) -> int:
    """
    Number of distinct greedy vertices at which the feasible function f is minimized

    These are the v_sigma for feasible permutations sigma along which f is
    weakly increasing.

    Raises:
        PreconditionError: f is not r-feasible
    """
    values = _function_values(m, f)
    if not is_feasible(m, values):
        raise PreconditionError("vertex multiplicity needs an r-feasible function")
    vertices = {
        greedy_vertex(m, sigma)
        for sigma in feasible_permutations(m)
        if all(values[sigma[i]] <= values[sigma[i + 1]] for i in range(m.size - 1))
    }
    return len(vertices)


def reciprocity_sum(m: Megagreedoid, n: int) -> int:
    """Sum of vertex_multiplicity over the r-feasible functions I -> [n]"""
    return sum(
        vertex_multiplicity(m, f)
        for f in product(range(1, n + 1), repeat=m.size)
        if is_feasible(m, f)
    )


def count_rooted_acyclic_orientations(g: RootedMultigraph) -> int:
    """
    Acyclic orientations in which every vertex has a directed path to the root

    Raises:
        UnsupportedInputError: the graph carries half-edges
    """
    if g.half_edges:
        raise UnsupportedInputError("orientation counting is defined for graphs without half-edges")
    edges = list(g.full_edges)
    everyone = set(g.ground.elements)
    count = 0
    for flips in product((False, True), repeat=len(edges)):
        digraph = nx.MultiDiGraph()
        digraph.add_nodes_from(everyone | {g.root})
        digraph.add_edges_from((v, u) if flip else (u, v) for (u, v), flip in zip(edges, flips))
        if nx.is_directed_acyclic_graph(digraph) and nx.ancestors(digraph, g.root) == everyone:
            count += 1
    return count


def is_proper_rooted_coloring(g: RootedMultigraph, f) -> bool:
    """
    Graph-level form of genericity for rooted graphs

    Adjacent non-root vertices get different colours, and every vertex has a
    neighbour of strictly smaller colour, the root counting as colour 0.
    """
    values = f if isinstance(f, Mapping) else dict(zip(g.ground.elements, f))
    colour = {g.root: 0, **values}
    graph = g.to_networkx()
    for u, v in g.full_edges:
        if g.root not in (u, v) and colour[u] == colour[v]:
            return False
    return all(
        any(colour[w] < colour[v] for w in graph.neighbors(v))
        for v in g.ground.elements
    )


def count_linear_extension_qsym(p: Poset) -> QsymElement:
    """
    P-partition expansion: F_{Des(w)} summed over the linear extensions w

    Descents are taken against an order-reversing labelling, so the
    expansion enumerates strictly order-preserving functions.
    """
    index = p.ground.index
    natural = list(nx.lexicographical_topological_sort(p.to_networkx(), key=lambda label: index[label]))
    label_value = {index[label]: len(natural) - i for i, label in enumerate(natural)}
    terms: Counter = Counter()
    for extension in p.linear_extensions():
        descent_set = tuple(
            i + 1 for i in range(len(extension) - 1) if label_value[extension[i]] > label_value[extension[i + 1]]
        )
        terms[(descent_set, len(extension))] += 1
    return QsymElement("F", terms)


def chromatic_polynomial(vertices: Sequence[str], edges: Sequence[tuple[str, str]]) -> sp.Poly:
    """Chromatic polynomial by deletion-contraction (independent of the megagreedoid code)"""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    return _deletion_contraction(graph)


def _deletion_contraction(graph: nx.Graph) -> sp.Poly:
    if nx.number_of_selfloops(graph):
        return counting_polynomial()
    if graph.number_of_edges() == 0:
        return counting_polynomial([0] * graph.number_of_nodes() + [1])
    u, v = next(iter(graph.edges()))
    deleted = graph.copy()
    deleted.remove_edge(u, v)
    contracted = nx.contracted_nodes(graph, u, v, self_loops=False)
    contracted = nx.Graph(contracted)
    return _deletion_contraction(deleted) - _deletion_contraction(contracted)
