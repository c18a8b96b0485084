"""
Builders that turn classical structures into megagreedoids

Rooted multigraphs (with half-edges and parallel edges), posets, greedoid
rank tables and polymatroid rank tables each map to a megagreedoid. The
graph, poset and rank-table minors defined here are the ones the Hopf
submonoid embeddings are checked against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .core import (
    GroundSet,
    InfeasibleSetError,
    LabelCollisionError,
    MalformedInputError,
    Megagreedoid,
    MegagreedoidError,
    Subset,
    bits,
    compress,
    popcount,
    submasks,
    to_rational,
)


class ConnectivityError(MegagreedoidError):
    """The rooted graph (half-edges ignored) is not connected"""


class InvalidPosetError(MegagreedoidError):
    """The cover relation has a cycle, so its closure is not antisymmetric"""


class UnsupportedInputError(MegagreedoidError):
    """The operation does not accept this kind of input"""


@dataclass(frozen=True)
class RankViolation:
    """A failed greedoid/polymatroid axiom with its witnessing sets"""

    axiom: str
    sets: tuple[Subset, ...]
    elements: tuple[int, ...] = ()

    def describe(self, ground: GroundSet) -> str:
        text = f"{self.axiom} fails at (" + ", ".join(ground.format_set(s) for s in self.sets) + ")"
        if self.elements:
            text += " with " + ",".join(ground.elements[e] for e in self.elements)
        return text


class InvalidGreedoidError(MegagreedoidError):
    def __init__(self, violation: RankViolation, ground: GroundSet):
        self.violation = violation
        super().__init__(f"invalid greedoid: {violation.describe(ground)}")


class InvalidPolymatroidError(MegagreedoidError):
    def __init__(self, violation: RankViolation, ground: GroundSet):
        self.violation = violation
        super().__init__(f"invalid polymatroid: {violation.describe(ground)}")


# ---------------------------------------------------------------------------
# Rooted multigraphs
# ---------------------------------------------------------------------------


class RootedMultigraph:
    """A connected multigraph on I + {root}, possibly carrying half-edges"""

    def __init__(
        self,
        ground: GroundSet | Sequence[str],
        root: str,
        full_edges: Iterable[tuple[str, str]],
        half_edges: Iterable[str] = (),
    ):
        """
        Args:
            ground: the non-root vertices, in the tie-breaking order
            root: the distinguished root label (must not be a ground label)
            full_edges: unordered vertex pairs, repeated for parallel edges
            half_edges: anchors of half-edges, repeated for multiplicity

        Raises:
            MalformedInputError: unknown endpoints, loops, or a root clash
            ConnectivityError: the graph is disconnected (half-edges ignored)
        """
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        if not isinstance(root, str) or not root:
            raise MalformedInputError("root label must be a nonempty string")
        if root in ground.index:
            raise MalformedInputError(f"root label {root!r} is also a ground label")
        self.ground = ground
        self.root = root
        vertices = set(ground.elements) | {root}
        edges = []
        for u, v in full_edges:
            if u not in vertices or v not in vertices:
                raise MalformedInputError(f"edge {u}-{v} has an endpoint outside the graph")
            if u == v:
                raise MalformedInputError(f"loop at {u} is not allowed")
            edges.append(self._normalize(u, v))
        halves = []
        for anchor in half_edges:
            if anchor not in ground.index:
                raise MalformedInputError(f"half-edge anchor {anchor!r} must be a non-root vertex")
            halves.append(anchor)
        self.full_edges = tuple(sorted(edges, key=self._edge_sort_key))
        self.half_edges = tuple(sorted(halves, key=lambda label: ground.index[label]))
        if not nx.is_connected(self.to_networkx()):
            raise ConnectivityError("rooted graph is not connected (half-edges ignored)")

    def _normalize(self, u: str, v: str) -> tuple[str, str]:
        # root first, then ground order
        def order(label):
            return -1 if label == self.root else self.ground.index[label]

        return (u, v) if order(u) <= order(v) else (v, u)

    def _edge_sort_key(self, edge: tuple[str, str]) -> tuple[int, int]:
        return tuple(-1 if label == self.root else self.ground.index[label] for label in edge)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.ground.elements)
        graph.add_node(self.root)
        graph.add_edges_from(self.full_edges)
        return graph

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootedMultigraph)
            and self.ground == other.ground
            and self.root == other.root
            and Counter(self.full_edges) == Counter(other.full_edges)
            and Counter(self.half_edges) == Counter(other.half_edges)
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.root, self.full_edges, self.half_edges))

    def __repr__(self) -> str:
        edges = " ".join(f"{u}{v}" if len(u) == len(v) == 1 else f"{u}-{v}" for u, v in self.full_edges)
        text = f"RootedMultigraph(root={self.root}, order={list(self.ground.elements)}, edges=[{edges}]"
        if self.half_edges:
            text += f", half_edges={list(self.half_edges)}"
        return text + ")"

    def mask(self, labels: Iterable[str]) -> Subset:
        return self.ground.mask_of(labels)

    def adjacency(self) -> tuple[list[Subset], Subset]:
        """Per-vertex masks of ground neighbours, and the mask of root neighbours"""
        neighbours = [0] * len(self.ground)
        root_neighbours = 0
        index = self.ground.index
        for u, v in self.full_edges:
            if u == self.root:
                root_neighbours |= 1 << index[v]
            else:
                neighbours[index[u]] |= 1 << index[v]
                neighbours[index[v]] |= 1 << index[u]
        return neighbours, root_neighbours

    def is_connected_with_root(self, s: Subset) -> bool:
        """Whether the induced subgraph on s + root is connected"""
        neighbours, root_neighbours = self.adjacency()
        return _reach_from_root(s, neighbours, root_neighbours) == s


def _reach_from_root(s: Subset, neighbours: Sequence[Subset], root_neighbours: Subset) -> Subset:
    reached = root_neighbours & s
    frontier = reached
    while frontier:
        grown = 0
        for v in bits(frontier):
            grown |= neighbours[v]
        grown &= s & ~reached
        reached |= grown
        frontier = grown
    return reached


def from_rooted_graph(g: RootedMultigraph) -> Megagreedoid:
    """
    The megagreedoid of a rooted graph

    Feasible sets are the S with S + root connected. The rank counts, with
    multiplicity, full edges having an endpoint in S and the other endpoint
    a non-root vertex, plus the half-edges anchored in S.
    """
    neighbours, root_neighbours = g.adjacency()
    index = g.ground.index
    inner_edges = [
        1 << index[u] | 1 << index[v] for u, v in g.full_edges if g.root not in (u, v)
    ]
    half_masks = [1 << index[anchor] for anchor in g.half_edges]
    ranks = {}
    for s in range(1 << len(g.ground)):
        if _reach_from_root(s, neighbours, root_neighbours) != s:
            continue
        count = sum(1 for edge in inner_edges if edge & s) + sum(1 for half in half_masks if half & s)
        ranks[s] = count
    return Megagreedoid(g.ground, ranks)


def _require_connected_part(g: RootedMultigraph, s: Subset) -> None:
    if s & ~g.ground.full_mask or not g.is_connected_with_root(s):
        raise InfeasibleSetError(
            f"{g.ground.format_set(s)} together with the root does not induce a connected subgraph", s
        )


def graph_restrict(g: RootedMultigraph, s: Subset) -> RootedMultigraph:
    """
    Restriction g|_S: the subgraph on S + root keeping every edge touching S

    An edge from S to a non-root vertex outside S becomes a half-edge at its
    S endpoint.
    """
    _require_connected_part(g, s)
    kept = set(g.ground.labels_of(s))
    inside = kept | {g.root}
    full, halves = [], []
    for u, v in g.full_edges:
        if u in inside and v in inside:
            full.append((u, v))
        elif u in kept and v != g.root:
            halves.append(u)
        elif v in kept and u != g.root:
            halves.append(v)
    halves.extend(anchor for anchor in g.half_edges if anchor in kept)
    ground = GroundSet(g.ground.labels_of(s))
    return RootedMultigraph(ground, g.root, full, halves)


def graph_contract(g: RootedMultigraph, s: Subset) -> RootedMultigraph:
    """
    Contraction g/S: collapse S + root into the root

    Edges from the remaining vertices into S + root are redirected to the
    root (parallel edges kept); edges inside S + root disappear.
    """
    _require_connected_part(g, s)
    collapsed = set(g.ground.labels_of(s)) | {g.root}
    full = []
    for u, v in g.full_edges:
        u_in, v_in = u in collapsed, v in collapsed
        if u_in and v_in:
            continue
        if u_in:
            full.append((g.root, v))
        elif v_in:
            full.append((u, g.root))
        else:
            full.append((u, v))
    halves = [anchor for anchor in g.half_edges if anchor not in collapsed]
    ground = GroundSet(g.ground.labels_of(g.ground.full_mask & ~s))
    return RootedMultigraph(ground, g.root, full, halves)


def graph_product(g: RootedMultigraph, h: RootedMultigraph) -> RootedMultigraph:
    """Union of two rooted graphs glued at the root (h's root is renamed to g's)"""
    shared = set(g.ground.elements) & set(h.ground.elements)
    if shared or g.root in h.ground.index or h.root in g.ground.index:
        raise LabelCollisionError(f"rooted graphs must share only the root; shared labels {sorted(shared)}")

    def rename(label: str) -> str:
        return g.root if label == h.root else label

    edges = list(g.full_edges) + [(rename(u), rename(v)) for u, v in h.full_edges]
    return RootedMultigraph(
        GroundSet(g.ground.elements + h.ground.elements),
        g.root,
        edges,
        list(g.half_edges) + list(h.half_edges),
    )


def with_universal_root(vertices: Sequence[str], edges: Iterable[tuple[str, str]], root: str = "r") -> RootedMultigraph:
    """Turn a plain graph into a rooted graph by adding a root adjacent to every vertex"""
    full = [(root, v) for v in vertices] + list(edges)
    return RootedMultigraph(GroundSet(vertices), root, full)


def has_universal_root(g: RootedMultigraph) -> bool:
    """The root is joined by a full edge to every vertex, as in with_universal_root"""
    joined = {v for edge in g.full_edges if g.root in edge for v in edge if v != g.root}
    return joined == set(g.ground.elements)


def is_star_graph(g: RootedMultigraph) -> bool:
    """Every full edge joins the root; half-edges are permitted"""
    return all(g.root in edge for edge in g.full_edges)


# ---------------------------------------------------------------------------
# Posets
# ---------------------------------------------------------------------------


class Poset:
    """A finite partial order given by generating relations, closed on ingestion"""

    def __init__(self, ground: GroundSet | Sequence[str], covers: Iterable[tuple[str, str]]):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        self.ground = ground
        digraph = nx.DiGraph()
        digraph.add_nodes_from(ground.elements)
        for lower, upper in covers:
            if lower not in ground.index or upper not in ground.index:
                raise MalformedInputError(f"relation {lower}<{upper} mentions an unknown element")
            if lower == upper:
                raise InvalidPosetError(f"relation {lower}<{upper} is reflexive")
            digraph.add_edge(lower, upper)
        if not nx.is_directed_acyclic_graph(digraph):
            cycle = nx.find_cycle(digraph)
            raise InvalidPosetError("cover relation has a cycle: " + " < ".join(u for u, _ in cycle))
        self._digraph = digraph
        index = ground.index
        # below[v] = mask of elements strictly below v
        self.below = [0] * len(ground)
        for label in ground.elements:
            for lower in nx.ancestors(digraph, label):
                self.below[index[label]] |= 1 << index[lower]

    def to_networkx(self) -> nx.DiGraph:
        return self._digraph.copy()

    def relations(self) -> list[tuple[str, str]]:
        """All strict relations x < y of the closure, in ground order"""
        elements = self.ground.elements
        return [
            (elements[x], elements[y])
            for y in range(len(elements))
            for x in bits(self.below[y])
        ]

    def covers(self) -> list[tuple[str, str]]:
        """Cover relations of the closure"""
        elements = self.ground.elements
        result = []
        for y in range(len(elements)):
            for x in bits(self.below[y]):
                between = self.below[y] & ~self.below[x] & ~(1 << x)
                if not any(self.below[z] >> x & 1 for z in bits(between)):
                    result.append((elements[x], elements[y]))
        return result

    def less_than(self, x: str, y: str) -> bool:
        return bool(self.below[self.ground.index[y]] >> self.ground.index[x] & 1)

    def is_lower_ideal(self, s: Subset) -> bool:
        return all(self.below[v] & ~s == 0 for v in bits(s))

    def linear_extensions(self) -> list[tuple[int, ...]]:
        """All linear extensions, as tuples of ground positions (via networkx)"""
        index = self.ground.index
        return sorted(tuple(index[label] for label in order) for order in nx.all_topological_sorts(self._digraph))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.ground == other.ground and self.below == other.below

    def __hash__(self) -> int:
        return hash((self.ground, tuple(self.below)))

    def __repr__(self) -> str:
        return f"Poset(order={list(self.ground.elements)}, covers={self.covers()})"


def from_poset(p: Poset) -> Megagreedoid:
    """Lower order ideals with cardinality rank"""
    ranks = {s: popcount(s) for s in range(1 << len(p.ground)) if p.is_lower_ideal(s)}
    return Megagreedoid(p.ground, ranks)


def _induced_poset(p: Poset, s: Subset) -> Poset:
    kept = set(p.ground.labels_of(s))
    relations = [(x, y) for x, y in p.relations() if x in kept and y in kept]
    return Poset(GroundSet(p.ground.labels_of(s)), relations)


def poset_restrict(p: Poset, s: Subset) -> Poset:
    """Induced subposet on a lower order ideal s"""
    if not p.is_lower_ideal(s):
        raise InfeasibleSetError(f"{p.ground.format_set(s)} is not a lower order ideal", s)
    return _induced_poset(p, s)


def poset_contract(p: Poset, s: Subset) -> Poset:
    """Induced subposet on the complement of a lower order ideal s"""
    if not p.is_lower_ideal(s):
        raise InfeasibleSetError(f"{p.ground.format_set(s)} is not a lower order ideal", s)
    return _induced_poset(p, p.ground.full_mask & ~s)


def poset_product(p: Poset, q: Poset) -> Poset:
    """Disjoint union of two posets"""
    shared = set(p.ground.elements) & set(q.ground.elements)
    if shared:
        raise LabelCollisionError(f"posets share labels {sorted(shared)}")
    return Poset(GroundSet(p.ground.elements + q.ground.elements), p.relations() + q.relations())


# ---------------------------------------------------------------------------
# Rank tables (greedoids and polymatroids)
# ---------------------------------------------------------------------------


class RankTable:
    """A rank function defined on every subset of the ground set"""

    def __init__(self, ground: GroundSet | Sequence[str], values: Mapping[Subset, object]):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        self.ground = ground
        size = 1 << len(ground)
        table = {}
        for mask, value in values.items():
            if mask < 0 or mask >= size:
                raise MalformedInputError(f"mask {mask:#x} uses bits outside the ground set")
            table[mask] = to_rational(value)
        missing = [mask for mask in range(size) if mask not in table]
        if missing:
            raise MalformedInputError(
                f"rank table is not total; missing {ground.format_set(missing[0])}"
                + (f" and {len(missing) - 1} more" if len(missing) > 1 else "")
            )
        shift = table[0]
        self.values = {mask: value - shift for mask, value in table.items()}

    @classmethod
    def from_labelled(cls, order: Sequence[str], entries: Iterable[tuple[Iterable[str], object]]) -> "RankTable":
        ground = GroundSet(order)
        values = {}
        for labels, value in entries:
            values[ground.mask_of(labels)] = value
        return cls(ground, values)

    @classmethod
    def from_function(cls, order: Sequence[str], function) -> "RankTable":
        """Tabulate function(frozenset_of_labels) over every subset"""
        ground = GroundSet(order)
        return cls(ground, {mask: function(frozenset(ground.labels_of(mask))) for mask in range(1 << len(ground))})

    def __call__(self, mask: Subset) -> Fraction:
        return self.values[mask]

    def __eq__(self, other) -> bool:
        return isinstance(other, RankTable) and self.ground == other.ground and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.ground, tuple(sorted(self.values.items()))))

    def __repr__(self) -> str:
        entries = ", ".join(f"{self.ground.format_set(m)}:{v}" for m, v in sorted(self.values.items()))
        return f"RankTable(order={list(self.ground.elements)}, values={{{entries}}})"


def greedoid_violations(t: RankTable) -> list[RankViolation]:
    """Check r(A) <= |A|, monotonicity and the local exchange axiom"""
    n = len(t.ground)
    found = []
    for a in range(1 << n):
        if t(a) > popcount(a):
            found.append(RankViolation("r(A) <= |A|", (a,)))
        if t(a) < 0:
            found.append(RankViolation("nonnegativity", (a,)))
        outside = [x for x in range(n) if not a >> x & 1]
        for x in outside:
            if t(a | 1 << x) < t(a):
                found.append(RankViolation("monotonicity", (a, a | 1 << x)))
        for i, x in enumerate(outside):
            for y in outside[i + 1:]:
                ax, ay, axy = a | 1 << x, a | 1 << y, a | 1 << x | 1 << y
                if t(a) == t(ax) == t(ay) and t(axy) != t(a):
                    found.append(RankViolation("local exchange", (a, axy), (x, y)))
    return found


def rank_feasible_sets(t: RankTable) -> list[Subset]:
    """S with r(S + X) <= r(S) + |X| for every X outside S (brute force)"""
    full = t.ground.full_mask
    result = []
    for s in range(full + 1):
        base = t(s)
        if all(t(s | x) <= base + popcount(x) for x in submasks(full & ~s)):
            result.append(s)
    return result


def from_greedoid(t: RankTable) -> Megagreedoid:
    """
    Megagreedoid of a greedoid: rank-feasible sets with the greedoid rank

    Raises:
        InvalidGreedoidError: the table fails a greedoid axiom
    """
    violations = greedoid_violations(t)
    if violations:
        raise InvalidGreedoidError(violations[0], t.ground)
    return Megagreedoid(t.ground, {s: t(s) for s in rank_feasible_sets(t)})


def polymatroid_violations(t: RankTable) -> list[RankViolation]:
    """Monotonicity and (local) submodularity; each witness is a pair (X, Y)"""
    n = len(t.ground)
    found = []
    for s in range(1 << n):
        outside = [x for x in range(n) if not s >> x & 1]
        for x in outside:
            if t(s | 1 << x) < t(s):
                found.append(RankViolation("monotonicity", (s, s | 1 << x)))
        for i, x in enumerate(outside):
            for y in outside[i + 1:]:
                sx, sy = s | 1 << x, s | 1 << y
                if t(sx) + t(sy) < t(sx | sy) + t(s):
                    found.append(RankViolation("submodularity", (sx, sy)))
    return found


def from_polymatroid(t: RankTable) -> Megagreedoid:
    """
    Megagreedoid of a polymatroid: the boolean family with rank t

    Raises:
        InvalidPolymatroidError: the table is not monotone and submodular
    """
    violations = polymatroid_violations(t)
    if violations:
        raise InvalidPolymatroidError(violations[0], t.ground)
    return Megagreedoid(t.ground, dict(t.values))


def rank_table_restrict(t: RankTable, s: Subset) -> RankTable:
    """r|_S on the subsets of s"""
    positions = list(bits(s))
    return RankTable(
        GroundSet(t.ground.labels_of(s)),
        {compress(mask, positions): value for mask, value in t.values.items() if mask & ~s == 0},
    )


def rank_table_contract(t: RankTable, s: Subset) -> RankTable:
    """r/S(X) = r(X + S) - r(S) on the subsets of the complement"""
    rest = t.ground.full_mask & ~s
    positions = list(bits(rest))
    base = t(s)
    return RankTable(
        GroundSet(t.ground.labels_of(rest)),
        {compress(mask, positions): t(mask | s) - base for mask in submasks(rest)},
    )


def rank_table_sum(t: RankTable, u: RankTable) -> RankTable:
    """Direct sum of rank tables on disjoint ground sets"""
    shared = set(t.ground.elements) & set(u.ground.elements)
    if shared:
        raise LabelCollisionError(f"rank tables share labels {sorted(shared)}")
    shift = len(t.ground)
    values = {x | y << shift: vx + vy for x, vx in t.values.items() for y, vy in u.values.items()}
    return RankTable(GroundSet(t.ground.elements + u.ground.elements), values)


def uniform_matroid(k: int, labels: Sequence[str]) -> RankTable:
    """Rank function of the uniform matroid U_{k,n}: min(|S|, k)"""
    return RankTable(GroundSet(labels), {mask: min(popcount(mask), k) for mask in range(1 << len(labels))})


def poset_greedoid(p: Poset) -> RankTable:
    """Greedoid rank of a poset: the largest lower ideal contained in S"""
    n = len(p.ground)
    ideal_sizes = {s: popcount(s) for s in range(1 << n) if p.is_lower_ideal(s)}
    values = {}
    for s in range(1 << n):
        values[s] = max(size for ideal, size in ideal_sizes.items() if ideal & ~s == 0)
    return RankTable(p.ground, values)


def coverage_polymatroid(labels: Sequence[str], cover: Mapping[str, Iterable]) -> RankTable:
    """Rank of S = size of the union of the item sets assigned to its elements"""
    ground = GroundSet(labels)
    items = [frozenset(cover.get(label, ())) for label in ground.elements]
    values = {}
    for mask in range(1 << len(ground)):
        union = frozenset().union(*(items[p] for p in bits(mask)))
        values[mask] = len(union)
    return RankTable(ground, values)


def branching_greedoid(root: str, edges: Mapping[str, tuple[str, str]]) -> RankTable:
    """
    Branching greedoid of a rooted graph

    The ground set is the edge labels; a set of edges is feasible when it
    forms a tree containing the root, and the rank of S is the size of the
    largest feasible set inside S.
    """
    ground = GroundSet(list(edges))

    def is_branching(mask: Subset) -> bool:
        graph = nx.MultiGraph()
        graph.add_node(root)
        graph.add_edges_from(edges[label] for label in ground.labels_of(mask))
        return nx.is_tree(graph)

    feasible = [mask for mask in range(1 << len(ground)) if is_branching(mask)]
    values = {
        mask: max(popcount(f) for f in feasible if f & ~mask == 0)
        for mask in range(1 << len(ground))
    }
    return RankTable(ground, values)
