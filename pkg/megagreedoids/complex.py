"""
The relative order complex of a megagreedoid and its shelling

Faces are chains of proper nonempty feasible sets. A chain belongs to Psi
when, padded with the empty set and I, every consecutive interval is boolean
with modular local rank. Facets of Psi are the prefix chains of feasible
permutations.

The greedy order on facets is tried first. It is not a shelling for every
ground order (a three-element poset with a < c, listed a, b, c, already
breaks it), so when it fails a backtracking search looks for another order.
Descent sets are the colours of the restriction faces of whichever order
is found, which keeps chi_F equal to the face expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from config import Config

from .core import (
    Megagreedoid,
    MegagreedoidError,
    PreconditionError,
    Subset,
    bits,
    feasible_permutations,
    format_permutation,
    greedy_sort_key,
    is_zeta_interval,
    popcount,
    prefix_masks,
)
from .qsym import QsymElement

ORDER_KINDS = ("greedy", "searched")


class ShellingError(MegagreedoidError):
    """A facet whose new faces do not have a unique minimal element"""

    def __init__(self, message: str, facet: "ChainFace", minimal_faces: Sequence["ChainFace"]):
        super().__init__(message)
        self.facet = facet
        self.minimal_faces = tuple(minimal_faces)


@dataclass(frozen=True, order=True)
class ChainFace:
    """A strictly increasing chain of proper nonempty feasible sets"""

    sets: tuple[Subset, ...] = ()

    def __len__(self) -> int:
        return len(self.sets)

    def is_subface_of(self, other: "ChainFace") -> bool:
        return set(self.sets) <= set(other.sets)

    def colours(self) -> tuple[int, ...]:
        """The balanced colouring rho(S) = |S| of each vertex"""
        return tuple(popcount(s) for s in self.sets)

    def describe(self, m: Megagreedoid) -> str:
        return "(" + ",".join(m.ground.format_set(s) for s in self.sets) + ")"


def validate_chain(m: Megagreedoid, c: ChainFace) -> None:
    previous = 0
    for s in c.sets:
        if s not in m.family or s in (0, m.full_mask):
            raise PreconditionError(f"{m.ground.format_set(s)} is not a proper nonempty feasible set")
        if s & previous != previous or s == previous:
            raise PreconditionError(f"chain {c.describe(m)} is not strictly increasing")
        previous = s


def in_psi(m: Megagreedoid, c: ChainFace) -> bool:
    """Padded with the empty set and I, every interval is boolean and modular"""
    validate_chain(m, c)
    if m.full_mask == 0:
        return True
    padded = (0,) + c.sets + (m.full_mask,)
    return all(is_zeta_interval(m, lower, upper) for lower, upper in zip(padded, padded[1:]))


def facet_of(perm: Sequence[int]) -> ChainFace:
    return ChainFace(tuple(prefix_masks(perm)[1:-1]))


def permutation_of(m: Megagreedoid, facet: ChainFace) -> tuple[int, ...]:
    """Recover the feasible permutation whose prefix chain is the facet"""
    padded = (0,) + facet.sets + (m.full_mask,)
    steps = [upper & ~lower for lower, upper in zip(padded, padded[1:])]
    if m.full_mask and any(popcount(step) != 1 for step in steps):
        raise PreconditionError(f"{facet.describe(m)} is not a maximal chain")
    return tuple(next(bits(step)) for step in steps if step)


def facets(m: Megagreedoid) -> list[ChainFace]:
    """Facets of Psi, one per feasible permutation, in the greedy order"""
    result = [facet_of(perm) for perm in feasible_permutations(m)]
    if len(set(result)) != len(result):
        raise MegagreedoidError("facets are not in bijection with feasible permutations")
    return result


def greedy_compare(m: Megagreedoid, c1: ChainFace, c2: ChainFace) -> int:
    """
    -1, 0 or 1 as c1 comes before, equals, or comes after c2 in the greedy order

    At the first position where the permutations differ, the chain with the
    smaller prefix rank wins; on equal rank the earlier element in the ground
    order wins.
    """
    first, second = greedy_sort_key(m, permutation_of(m, c1)), greedy_sort_key(m, permutation_of(m, c2))
    return (first > second) - (first < second)


@dataclass(frozen=True)
class FacetOrder:
    """Feasible permutations listed in a shelling order of Psi"""

    kind: str
    permutations: tuple[tuple[int, ...], ...]
    rank_of: Mapping[tuple[int, ...], int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, kind: str, permutations: Sequence[tuple[int, ...]]) -> "FacetOrder":
        ordered = tuple(permutations)
        return cls(kind, ordered, {perm: i for i, perm in enumerate(ordered)})

    def precedes(self, first: Sequence[int], second: Sequence[int]) -> bool:
        """first comes before second; permutations outside the order never precede"""
        first, second = tuple(first), tuple(second)
        if first not in self.rank_of:
            return False
        return self.rank_of[first] < self.rank_of[second]


def adjacent_swap(sigma: Sequence[int], i: int) -> tuple[int, ...]:
    """sigma with the entries at 1-based positions i and i + 1 exchanged"""
    swapped = list(sigma)
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    return tuple(swapped)


def window_is_zeta(m: Megagreedoid, sigma: Sequence[int], i: int, prefixes: Sequence[Subset] | None = None) -> bool:
    """
    [P_{i-1}, P_{i+1}] is boolean and modular

    Exactly when this fails, the chain of sigma with P_i removed leaves Psi.
    """
    prefixes = prefixes or prefix_masks(sigma)
    swapped = prefixes[i - 1] | 1 << sigma[i]
    if swapped not in m.family:
        return False
    return m.rank(prefixes[i]) + m.rank(swapped) == m.rank(prefixes[i - 1]) + m.rank(prefixes[i + 1])


def _restriction_positions(m: Megagreedoid, sigma: tuple[int, ...], prefixes: Sequence[Subset], earlier) -> list[int]:
    return [
        i for i in range(1, m.size)
        if not window_is_zeta(m, sigma, i, prefixes) or earlier(adjacent_swap(sigma, i))
    ]


def _blocks_are_zeta(m: Megagreedoid, prefixes: Sequence[Subset], positions: Sequence[int]) -> bool:
    cuts = [0, *positions, m.size]
    return all(is_zeta_interval(m, prefixes[a], prefixes[b]) for a, b in zip(cuts, cuts[1:]))


def _greedy_is_shelling(m: Megagreedoid, permutations: Sequence[tuple[int, ...]]) -> bool:
    # In the greedy order the earliest facet through a face of Psi sorts
    # every block, so only membership of the candidate restriction face
    # needs checking.
    for sigma in permutations:
        key = greedy_sort_key(m, sigma)
        prefixes = prefix_masks(sigma)
        positions = _restriction_positions(m, sigma, prefixes, lambda swapped: greedy_sort_key(m, swapped) < key)
        if not _blocks_are_zeta(m, prefixes, positions):
            return False
    return True


def _search_shelling(m: Megagreedoid, permutations: Sequence[tuple[int, ...]], budget: int) -> list | None:
    """
    Depth-first search for a shelling order

    A facet may come next when the face cut at its restriction positions lies
    in Psi and in no facet already placed. Candidates are tried in the greedy
    order. Returns None when the search fails or exceeds the node budget.
    """
    total = len(permutations)
    order: list[tuple[int, ...]] = []
    placed: set[tuple[int, ...]] = set()
    chains: list[frozenset] = []
    cursors = [0]
    visited = 0
    while cursors:
        if len(order) == total:
            return order
        for j in range(cursors[-1], total):
            sigma = permutations[j]
            if sigma in placed:
                continue
            visited += 1
            if visited > budget:
                return None
            prefixes = prefix_masks(sigma)
            positions = _restriction_positions(m, sigma, prefixes, placed.__contains__)
            if not _blocks_are_zeta(m, prefixes, positions):
                continue
            face = {prefixes[i] for i in positions}
            if any(face <= chain for chain in chains):
                continue
            cursors[-1] = j + 1
            order.append(sigma)
            placed.add(sigma)
            chains.append(frozenset(prefixes))
            cursors.append(0)
            break
        else:
            cursors.pop()
            if order:
                placed.discard(order.pop())
                chains.pop()
    return None


@lru_cache(maxsize=1024)
def shelling_order(m: Megagreedoid) -> FacetOrder:
    """
    A shelling order of the facets of Psi

    The greedy order when it is a shelling, otherwise the first order the
    backtracking search finds.

    Raises:
        ShellingError: neither the greedy order nor the search produced a shelling
    """
    permutations = feasible_permutations(m)
    if _greedy_is_shelling(m, permutations):
        return FacetOrder.build("greedy", permutations)
    found = _search_shelling(m, permutations, Config.SHELLING_SEARCH_BUDGET)
    if found is None:
        raise ShellingError(
            f"no shelling order found for {m.ground.format_set(m.full_mask)} "
            f"within {Config.SHELLING_SEARCH_BUDGET} search steps",
            ChainFace(),
            [],
        )
    return FacetOrder.build("searched", found)


@dataclass(frozen=True)
class ShellingStep:
    permutation: tuple[int, ...]
    facet: ChainFace
    restriction_face: ChainFace
    new_faces: int

    @property
    def descent_set(self) -> tuple[int, ...]:
        return self.restriction_face.colours()


@dataclass(frozen=True)
class ShellingCertificate:
    """Facets in shelling order, each with its restriction face R(F_i)"""

    degree: int
    steps: tuple[ShellingStep, ...] = field(default_factory=tuple)
    order: str = "greedy"

    @property
    def facets(self) -> list[ChainFace]:
        return [step.facet for step in self.steps]

    def to_dict(self, m: Megagreedoid) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "facets": [
                {
                    "permutation": format_permutation(m.ground, step.permutation),
                    "descent_set": list(step.descent_set),
                    "restriction_face": [m.ground.labels_of(s) for s in step.restriction_face.sets],
                    "new_faces": step.new_faces,
                }
                for step in self.steps
            ],
        }


def _subfaces(facet: ChainFace):
    for size in range(len(facet.sets) + 1):
        for chosen in combinations(facet.sets, size):
            yield ChainFace(chosen)


def verify_shelling(m: Megagreedoid) -> ShellingCertificate:
    """
    Check that shelling_order(m) is a shelling of (Sigma, Gamma)

    The order is rechecked face by face: for each facet in order, the faces
    in Psi that no earlier facet contains must have a unique minimal element;
    that element is recorded as R(F_i).

    Raises:
        ShellingError: some facet has zero or several minimal new faces
    """
    order = shelling_order(m)
    ordered = [facet_of(perm) for perm in order.permutations]
    earlier: list[frozenset] = []
    psi_cache: dict[ChainFace, bool] = {}
    steps = []
    for facet in ordered:
        new_faces = []
        for face in _subfaces(facet):
            if any(set(face.sets) <= previous for previous in earlier):
                continue
            if face not in psi_cache:
                psi_cache[face] = in_psi(m, face)
            if psi_cache[face]:
                new_faces.append(face)
        minimal = [
            face for face in new_faces
            if not any(other != face and other.is_subface_of(face) for other in new_faces)
        ]
        if len(minimal) != 1:
            raise ShellingError(
                f"facet {facet.describe(m)} has {len(minimal)} minimal new faces: "
                + ", ".join(face.describe(m) for face in minimal),
                facet,
                minimal,
            )
        steps.append(ShellingStep(permutation_of(m, facet), facet, minimal[0], len(new_faces)))
        earlier.append(frozenset(facet.sets))
    return ShellingCertificate(m.size, tuple(steps), order.kind)


def psi_chains(m: Megagreedoid) -> list[ChainFace]:
    """Every chain of proper nonempty feasible sets that lies in Psi"""
    proper = [s for s in m.sorted_family() if s not in (0, m.full_mask)]
    found = []

    def extend(chain: tuple[Subset, ...]) -> None:
        face = ChainFace(chain)
        if in_psi(m, face):
            found.append(face)
        last = chain[-1] if chain else 0
        for s in proper:
            if s != last and s & last == last:
                extend(chain + (s,))

    extend(())
    return found


def face_qsym(m: Megagreedoid) -> QsymElement:
    """Sum of M_{rho(c), |I|} over the chains c in Psi"""
    terms: dict = {}
    for face in psi_chains(m):
        key = (face.colours(), m.size)
        terms[key] = terms.get(key, 0) + 1
    return QsymElement("M", terms)


def shelling_qsym(cert: ShellingCertificate) -> QsymElement:
    """Sum of F_{rho(R(F_i)), n} over the certificate's facets"""
    terms: dict = {}
    for step in cert.steps:
        key = (step.descent_set, cert.degree)
        terms[key] = terms.get(key, 0) + 1
    return QsymElement("F", terms)
