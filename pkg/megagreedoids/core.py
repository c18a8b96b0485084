"""
Core data model for megagreedoids

A megagreedoid on a ground set I is a family A of subsets of I together with
an exact rational rank function on A. Subsets are stored as integer bitmasks
over the positions of a fixed, ordered ground set; that order is the
tie-breaking order used by descents and by the greedy comparator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from config import Config

# Subsets are bitmasks over ground-set positions.
Subset = int
Rational = Fraction

# Hard engineering bound: every subset must fit in a 16-bit mask.
HARD_GROUND_LIMIT = 16


class MegagreedoidError(Exception):
    """Base class for every error raised by the megagreedoid toolkit"""


class MalformedInputError(MegagreedoidError):
    """Input is structurally broken (missing ranks, stray bits, bad labels)"""


class InfeasibleSetError(MegagreedoidError):
    """A minor was requested for a set outside the feasible family"""

    def __init__(self, message: str, mask: Subset):
        super().__init__(message)
        self.mask = mask


class LabelCollisionError(MegagreedoidError):
    """Direct sum of two megagreedoids whose ground sets share labels"""


class GroundSetTooLargeError(MegagreedoidError):
    """Ground set exceeds the configured size bound"""


class PreconditionError(MegagreedoidError):
    """An operation was called outside its documented precondition"""


class AxiomViolationError(MegagreedoidError):
    """Raised when a candidate fails the megagreedoid axioms at ingestion"""

    def __init__(self, report: "AxiomReport", ground: "GroundSet"):
        self.report = report
        self.ground = ground
        lines = [v.describe(ground) for v in report.violations[:5]]
        more = len(report.violations) - len(lines)
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("megagreedoid axioms violated: " + "; ".join(lines))


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and 'p/q' strings to an exact Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInputError(f"rank values must be exact, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational number: {value!r}") from exc
    raise MalformedInputError(f"unsupported rank value {value!r}")


def popcount(mask: Subset) -> int:
    return bin(mask).count("1")


def bits(mask: Subset) -> Iterator[int]:
    """Yield the positions set in mask, in increasing order"""
    position = 0
    while mask:
        if mask & 1:
            yield position
        mask >>= 1
        position += 1


def submasks(mask: Subset) -> Iterator[Subset]:
    """Yield every submask of mask (including 0 and mask itself)"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def compress(mask: Subset, positions: Sequence[int]) -> Subset:
    """Re-index mask onto the sub-ground given by positions (in order)"""
    out = 0
    for new_position, old_position in enumerate(positions):
        if mask >> old_position & 1:
            out |= 1 << new_position
    return out


def expand(mask: Subset, positions: Sequence[int]) -> Subset:
    """Inverse of compress: lift a sub-ground mask back to the ambient ground"""
    out = 0
    for new_position in bits(mask):
        out |= 1 << positions[new_position]
    return out


class GroundSet:
    """An ordered list of distinct string labels"""

    __slots__ = ("elements", "index")

    def __init__(self, elements: Iterable[str]):
        elements = tuple(elements)
        limit = min(Config.MAX_GROUND_SIZE, HARD_GROUND_LIMIT)
        if len(elements) > limit:
            raise GroundSetTooLargeError(
                f"ground set has {len(elements)} elements; the bound is {limit}"
            )
        for label in elements:
            if not isinstance(label, str) or not label:
                raise MalformedInputError(f"ground labels must be nonempty strings, got {label!r}")
        if len(set(elements)) != len(elements):
            raise MalformedInputError(f"duplicate ground labels in {list(elements)}")
        self.elements = elements
        self.index = {label: position for position, label in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.elements)})"

    @property
    def full_mask(self) -> Subset:
        return (1 << len(self.elements)) - 1

    def mask_of(self, labels: Iterable[str]) -> Subset:
        mask = 0
        for label in labels:
            if label not in self.index:
                raise MalformedInputError(f"unknown label {label!r}; ground set is {list(self.elements)}")
            mask |= 1 << self.index[label]
        return mask

    def labels_of(self, mask: Subset) -> list[str]:
        return [self.elements[position] for position in bits(mask)]

    def format_set(self, mask: Subset) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"

    def positions_of(self, mask: Subset) -> list[int]:
        return list(bits(mask))


@dataclass(frozen=True)
class AxiomViolation:
    """One failed axiom instance with its witnessing sets"""

    axiom: str
    sets: tuple[Subset, ...]
    element: int | None = None
    detail: str = ""

    def describe(self, ground: GroundSet) -> str:
        names = ", ".join(ground.format_set(s) for s in self.sets)
        text = f"axiom ({self.axiom}) fails at ({names})"
        if self.element is not None:
            text += f" with z={ground.elements[self.element]}"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass
class AxiomReport:
    """Outcome of check_axioms: pass, or the list of violations"""

    violations: list[AxiomViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def describe(self, ground: GroundSet) -> list[str]:
        return [violation.describe(ground) for violation in self.violations]


def check_axioms(ground: GroundSet, family: Iterable[Subset], ranks: Mapping[Subset, object]) -> AxiomReport:
    """
    Check a candidate (ground, family, rank) against the megagreedoid axioms

    Args:
        ground: the ordered ground set I
        family: the candidate family A, as bitmasks
        ranks: rank values; must be defined on every member of family

    Returns:
        AxiomReport listing every violation with its witnesses

    Raises:
        MalformedInputError: a mask has stray bits or a family member has no rank
    """
    full = ground.full_mask
    members = set(family)
    rank: dict[Subset, Fraction] = {}
    for mask in members:
        if mask & ~full or mask < 0:
            raise MalformedInputError(f"mask {mask:#x} uses bits outside the ground set")
        if mask not in ranks:
            raise MalformedInputError(f"rank missing on family member {ground.format_set(mask)}")
        rank[mask] = to_rational(ranks[mask])

    report = AxiomReport()
    if 0 not in members:
        report.violations.append(AxiomViolation("1", (0,), detail="the empty set must be feasible"))
    if full not in members:
        report.violations.append(AxiomViolation("1", (full,), detail="the ground set must be feasible"))
    if 0 in members and rank[0] != 0:
        report.violations.append(AxiomViolation("normalization", (0,), detail=f"rank of the empty set is {rank[0]}"))

    n = len(ground)
    for mask in sorted(members):
        if mask and not any(mask & ~(1 << x) in members for x in bits(mask)):
            report.violations.append(AxiomViolation("1", (mask,), detail="no element can be removed"))
        if mask != full and not any(mask | (1 << y) in members for y in range(n) if not mask >> y & 1):
            report.violations.append(AxiomViolation("1", (mask,), detail="no element can be added"))

    for y_mask in sorted(members):
        outside = [z for z in range(n) if not y_mask >> z & 1 and (y_mask | 1 << z) in members]
        if not outside:
            continue
        for x_mask in submasks(y_mask):
            if x_mask == y_mask or x_mask not in members:
                continue
            for z in outside:
                xz = x_mask | 1 << z
                if xz not in members:
                    continue
                yz = y_mask | 1 << z
                if rank[yz] - rank[y_mask] > rank[xz] - rank[x_mask]:
                    report.violations.append(
                        AxiomViolation(
                            "2",
                            (x_mask, y_mask),
                            element=z,
                            detail=f"{rank[yz] - rank[y_mask]} > {rank[xz] - rank[x_mask]}",
                        )
                    )
    return report


class Megagreedoid:
    """An immutable megagreedoid: ordered ground set, feasible family, exact ranks"""

    __slots__ = ("ground", "_rank", "_family", "_key")

    def __init__(self, ground: GroundSet, ranks: Mapping[Subset, object], validate: bool = True):
        """
        Build a megagreedoid, normalizing rank(empty) to zero

        Args:
            ground: the ordered ground set
            ranks: map from every feasible set (bitmask) to its rank
            validate: run check_axioms and raise AxiomViolationError on failure
        """
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        self.ground = ground
        rank = {}
        full = ground.full_mask
        for mask, value in ranks.items():
            if mask < 0 or mask & ~full:
                raise MalformedInputError(f"mask {mask:#x} uses bits outside the ground set")
            rank[mask] = to_rational(value)
        shift = rank.get(0, Fraction(0))
        if shift:
            rank = {mask: value - shift for mask, value in rank.items()}
        if validate:
            report = check_axioms(ground, rank.keys(), rank)
            if not report.passed:
                raise AxiomViolationError(report, ground)
        self._rank = rank
        self._family = frozenset(rank)
        self._key = None

    @classmethod
    def empty(cls) -> "Megagreedoid":
        return cls(GroundSet(()), {0: 0}, validate=False)

    @classmethod
    def from_labelled(cls, order: Sequence[str], sets: Iterable[tuple[Iterable[str], object]]) -> "Megagreedoid":
        """Build from (label collection, rank) pairs over the given order"""
        ground = GroundSet(order)
        ranks = {}
        for labels, value in sets:
            mask = ground.mask_of(labels)
            if mask in ranks:
                raise MalformedInputError(f"set {ground.format_set(mask)} listed twice")
            ranks[mask] = value
        return cls(ground, ranks)

    @property
    def family(self) -> frozenset:
        return self._family

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> Subset:
        return self.ground.full_mask

    def is_feasible(self, mask: Subset) -> bool:
        return mask in self._family

    def rank(self, mask: Subset) -> Fraction:
        try:
            return self._rank[mask]
        except KeyError:
            raise InfeasibleSetError(
                f"{self.ground.format_set(mask)} is not feasible", mask
            ) from None

    def ranks(self) -> dict[Subset, Fraction]:
        return dict(self._rank)

    def mask(self, labels: Iterable[str]) -> Subset:
        return self.ground.mask_of(labels)

    def sorted_family(self) -> list[Subset]:
        return sorted(self._family)

    def is_boolean(self) -> bool:
        return len(self._family) == 1 << self.size

    def restrict(self, mask: Subset) -> "Megagreedoid":
        return restrict(self, mask)

    def contract(self, mask: Subset) -> "Megagreedoid":
        return contract(self, mask)

    def direct_sum(self, other: "Megagreedoid") -> "Megagreedoid":
        return direct_sum(self, other)

    def relabel(self, mapping: Mapping[str, str]) -> "Megagreedoid":
        """Rename ground labels, keeping positions (and so the order) fixed"""
        ground = GroundSet(mapping.get(label, label) for label in self.ground.elements)
        return Megagreedoid(ground, self._rank, validate=False)

    def reorder(self, order: Sequence[str]) -> "Megagreedoid":
        """Same megagreedoid over a permuted ground order"""
        if sorted(order) != sorted(self.ground.elements):
            raise MalformedInputError(f"{list(order)} is not a reordering of {list(self.ground.elements)}")
        positions = [self.ground.index[label] for label in order]
        ranks = {compress(mask, positions): value for mask, value in self._rank.items()}
        return Megagreedoid(GroundSet(order), ranks, validate=False)

    def canonical(self) -> "Megagreedoid":
        """Canonical form: labels sorted, family re-indexed accordingly"""
        return self.reorder(sorted(self.ground.elements))

    def canonical_key(self) -> tuple:
        """Hashable encoding of the canonical form, used by formal sums"""
        if self._key is None:
            labels = tuple(sorted(self.ground.elements))
            positions = [self.ground.index[label] for label in labels]
            items = sorted((compress(mask, positions), value) for mask, value in self._rank.items())
            self._key = (labels, tuple(items))
        return self._key

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Megagreedoid)
            and self.ground == other.ground
            and self._rank == other._rank
        )

    def __hash__(self) -> int:
        return hash((self.ground, frozenset(self._rank.items())))

    def __repr__(self) -> str:
        sets = ", ".join(
            f"{self.ground.format_set(mask)}:{value}" for mask, value in sorted(self._rank.items())
        )
        return f"Megagreedoid(order={list(self.ground.elements)}, ranks={{{sets}}})"


def _require_feasible(m: Megagreedoid, mask: Subset, what: str) -> None:
    if mask not in m.family:
        raise InfeasibleSetError(
            f"cannot {what} {m.ground.format_set(mask)}: not a feasible set", mask
        )


def restrict(m: Megagreedoid, s: Subset) -> Megagreedoid:
    """
    Restriction M|_S: feasible sets inside S, ranks unchanged

    The ground set is re-indexed to the elements of S in their original order.
    """
    _require_feasible(m, s, "restrict to")
    positions = list(bits(s))
    ground = GroundSet(m.ground.elements[p] for p in positions)
    ranks = {compress(mask, positions): value for mask, value in m.ranks().items() if mask & ~s == 0}
    return Megagreedoid(ground, ranks, validate=False)


def contract(m: Megagreedoid, s: Subset) -> Megagreedoid:
    """
    Contraction M/S: sets X outside S with X+S feasible, rank r(X+S) - r(S)
    """
    _require_feasible(m, s, "contract")
    rest = m.full_mask & ~s
    positions = list(bits(rest))
    ground = GroundSet(m.ground.elements[p] for p in positions)
    base = m.rank(s)
    ranks = {
        compress(mask & rest, positions): value - base
        for mask, value in m.ranks().items()
        if mask & s == s
    }
    return Megagreedoid(ground, ranks, validate=False)


def direct_sum(m: Megagreedoid, n: Megagreedoid) -> Megagreedoid:
    """
    Direct sum M.N on the disjoint union of the ground sets

    The combined order is m's order followed by n's order.

    Raises:
        LabelCollisionError: the two ground sets share a label
    """
    shared = set(m.ground.elements) & set(n.ground.elements)
    if shared:
        raise LabelCollisionError(f"direct sum needs disjoint ground sets; shared labels {sorted(shared)}")
    ground = GroundSet(m.ground.elements + n.ground.elements)
    shift = m.size
    ranks = {}
    for x, rx in m.ranks().items():
        for y, ry in n.ranks().items():
            ranks[x | y << shift] = rx + ry
    return Megagreedoid(ground, ranks, validate=False)


def is_boolean_interval(m: Megagreedoid, x: Subset, y: Subset) -> bool:
    """True iff every Z with x <= Z <= y is feasible"""
    if x & ~y:
        raise PreconditionError(f"{m.ground.format_set(x)} is not a subset of {m.ground.format_set(y)}")
    if x not in m.family or y not in m.family:
        raise PreconditionError("interval endpoints must be feasible")
    return all(x | z in m.family for z in submasks(y & ~x))


def is_modular_on_interval(m: Megagreedoid, x: Subset, y: Subset) -> bool:
    """
    True iff the local rank on the boolean interval [x, y] is additive

    rank(x+T) - rank(x) must equal the sum of the single-element increments
    for every T inside y - x.
    """
    if not is_boolean_interval(m, x, y):
        raise PreconditionError(
            f"[{m.ground.format_set(x)}, {m.ground.format_set(y)}] is not a boolean interval"
        )
    base = m.rank(x)
    gap = y & ~x
    increments = {t: m.rank(x | 1 << t) - base for t in bits(gap)}
    for t_mask in submasks(gap):
        if m.rank(x | t_mask) - base != sum((increments[t] for t in bits(t_mask)), Fraction(0)):
            return False
    return True


def is_zeta_interval(m: Megagreedoid, lower: Subset, upper: Subset) -> bool:
    """[lower, upper] is boolean and the local rank on it is modular"""
    return is_boolean_interval(m, lower, upper) and is_modular_on_interval(m, lower, upper)


def is_modular_four_point(m: Megagreedoid, x: Subset, y: Subset) -> bool:
    """Modular law rank(Z)+rank(W) = rank(Z|W)+rank(Z&W) on a boolean interval"""
    if not is_boolean_interval(m, x, y):
        raise PreconditionError("four-point modularity needs a boolean interval")
    gap = y & ~x
    inner = list(submasks(gap))
    for z in inner:
        for w in inner:
            if m.rank(x | z) + m.rank(x | w) != m.rank(x | z | w) + m.rank(x | (z & w)):
                return False
    return True


def prefix_masks(perm: Sequence[int]) -> list[Subset]:
    """Prefix sets P_0 = empty, P_1, ..., P_n of a permutation of positions"""
    masks = [0]
    for position in perm:
        masks.append(masks[-1] | 1 << position)
    return masks


def greedy_sort_key(m: Megagreedoid, perm: Sequence[int]) -> tuple:
    """
    Sort key realizing the greedy order on feasible permutations

    Comparing these keys lexicographically is the same as locating the first
    differing position and comparing (rank of prefix, ground position) there.
    """
    prefixes = prefix_masks(perm)
    return tuple((m.rank(prefixes[i + 1]), perm[i]) for i in range(len(perm)))


def feasible_permutations(m: Megagreedoid) -> list[tuple[int, ...]]:
    """
    All A-feasible permutations, as tuples of ground positions

    Enumerated by depth-first search with prefix pruning and returned in the
    greedy order.
    """
    n = m.size
    found: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(mask: Subset) -> None:
        if len(prefix) == n:
            found.append(tuple(prefix))
            return
        for position in range(n):
            if mask >> position & 1:
                continue
            grown = mask | 1 << position
            if grown in m.family:
                prefix.append(position)
                extend(grown)
                prefix.pop()

    extend(0)
    found.sort(key=lambda perm: greedy_sort_key(m, perm))
    return found


def format_permutation(ground: GroundSet, perm: Sequence[int]) -> str:
    """Render a permutation by concatenating labels (comma-separated if any label is long)"""
    labels = [ground.elements[p] for p in perm]
    separator = "" if all(len(label) == 1 for label in labels) else ","
    return separator.join(labels)


def parse_permutation(ground: GroundSet, text: str) -> tuple[int, ...]:
    """Inverse of format_permutation"""
    if "," in text:
        labels = [part.strip() for part in text.split(",") if part.strip()]
    else:
        labels = list(text.strip())
    if sorted(labels) != sorted(ground.elements):
        raise MalformedInputError(f"{text!r} is not a permutation of {list(ground.elements)}")
    return tuple(ground.index[label] for label in labels)
