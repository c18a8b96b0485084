"""
The Hopf monoid of megagreedoids

Formal sums of megagreedoids (identified through their canonical form),
the direct-sum product, the restriction/contraction coproduct, the antipode
(recursive and chain-expanded), characters, and an axiom verifier whose
product map can be swapped out for mutation testing.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from config import Config

from .constructions import Poset, RootedMultigraph, graph_contract, graph_restrict, is_star_graph
from .core import (
    GroundSet,
    InfeasibleSetError,
    MalformedInputError,
    Megagreedoid,
    Subset,
    bits,
    compress,
    contract,
    direct_sum,
    is_modular_on_interval,
    popcount,
    restrict,
    submasks,
    to_rational,
)
from .qsym import QsymElement

Product = Callable[[Megagreedoid, Megagreedoid], Megagreedoid]


def from_canonical_key(key: tuple) -> Megagreedoid:
    labels, items = key
    return Megagreedoid(GroundSet(labels), dict(items), validate=False)


def describe_key(key: tuple) -> str:
    labels, items = key
    ground = GroundSet(labels)
    sets = ", ".join(f"{ground.format_set(mask)}:{value}" for mask, value in items)
    return f"MG[{','.join(labels)}]({sets})"


class FormalSum:
    """A rational combination of megagreedoids on one ground set"""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        cleaned: dict[tuple, Fraction] = {}
        grounds = set()
        for key, coefficient in (terms or {}).items():
            value = cleaned.get(key, Fraction(0)) + to_rational(coefficient)
            grounds.add(key[0])
            if value:
                cleaned[key] = value
            else:
                cleaned.pop(key, None)
        if len({tuple(sorted(labels)) for labels in grounds}) > 1:
            raise MalformedInputError("formal sum mixes megagreedoids on different ground sets")
        self.terms = cleaned

    @classmethod
    def of(cls, m: Megagreedoid, coefficient=1) -> "FormalSum":
        return cls({m.canonical_key(): coefficient})

    @classmethod
    def combination(cls, pairs: Iterable[tuple[Megagreedoid, object]]) -> "FormalSum":
        terms: Counter = Counter()
        for m, coefficient in pairs:
            terms[m.canonical_key()] += to_rational(coefficient)
        return cls(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Megagreedoid) -> Fraction:
        return self.terms.get(m.canonical_key(), Fraction(0))

    def items(self) -> list[tuple[Megagreedoid, Fraction]]:
        return [(from_canonical_key(key), value) for key, value in sorted(self.terms.items())]

    def __add__(self, other: "FormalSum") -> "FormalSum":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
        return FormalSum(terms)

    def __neg__(self) -> "FormalSum":
        return FormalSum({key: -value for key, value in self.terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, factor) -> "FormalSum":
        factor = to_rational(factor)
        return FormalSum({key: value * factor for key, value in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"FormalSum({self.render()})"

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{value}*{describe_key(key)}" for key, value in sorted(self.terms.items()))


class TensorSum:
    """A rational combination of pairs (restriction, contraction)"""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[tuple, tuple], object] | None = None):
        cleaned: dict = {}
        for key, coefficient in (terms or {}).items():
            value = cleaned.get(key, Fraction(0)) + to_rational(coefficient)
            if value:
                cleaned[key] = value
            else:
                cleaned.pop(key, None)
        self.terms = cleaned

    @classmethod
    def pair(cls, left: Megagreedoid, right: Megagreedoid, coefficient=1) -> "TensorSum":
        return cls({(left.canonical_key(), right.canonical_key()): coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Megagreedoid, Megagreedoid, Fraction]]:
        return [
            (from_canonical_key(left), from_canonical_key(right), value)
            for (left, right), value in sorted(self.terms.items())
        ]

    def __add__(self, other: "TensorSum") -> "TensorSum":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
        return TensorSum(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{value}*{describe_key(left)} (x) {describe_key(right)}"
            for (left, right), value in sorted(self.terms.items())
        )


def product(a: FormalSum, b: FormalSum, multiply: Product = direct_sum) -> FormalSum:
    """Bilinear extension of the direct sum"""
    terms: Counter = Counter()
    for x, cx in a.items():
        for y, cy in b.items():
            terms[multiply(x, y).canonical_key()] += cx * cy
    return FormalSum(terms)


def coproduct_pair(m: Megagreedoid, s: Subset) -> tuple[Megagreedoid, Megagreedoid] | None:
    """(m|s, m/s), or None when s is infeasible"""
    if s not in m.family:
        return None
    return restrict(m, s), contract(m, s)


def coproduct(m: Megagreedoid, s: Subset) -> TensorSum:
    """m|s (x) m/s when s is feasible, and the zero tensor otherwise"""
    pair = coproduct_pair(m, s)
    if pair is None:
        return TensorSum()
    return TensorSum.pair(*pair)


def coproduct_linear(x: FormalSum, labels: Iterable[str]) -> TensorSum:
    """Coproduct of a formal sum at the subset with the given labels"""
    labels = list(labels)
    total = TensorSum()
    for m, coefficient in x.items():
        pair = coproduct_pair(m, m.mask(labels))
        if pair is not None:
            total = total + TensorSum.pair(pair[0], pair[1], coefficient)
    return total


@lru_cache(maxsize=None)
def _antipode_terms(key: tuple) -> tuple[tuple[tuple, Fraction], ...]:
    m = from_canonical_key(key)
    if m.size == 0:
        return ((key, Fraction(1)),)
    total: Counter = Counter()
    for j in m.sorted_family():
        if j == m.full_mask:
            continue
        right = contract(m, j)
        for left_key, coefficient in _antipode_terms(restrict(m, j).canonical_key()):
            total[direct_sum(from_canonical_key(left_key), right).canonical_key()] -= coefficient
    return tuple((k, v) for k, v in sorted(total.items()) if v)


def antipode(m: Megagreedoid) -> FormalSum:
    """
    s(m) = - sum over feasible J strictly inside I of s(m|J) . m/J

    Memoized on canonical forms; the empty megagreedoid is its own antipode.
    """
    return FormalSum(dict(_antipode_terms(m.canonical_key())))


def clear_antipode_cache() -> None:
    _antipode_terms.cache_clear()


def feasible_chains(m: Megagreedoid) -> list[tuple[Subset, ...]]:
    """Strict chains of feasible sets from the empty set to I (both included)"""
    full = m.full_mask
    members = m.sorted_family()
    found = []

    def extend(chain: tuple[Subset, ...]) -> None:
        last = chain[-1]
        if last == full:
            found.append(chain)
            return
        for s in members:
            if s != last and s & last == last:
                extend(chain + (s,))

    extend((0,))
    return found


def chain_minor(m: Megagreedoid, lower: Subset, upper: Subset) -> Megagreedoid:
    """The minor m|upper / lower"""
    restricted = restrict(m, upper)
    return contract(restricted, compress(lower, list(bits(upper))))


def antipode_takeuchi(m: Megagreedoid) -> FormalSum:
    """Sum over feasible chains of (-1)^k times the product of the chain's minors"""
    terms: Counter = Counter()
    for chain in feasible_chains(m):
        pieces = [chain_minor(m, lower, upper) for lower, upper in zip(chain, chain[1:])]
        combined = Megagreedoid.empty()
        for piece in pieces:
            combined = direct_sum(combined, piece)
        terms[combined.canonical_key()] += (-1) ** len(pieces)
    return FormalSum(terms)


def antipode_convolution(m: Megagreedoid) -> FormalSum:
    """sum over feasible S of s(m|S) . m/S; zero for every nonempty m"""
    total = FormalSum()
    for s in m.sorted_family():
        total = total + product(antipode(restrict(m, s)), FormalSum.of(contract(m, s)))
    return total


def character_zeta(m: Megagreedoid) -> Fraction:
    """1 when the family is boolean and the rank is modular, else 0"""
    if m.is_boolean() and is_modular_on_interval(m, 0, m.full_mask):
        return Fraction(1)
    return Fraction(0)


def poset_zeta(p: Poset) -> Fraction:
    """1 on antichains"""
    return Fraction(0 if p.relations() else 1)


def rooted_graph_zeta(g: RootedMultigraph) -> Fraction:
    """1 on star graphs"""
    return Fraction(1 if is_star_graph(g) else 0)


def basic_qsym(m: Megagreedoid, character: Callable[[Megagreedoid], object] = character_zeta) -> QsymElement:
    """
    Flag formula: sum over feasible chains of the product of the character on
    the chain's minors, times M of the intermediate cardinalities
    """
    terms: Counter = Counter()
    for chain in feasible_chains(m):
        weight = Fraction(1)
        for lower, upper in zip(chain, chain[1:]):
            weight *= to_rational(character(chain_minor(m, lower, upper)))
            if not weight:
                break
        if weight:
            terms[(tuple(popcount(s) for s in chain[1:-1]), m.size)] += weight
    return QsymElement("M", terms)


def rg_coproduct(g: RootedMultigraph, s: Subset) -> tuple[RootedMultigraph, RootedMultigraph] | None:
    """(g|s, g/s), or None when s + root is disconnected"""
    try:
        return graph_restrict(g, s), graph_contract(g, s)
    except InfeasibleSetError:
        return None


@dataclass(frozen=True)
class HopfFailure:
    axiom: str
    witness: str


@dataclass
class HopfReport:
    checks: Counter = field(default_factory=Counter)
    failures: list[HopfFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, axiom: str, ok: bool, witness: Callable[[], str]) -> None:
        self.checks[axiom] += 1
        if not ok:
            self.failures.append(HopfFailure(axiom, witness()))


def _keys(pair) -> tuple | None:
    if pair is None:
        return None
    return tuple(m.canonical_key() for m in pair)


class HopfVerifier:
    """Checks the Hopf monoid axioms with a given product map"""

    def __init__(self, multiply: Product = direct_sum):
        self.multiply = multiply

    def check_associativity(self, a: Megagreedoid, b: Megagreedoid, c: Megagreedoid, report: HopfReport) -> None:
        left = self.multiply(self.multiply(a, b), c)
        right = self.multiply(a, self.multiply(b, c))
        report.record(
            "associativity",
            left.canonical_key() == right.canonical_key(),
            lambda: f"{a!r} . {b!r} . {c!r}",
        )

    def check_unit(self, a: Megagreedoid, report: HopfReport) -> None:
        unit = Megagreedoid.empty()
        ok = (
            self.multiply(a, unit).canonical_key() == a.canonical_key()
            and self.multiply(unit, a).canonical_key() == a.canonical_key()
        )
        report.record("unit", ok, lambda: repr(a))

    def check_coassociativity(self, m: Megagreedoid, report: HopfReport) -> None:
        full = m.full_mask
        for b in submasks(full):
            for a in submasks(b):
                outer = coproduct_pair(m, b)
                if outer is None:
                    left = None
                else:
                    inner = coproduct_pair(outer[0], compress(a, list(bits(b))))
                    left = None if inner is None else _keys(inner + (outer[1],))
                first = coproduct_pair(m, a)
                if first is None:
                    right = None
                else:
                    inner = coproduct_pair(first[1], compress(b & ~a, list(bits(full & ~a))))
                    right = None if inner is None else _keys((first[0],) + inner)
                report.record(
                    "coassociativity",
                    left == right,
                    lambda: f"{m!r} at A={m.ground.format_set(a)}, B={m.ground.format_set(b)}",
                )

    def check_compatibility(self, f: Megagreedoid, g: Megagreedoid, report: HopfReport) -> None:
        """Coproduct of a product against the product of coproducts, at every subset"""
        joined = self.multiply(f, g)
        shift = f.size
        for a in submasks(joined.full_mask):
            left = _keys(coproduct_pair(joined, a))
            from_f = coproduct_pair(f, a & f.full_mask)
            from_g = coproduct_pair(g, a >> shift)
            if from_f is None or from_g is None:
                right = None
            else:
                right = _keys((self.multiply(from_f[0], from_g[0]), self.multiply(from_f[1], from_g[1])))
            report.record(
                "compatibility",
                left == right,
                lambda: f"{f!r} . {g!r} at A={joined.ground.format_set(a)}",
            )

    def check_character(self, f: Megagreedoid, g: Megagreedoid, report: HopfReport) -> None:
        report.record(
            "character multiplicativity",
            character_zeta(self.multiply(f, g)) == character_zeta(f) * character_zeta(g),
            lambda: f"{f!r} . {g!r}",
        )

    def check_antipode(self, m: Megagreedoid, report: HopfReport) -> None:
        if m.size == 0:
            return
        report.record(
            "antipode convolution",
            antipode_convolution(m).is_zero(),
            lambda: repr(m),
        )


def _disjoint_copies(corpus: Sequence[Megagreedoid]) -> list[Megagreedoid]:
    return [
        m.relabel({label: f"{label}{i}" for label in m.ground.elements})
        for i, m in enumerate(corpus)
    ]


def verify_hopf_axioms(
    corpus: Sequence[Megagreedoid],
    multiply: Product = direct_sum,
    max_pair_size: int = 7,
    check_antipode: bool = True,
) -> HopfReport:
    """
    Run every Hopf monoid axiom over a corpus

    Corpus members are relabelled apart first. Character multiplicativity is
    checked on every pair, compatibility on every pair whose combined ground
    set has at most max_pair_size elements, and associativity on consecutive
    triples.
    """
    verifier = HopfVerifier(multiply)
    report = HopfReport()
    copies = _disjoint_copies(corpus)
    for i, m in enumerate(copies):
        if Config.VERBOSE:
            print(f"   • Hopf axioms on instance {i + 1}/{len(copies)}", file=sys.stderr)
        verifier.check_unit(m, report)
        verifier.check_coassociativity(m, report)
        if check_antipode:
            verifier.check_antipode(m, report)
    for f, g in combinations(copies, 2):
        verifier.check_character(f, g, report)
        if f.size + g.size <= max_pair_size:
            verifier.check_compatibility(f, g, report)
    for a, b, c in zip(copies, copies[1:], copies[2:]):
        verifier.check_associativity(a, b, c, report)
    return report
