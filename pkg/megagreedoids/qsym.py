"""
Exact quasisymmetric functions in the monomial (M) and fundamental (F) bases

Basis elements are indexed by a pair (S, n) with S a subset of {1, ..., n-1}
and n the degree, stored as (sorted tuple, n). Coefficients are Fractions.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import sympy as sp

from .core import MalformedInputError, to_rational

BASES = ("M", "F")

TermKey = tuple[tuple[int, ...], int]


def _term_key(descent_set: Iterable[int], degree: int) -> TermKey:
    subset = tuple(sorted(set(descent_set)))
    if degree < 0:
        raise MalformedInputError(f"degree must be nonnegative, got {degree}")
    if subset and (subset[0] < 1 or subset[-1] > degree - 1):
        raise MalformedInputError(f"descent set {list(subset)} is not inside [1, {degree - 1}]")
    return subset, degree


def subset_to_composition(subset: tuple[int, ...], degree: int) -> tuple[int, ...]:
    """{s_1 < ... < s_k} in [n-1] -> consecutive differences of 0, s_1, ..., s_k, n"""
    if degree == 0:
        return ()
    cuts = (0,) + subset + (degree,)
    return tuple(cuts[i + 1] - cuts[i] for i in range(len(cuts) - 1))


def composition_to_subset(composition: tuple[int, ...]) -> TermKey:
    partial, cuts = 0, []
    for part in composition[:-1]:
        partial += part
        cuts.append(partial)
    return tuple(cuts), sum(composition)


@lru_cache(maxsize=None)
def quasi_shuffle(alpha: tuple[int, ...], beta: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Quasi-shuffle (stuffle) of two compositions, as (composition, multiplicity) pairs"""
    if not alpha:
        return ((beta, 1),)
    if not beta:
        return ((alpha, 1),)
    result: Counter = Counter()
    a, rest_a = alpha[0], alpha[1:]
    b, rest_b = beta[0], beta[1:]
    for word, count in quasi_shuffle(rest_a, beta):
        result[(a,) + word] += count
    for word, count in quasi_shuffle(alpha, rest_b):
        result[(b,) + word] += count
    for word, count in quasi_shuffle(rest_a, rest_b):
        result[(a + b,) + word] += count
    return tuple(sorted(result.items()))


class QsymElement:
    """A finite rational combination of M_{S,n} or F_{S,n}, possibly of mixed degree"""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[TermKey, object] | None = None):
        if basis not in BASES:
            raise MalformedInputError(f"basis must be one of {BASES}, got {basis!r}")
        self.basis = basis
        cleaned: dict[TermKey, Fraction] = {}
        for (subset, degree), coefficient in (terms or {}).items():
            key = _term_key(subset, degree)
            value = cleaned.get(key, Fraction(0)) + to_rational(coefficient)
            if value:
                cleaned[key] = value
            else:
                cleaned.pop(key, None)
        self.terms = cleaned

    @classmethod
    def zero(cls, basis: str = "F") -> "QsymElement":
        return cls(basis)

    @classmethod
    def one(cls, basis: str = "F") -> "QsymElement":
        return cls(basis, {((), 0): 1})

    @classmethod
    def F(cls, descent_set: Iterable[int], degree: int, coefficient=1) -> "QsymElement":
        return cls("F", {(tuple(descent_set), degree): coefficient})

    @classmethod
    def M(cls, descent_set: Iterable[int], degree: int, coefficient=1) -> "QsymElement":
        return cls("M", {(tuple(descent_set), degree): coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, descent_set: Iterable[int], degree: int) -> Fraction:
        return self.terms.get(_term_key(descent_set, degree), Fraction(0))

    def degrees(self) -> set[int]:
        return {degree for _, degree in self.terms}

    def sorted_terms(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][1], list(item[0][0])))

    def __add__(self, other: "QsymElement") -> "QsymElement":
        other = to_basis(other, self.basis)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
        return QsymElement(self.basis, terms)

    def __neg__(self) -> "QsymElement":
        return QsymElement(self.basis, {key: -value for key, value in self.terms.items()})

    def __sub__(self, other: "QsymElement") -> "QsymElement":
        return self + (-other)

    def scale(self, factor) -> "QsymElement":
        factor = to_rational(factor)
        return QsymElement(self.basis, {key: value * factor for key, value in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QsymElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, QsymElement):
            return NotImplemented
        return self.terms == to_basis(other, self.basis).terms

    def __hash__(self) -> int:
        return hash(frozenset(to_basis(self, "M").terms.items()))

    def __repr__(self) -> str:
        return f"QsymElement({render(self)})"

    def __str__(self) -> str:
        return render(self)


def _superset_terms(subset: tuple[int, ...], degree: int) -> Iterable[tuple[tuple[int, ...], int]]:
    """(T, |T - S|) for every T with S <= T <= [n-1]"""
    free = [i for i in range(1, degree) if i not in subset]
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            yield tuple(sorted(subset + extra)), size


def to_basis(q: QsymElement, target: str) -> QsymElement:
    """
    Convert between bases

    F_{S,n} = sum over T >= S of M_{T,n}, and inversely
    M_{S,n} = sum over T >= S of (-1)^{|T - S|} F_{T,n}.
    """
    if target not in BASES:
        raise MalformedInputError(f"basis must be one of {BASES}, got {target!r}")
    if q.basis == target:
        return q
    sign_alternates = target == "F"
    terms: dict[TermKey, Fraction] = {}
    for (subset, degree), coefficient in q.terms.items():
        for superset, gap in _superset_terms(subset, degree):
            sign = -1 if sign_alternates and gap % 2 else 1
            key = (superset, degree)
            terms[key] = terms.get(key, Fraction(0)) + sign * coefficient
    return QsymElement(target, terms)


def multiply(a: QsymElement, b: QsymElement) -> QsymElement:
    """Product via the quasi-shuffle of compositions in the M basis; result in a's basis"""
    left, right = to_basis(a, "M"), to_basis(b, "M")
    terms: dict[TermKey, Fraction] = {}
    for (s, m), x in left.terms.items():
        alpha = subset_to_composition(s, m)
        for (t, n), y in right.terms.items():
            beta = subset_to_composition(t, n)
            for word, count in quasi_shuffle(alpha, beta):
                key = composition_to_subset(word) if word else ((), 0)
                terms[key] = terms.get(key, Fraction(0)) + x * y * count
    return to_basis(QsymElement("M", terms), a.basis)


N = sp.Symbol("n")


def _sympy_rational(value) -> sp.Rational:
    value = to_rational(value)
    return sp.Rational(value.numerator, value.denominator)


def counting_polynomial(coefficients: Iterable[object] = ()) -> sp.Poly:
    """Polynomial in n over QQ from coefficients listed by increasing degree"""
    expression = sum((_sympy_rational(c) * N**power for power, c in enumerate(coefficients)), sp.Integer(0))
    return sp.Poly(expression, N, domain=sp.QQ)


def counting_binomial(shift: int, k: int) -> sp.Poly:
    """The polynomial C(n + shift, k) in n"""
    return sp.Poly(sp.expand_func(sp.binomial(N + shift, k)), N, domain=sp.QQ)


def evaluate(poly: sp.Poly, x) -> Fraction:
    """Exact value of poly at a rational point"""
    value = sp.Rational(poly.eval(_sympy_rational(x)))
    return Fraction(int(value.p), int(value.q))


def count_specialize(q: QsymElement, n: int) -> Fraction:
    """
    Number of monomials (weighted by coefficient) in the variables x_1..x_n

    F_{S,m} contributes C(n + m - 1 - |S|, m) and M_{S,m} contributes
    C(n, |S| + 1); degree-zero terms contribute their coefficient.
    """
    total = Fraction(0)
    for (subset, degree), coefficient in q.terms.items():
        if degree == 0:
            count = 1
        elif q.basis == "F":
            count = int(sp.binomial(n + degree - 1 - len(subset), degree))
        else:
            count = int(sp.binomial(n, len(subset) + 1))
        total += coefficient * count
    return total


def specialize_poly(q: QsymElement) -> sp.Poly:
    """The counting polynomial n -> count_specialize(q, n), over QQ"""
    total = counting_polynomial()
    for (subset, degree), coefficient in q.terms.items():
        if degree == 0:
            piece = counting_polynomial([1])
        elif q.basis == "F":
            piece = counting_binomial(degree - 1 - len(subset), degree)
        else:
            piece = counting_binomial(0, len(subset) + 1)
        total = total + piece.mul_ground(_sympy_rational(coefficient))
    return total


def render_polynomial(poly: sp.Poly, variable: str = "n") -> str:
    """Text form by decreasing degree: `1/2*n^2 - 1/2*n`"""
    if poly.is_zero:
        return "0"
    pieces = []
    for (power,), c in poly.terms():
        if power == 0:
            monomial = ""
        elif power == 1:
            monomial = variable
        else:
            monomial = f"{variable}^{power}"
        if monomial and c == 1:
            text = monomial
        elif monomial and c == -1:
            text = f"-{monomial}"
        elif monomial:
            text = f"{c}*{monomial}"
        else:
            text = str(c)
        pieces.append(text)
    return " + ".join(pieces).replace("+ -", "- ")


def render(q: QsymElement) -> str:
    """Deterministic text form: `6*F[{1,2,3};4] + 2*F[{1,3};4]`"""
    if q.is_zero():
        return "0"
    return " + ".join(
        f"{coefficient}*{q.basis}[{{{','.join(str(i) for i in subset)}}};{degree}]"
        for (subset, degree), coefficient in q.sorted_terms()
    )
