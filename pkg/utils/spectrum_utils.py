"""Laplacian spectra as root multisets, integer polynomials, and the union/join rules

A spectrum {mu_1^m_1, ..., mu_t^m_t} is kept factored. Every graph built by this
package is Laplacian integral, so eigenvalues are plain Python ints.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import ZZ, Poly, Symbol

from utils.errors import SpectrumError

X = Symbol("x")


@dataclass(frozen=True)
class FactoredSpectrum:
    """Sorted (eigenvalue, multiplicity) pairs, multiplicities positive"""

    roots: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        previous = None
        for mu, mult in self.roots:
            if isinstance(mu, bool) or not isinstance(mu, int) or mu < 0:
                raise SpectrumError(f"eigenvalue {mu!r} is not a non-negative integer")
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
                raise SpectrumError(f"multiplicity {mult!r} of {mu} is not a positive integer")
            if previous is not None and mu <= previous:
                raise SpectrumError("eigenvalues must be strictly ascending")
            previous = mu

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "FactoredSpectrum":
        """Build from {eigenvalue: multiplicity}; zero multiplicities are dropped"""
        for mu, mult in mapping.items():
            if mult < 0:
                raise SpectrumError(f"negative multiplicity {mult} for eigenvalue {mu}")
        return cls(tuple(sorted((mu, mult) for mu, mult in mapping.items() if mult)))

    @property
    def total(self) -> int:
        return sum(mult for _, mult in self.roots)

    @property
    def eigenvalues(self) -> Tuple[int, ...]:
        return tuple(mu for mu, _ in self.roots)

    @property
    def trace(self) -> int:
        return sum(mu * mult for mu, mult in self.roots)

    @property
    def largest(self) -> Optional[int]:
        return self.roots[-1][0] if self.roots else None

    @property
    def distinct_count(self) -> int:
        return len(self.roots)

    def multiplicity(self, mu: int) -> int:
        return dict(self.roots).get(mu, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.roots)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{mu}^{mult}" for mu, mult in self.roots) + "}"


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, constant term first, no trailing zeros"""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_poly(cls, poly: Poly) -> "IntPolynomial":
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], X, domain=ZZ)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial"""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_poly(self.to_poly() * other.to_poly())

    def __str__(self) -> str:
        return str(self.to_poly().as_expr())


def spectrum_of_complete(k: int) -> FactoredSpectrum:
    if k < 1:
        raise SpectrumError(f"K_{k} has no vertices")
    return FactoredSpectrum.from_mapping({0: 1, k: k - 1})


def union_spectrum(parts: Sequence[Tuple[FactoredSpectrum, int]]) -> FactoredSpectrum:
    """Spectrum of a disjoint union of count copies of each part"""
    if not parts:
        raise SpectrumError("union of no graphs")
    merged: Dict[int, int] = {}
    for spectrum, count in parts:
        if count < 1:
            raise SpectrumError(f"copy count must be at least 1, got {count}")
        for mu, mult in spectrum.roots:
            merged[mu] = merged.get(mu, 0) + count * mult
    return FactoredSpectrum.from_mapping(merged)


def join_spectrum(s1: FactoredSpectrum, s2: FactoredSpectrum) -> FactoredSpectrum:
    """Spectrum of the join, by cancelling the shifted zero roots of both operands"""
    for name, spectrum in (("left", s1), ("right", s2)):
        if spectrum.multiplicity(0) < 1:
            raise SpectrumError(f"{name} operand {spectrum} has no eigenvalue 0")
    n1, n2 = s1.total, s2.total
    merged: Dict[int, int] = {0: 1}
    merged[n1 + n2] = merged.get(n1 + n2, 0) + 1
    for spectrum, shift in ((s1, n2), (s2, n1)):
        for mu, mult in spectrum.roots:
            if mu == 0:
                mult -= 1
            if mult:
                merged[mu + shift] = merged.get(mu + shift, 0) + mult
    return FactoredSpectrum.from_mapping(merged)


def expand(s: FactoredSpectrum) -> IntPolynomial:
    """The monic polynomial prod (x - mu)^mult"""
    poly = Poly(1, X, domain=ZZ)
    for mu, mult in s.roots:
        poly = poly * Poly(X - mu, X, domain=ZZ) ** mult
    return IntPolynomial.from_poly(poly)


def poly_equal(a: IntPolynomial, b: IntPolynomial) -> bool:
    return a.coefficients == b.coefficients


def shift_poly(P: IntPolynomial, c: int) -> IntPolynomial:
    """P(x - c)"""
    return IntPolynomial.from_poly(P.to_poly().shift(-c))


def join_identity_holds(s1: FactoredSpectrum, s2: FactoredSpectrum) -> bool:
    """Check expand(join) * (x-n1)(x-n2) == x(x-n1-n2) * P1(x-n2) * P2(x-n1)"""
    n1, n2 = s1.total, s2.total

    def linear(c: int) -> IntPolynomial:
        return IntPolynomial((-c, 1))

    lhs = expand(join_spectrum(s1, s2)) * linear(n1) * linear(n2)
    rhs = linear(0) * linear(n1 + n2) * shift_poly(expand(s1), n2) * shift_poly(expand(s2), n1)
    return poly_equal(lhs, rhs)


def first_difference(a: FactoredSpectrum, b: FactoredSpectrum) -> Optional[int]:
    """Least eigenvalue whose multiplicities differ, None if equal"""
    da, db = a.as_dict(), b.as_dict()
    for mu in sorted(set(da) | set(db)):
        if da.get(mu, 0) != db.get(mu, 0):
            return mu
    return None


def check_laplacian_spectrum(s: FactoredSpectrum, vertex_count: int) -> List[str]:
    """Structural invariants a Laplacian spectrum must satisfy; empty list when all hold"""
    problems = []
    if s.total != vertex_count:
        problems.append(f"total multiplicity {s.total} != vertex count {vertex_count}")
    if vertex_count and s.multiplicity(0) < 1:
        problems.append("eigenvalue 0 missing")
    if s.largest is not None and s.largest > vertex_count:
        problems.append(f"eigenvalue {s.largest} exceeds vertex count {vertex_count}")
    return problems


def spectrum_to_json(s: FactoredSpectrum) -> Dict[str, int]:
    return {str(mu): mult for mu, mult in s.roots}


def spectrum_from_json(obj: Mapping[str, int]) -> FactoredSpectrum:
    try:
        return FactoredSpectrum.from_mapping({int(mu): int(mult) for mu, mult in obj.items()})
    except (TypeError, ValueError) as e:
        raise SpectrumError(f"malformed spectrum object: {e}") from None


def poly_to_json(P: IntPolynomial) -> List[str]:
    return [str(c) for c in P.coefficients]


def poly_from_json(obj: Sequence[str]) -> IntPolynomial:
    try:
        return IntPolynomial(tuple(int(c) for c in obj))
    except (TypeError, ValueError) as e:
        raise SpectrumError(f"malformed polynomial: {e}") from None


_ROOT_RE = re.compile(r"^(\d+)\^(\d+)$")


def parse_spectrum_text(text: str) -> FactoredSpectrum:
    """Read back the ``{0^1, 8^7}`` notation"""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise SpectrumError(f"spectrum text must be braced: {text!r}")
    body = body[1:-1].strip()
    merged: Dict[int, int] = {}
    if body:
        for item in body.split(","):
            match = _ROOT_RE.match(item.strip())
            if not match:
                raise SpectrumError(f"bad spectrum entry {item.strip()!r}")
            mu, mult = int(match.group(1)), int(match.group(2))
            merged[mu] = merged.get(mu, 0) + mult
    return FactoredSpectrum.from_mapping(merged)
