"""Closed forms for the power graphs of Z_(p^m)^n and Z_2^r x Z_4^s

Laplacian polynomials, element and degree counts, and the structural classifiers
(complete, flower, planar). Everything here is pure arithmetic; nothing is realized.
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from sympy import factorint, isprime

from utils.errors import GroupError, SpectrumError
from utils.group_utils import (
    GroupElement,
    GroupSpec,
    PrimePowerHomocyclic,
    TwoFour,
    check_element,
    elementary_divisors,
    element_order,
    group_spectrum,
    group_z2r4s,
    invariant_factors,
    is_cyclic,
)
from utils.spectrum_utils import FactoredSpectrum


@dataclass(frozen=True)
class ZpmnParams:
    p: int
    m: int
    n: int

    def __post_init__(self):
        if not isprime(self.p):
            raise SpectrumError(f"p={self.p} is not prime")
        if self.m < 1 or self.n < 1:
            raise SpectrumError(f"m and n must be positive, got m={self.m}, n={self.n}")

    @property
    def l(self) -> int:  # noqa: E743
        return (self.p**self.n - 1) // (self.p - 1)

    @property
    def order(self) -> int:
        return self.p ** (self.m * self.n)


@dataclass(frozen=True)
class EigenvalueTerm:
    eigenvalue: int
    multiplicity: int
    provenance: str


class DistinctCount(NamedTuple):
    actual: int
    claimed: int

    @property
    def matches(self) -> bool:
        return self.actual == self.claimed


def euler_phi_prime_power(p: int, k: int) -> int:
    if k < 1:
        raise SpectrumError(f"phi(p^k) is only used for k >= 1, got k={k}")
    return p**k - p ** (k - 1)


def joined_eigenvalue_c(i: int, params: ZpmnParams) -> int:
    """c_i = p^i + sum_{j=i+1}^{m} p^((j-i)(n-1)) phi(p^j)"""
    p, m, n = params.p, params.m, params.n
    if not 1 <= i <= m - 1:
        raise SpectrumError(f"i={i} outside 1..{m - 1}")
    return p**i + sum(
        p ** ((j - i) * (n - 1)) * euler_phi_prime_power(p, j) for j in range(i + 1, m + 1)
    )


def joined_eigenvalue_c_nested(i: int, params: ZpmnParams) -> int:
    """c_i evaluated as p^i + p^(n-1)(phi(p^(i+1)) + p^(n-1)(... + p^(n-1) phi(p^m)))"""
    p, m, n = params.p, params.m, params.n
    if not 1 <= i <= m - 1:
        raise SpectrumError(f"i={i} outside 1..{m - 1}")
    inner = euler_phi_prime_power(p, m)
    for j in range(m - 1, i, -1):
        inner = euler_phi_prime_power(p, j) + p ** (n - 1) * inner
    return p**i + p ** (n - 1) * inner


def zpmn_terms(params: ZpmnParams) -> List[EigenvalueTerm]:
    """Every factor of the Laplacian polynomial, zero exponents included"""
    p, m, n, l = params.p, params.m, params.n, params.l
    terms = [
        EigenvalueTerm(0, 1, "x"),
        EigenvalueTerm(params.order, 1, "x - p^(mn)"),
        EigenvalueTerm(1, l - 1, "x - 1"),
        EigenvalueTerm(
            p**m,
            l * p ** ((m - 1) * (n - 1)) * (euler_phi_prime_power(p, m) - 1),
            "x - p^m",
        ),
    ]
    for i in range(1, m):
        weight = l * p ** ((i - 1) * (n - 1))
        terms.append(EigenvalueTerm(p**i, weight * (p ** (n - 1) - 1), f"x - p^{i}"))
        terms.append(
            EigenvalueTerm(
                joined_eigenvalue_c(i, params),
                weight * euler_phi_prime_power(p, i),
                f"x - c_{i}",
            )
        )
    return terms


def _check_rs(r: int, s: int) -> None:
    if r < 0 or s < 1:
        raise SpectrumError(f"Z_2^r x Z_4^s needs r >= 0 and s >= 1, got r={r}, s={s}")


def z2r4s_terms(r: int, s: int) -> List[EigenvalueTerm]:
    _check_rs(r, s)
    return [
        EigenvalueTerm(0, 1, "x"),
        EigenvalueTerm(1, 2 ** (r + s) - 2, "x - 1"),
        EigenvalueTerm(2, (2**s - 1) * (2 ** (r + s - 1) - 1), "x - 2"),
        EigenvalueTerm(4, 2 ** (r + s - 1) * (2**s - 1), "x - 4"),
        EigenvalueTerm(2 + 2 ** (r + s), 2**s - 1, "x - 2 - 2^(r+s)"),
        EigenvalueTerm(2 ** (r + 2 * s), 1, "x - 2^(r+2s)"),
    ]


def spectrum_from_terms(terms: Sequence[EigenvalueTerm]) -> FactoredSpectrum:
    """Merge colliding eigenvalues; zero-exponent factors vanish"""
    merged = {}
    for term in terms:
        merged[term.eigenvalue] = merged.get(term.eigenvalue, 0) + term.multiplicity
    return FactoredSpectrum.from_mapping(merged)


def dropped_terms(terms: Sequence[EigenvalueTerm]) -> List[EigenvalueTerm]:
    return [term for term in terms if term.multiplicity == 0]


def laplacian_spectrum_zpmn(params: ZpmnParams) -> FactoredSpectrum:
    return spectrum_from_terms(zpmn_terms(params))


def laplacian_spectrum_z2r4s(r: int, s: int) -> FactoredSpectrum:
    return spectrum_from_terms(z2r4s_terms(r, s))


def distinct_eigenvalue_count_zpmn(params: ZpmnParams) -> DistinctCount:
    """Actual number of distinct eigenvalues next to the stated 2(m+1)"""
    actual = laplacian_spectrum_zpmn(params).distinct_count
    return DistinctCount(actual=actual, claimed=2 * (params.m + 1))


def expected_distinct_count(params: ZpmnParams) -> int:
    """2(m+1), except 2 when n = 1 and 3 when p = 2, m = 1, n >= 2"""
    if params.n == 1:
        return 2
    if params.p == 2 and params.m == 1:
        return 3
    return 2 * (params.m + 1)


def spectrum_containment_zpmn(params: ZpmnParams) -> bool:
    eigenvalues = set(laplacian_spectrum_zpmn(params).eigenvalues)
    return all(params.p**i in eigenvalues for i in range(params.m + 1))


def expected_containment(params: ZpmnParams) -> bool:
    """False when n = 1 (complete graph) or p = 2, m = 1 (eigenvalue 2 has multiplicity 0)"""
    return params.n > 1 and not (params.p == 2 and params.m == 1)


def group_orders_contained(G: GroupSpec, spectrum: FactoredSpectrum) -> bool:
    """Whether every element order of G is a Laplacian eigenvalue"""
    return set(group_spectrum(G)) <= set(spectrum.eigenvalues)


def expected_planar_containment(G: GroupSpec) -> bool:
    """Planar containment fails for cyclic groups and for Z_2^n"""
    return not (is_cyclic(G) or set(elementary_divisors(G)) == {2})


def is_power_graph_complete(G: GroupSpec) -> bool:
    """Complete iff G is cyclic of prime-power order (the trivial group included)"""
    factors = invariant_factors(G)
    if not factors:
        return True
    return len(factors) == 1 and len(factorint(factors[0])) == 1


def is_flower_zpmn(params: ZpmnParams) -> bool:
    return params.n >= 2 and params.m == 1


def is_planar_power_graph_abelian(G: GroupSpec) -> bool:
    """Planar iff G is Z_2^n, Z_3^n, Z_4^n or Z_2^r x Z_4^s"""
    divisors = set(elementary_divisors(G))
    return divisors <= {2, 4} or divisors == {3}


def count_order2_z2r4s(r: int, s: int) -> int:
    _check_rs(r, s)
    return 2 ** (r + s) - 1


def count_order4_z2r4s(r: int, s: int) -> int:
    _check_rs(r, s)
    return 2 ** (r + s) * (2**s - 1)


def _order2_element(alpha: Sequence[int], r: int, s: int) -> Tuple[GroupSpec, GroupElement]:
    _check_rs(r, s)
    G = group_z2r4s(r, s)
    alpha = check_element(G, alpha)
    if element_order(G, alpha) != 2:
        raise GroupError(f"{alpha} does not have order 2 in {G}")
    return G, alpha


def order2_lies_in_cyclic4(alpha: Sequence[int], r: int, s: int) -> bool:
    """alpha lies in some cyclic subgroup of order 4 iff its Z_2 coordinates vanish"""
    _, alpha = _order2_element(alpha, r, s)
    return all(x == 0 for x in alpha[:r])


def degree_order2_closed(alpha: Sequence[int], r: int, s: int) -> int:
    if order2_lies_in_cyclic4(alpha, r, s):
        return 2 ** (r + s) + 1
    return 1


def degree_class_counts_z2r4s(r: int, s: int) -> Tuple[int, int]:
    """(order-2 elements of degree 1, order-2 elements of degree 2^(r+s)+1)"""
    _check_rs(r, s)
    return 2**s * (2**r - 1), 2**s - 1


def rs_parameters(G: GroupSpec) -> Optional[Tuple[int, int]]:
    """(r, s) when G is Z_2^r x Z_4^s with s >= 1, else None"""
    family = G.family
    if isinstance(family, TwoFour):
        return family.r, family.s
    if isinstance(family, PrimePowerHomocyclic) and (family.p, family.m) == (2, 2):
        return 0, family.n
    return None


def closed_form_paths(G: GroupSpec) -> List[Tuple[str, FactoredSpectrum]]:
    """Every closed form that applies to G, labelled by family"""
    paths = []
    family = G.family
    if isinstance(family, PrimePowerHomocyclic):
        params = ZpmnParams(family.p, family.m, family.n)
        paths.append(("closed_form:zpmn", laplacian_spectrum_zpmn(params)))
    rs = rs_parameters(G)
    if rs is not None:
        paths.append(("closed_form:z2r4s", laplacian_spectrum_z2r4s(*rs)))
    return paths
