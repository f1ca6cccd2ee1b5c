"""Brute-force ground truth and the three-way verification harness

The oracle never looks at a known decomposition: it builds the power graph, forms
L = D - A, computes det(xI - L) exactly and peels off integer roots.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from sympy import prevprime
from sympy.ntheory.modular import crt

from utils import config
from utils.errors import CapExceededError, NonIntegralSpectrumError, SpectrumError
from utils.expr_utils import expr_edge_count, expr_spectrum, structure_expr, vertex_count
from utils.formula_utils import (
    ZpmnParams,
    closed_form_paths,
    count_order2_z2r4s,
    count_order4_z2r4s,
    degree_class_counts_z2r4s,
    degree_order2_closed,
    distinct_eigenvalue_count_zpmn,
    expected_containment,
    expected_distinct_count,
    expected_planar_containment,
    group_orders_contained,
    is_planar_power_graph_abelian,
    order2_lies_in_cyclic4,
    rs_parameters,
    spectrum_containment_zpmn,
)
from utils.graph_utils import Graph, build_power_graph, degree, edge_count
from utils.group_utils import (
    GroupElement,
    GroupSpec,
    PrimePowerHomocyclic,
    element_order,
    elements,
    group_z2r4s,
    is_cyclic,
    scale,
)
from utils.spectrum_utils import (
    FactoredSpectrum,
    IntPolynomial,
    check_laplacian_spectrum,
    first_difference,
    spectrum_to_json,
)

try:
    from tqdm import tqdm
except ImportError:
    tqdm = None


@dataclass(frozen=True)
class IntMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(row) != len(self.entries) for row in self.entries):
            raise SpectrumError("matrix must be square")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dimension))

    def is_laplacian(self) -> bool:
        d = self.dimension
        for i, row in enumerate(self.entries):
            if sum(row) != 0:
                return False
            for j, value in enumerate(row):
                if i != j and (value not in (0, -1) or self.entries[j][i] != value):
                    return False
        return d == 0 or all(self.entries[i][i] >= 0 for i in range(d))


def laplacian_matrix(g: Graph) -> IntMatrix:
    rows = []
    for v in range(g.vertex_count):
        row = [-(g.rows[v] >> u & 1) for u in range(g.vertex_count)]
        row[v] = degree(g, v)
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def _faddeev_leverrier(M: IntMatrix) -> IntPolynomial:
    d = M.dimension
    A = np.array(M.entries, dtype=object).reshape(d, d)
    identity = np.array([[int(i == j) for j in range(d)] for i in range(d)], dtype=object)
    identity = identity.reshape(d, d)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    AM = np.zeros((d, d), dtype=object)
    for k in range(1, d + 1):
        AM = A.dot(AM + coeffs[d - k + 1] * identity)
        trace = sum(AM.diagonal())
        if trace % k:
            raise SpectrumError(f"inexact trace division at step {k}")
        coeffs[d - k] = -(trace // k)
    return IntPolynomial(tuple(coeffs))


def _charpoly_mod(entries: Sequence[Sequence[int]], p: int) -> List[int]:
    """det(xI - M) mod p via reduction to upper Hessenberg form"""
    d = len(entries)
    H = np.array(entries, dtype=np.int64).reshape(d, d) % p
    for j in range(d - 2):
        nonzero = np.flatnonzero(H[j + 1 :, j])
        if nonzero.size == 0:
            continue
        pivot = j + 1 + int(nonzero[0])
        if pivot != j + 1:
            H[[j + 1, pivot], :] = H[[pivot, j + 1], :]
            H[:, [j + 1, pivot]] = H[:, [pivot, j + 1]]
        inverse = pow(int(H[j + 1, j]), -1, p)
        u = H[j + 2 :, j] * inverse % p
        if not u.any():
            continue
        H[j + 2 :, :] = (H[j + 2 :, :] - np.outer(u, H[j + 1, :]) % p) % p
        H[:, j + 1] = (H[:, j + 1] + H[:, j + 2 :] @ u % p) % p

    sub = [0] + [int(H[i, i - 1]) for i in range(1, d)]
    P = np.zeros((d + 1, d + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(1, d + 1):
        column = [int(v) for v in H[:k, k - 1]]
        row = np.zeros(d + 1, dtype=np.int64)
        row[1:] = P[k - 1, :-1]
        row = (row - column[k - 1] * P[k - 1]) % p
        if k > 1:
            weights = np.zeros(k - 1, dtype=np.int64)
            running = 1
            for i in range(k - 1, 0, -1):
                running = running * sub[i] % p
                weights[i - 1] = column[i - 1] * running % p
            row = (row - (weights @ P[: k - 1]) % p) % p
        P[k] = row
    return [int(c) for c in P[d]]


def coefficient_bound(M: IntMatrix) -> int:
    """Bound on |coefficients| from the Gershgorin radius of M"""
    d = M.dimension
    radius = max((sum(abs(v) for v in row) for row in M.entries), default=0)
    return max(math.comb(d, j) * radius**j for j in range(d + 1))


def _modular_charpoly(M: IntMatrix) -> IntPolynomial:
    d = M.dimension
    target = 2 * coefficient_bound(M) + 1
    moduli: List[int] = []
    residues: List[List[int]] = []
    modulus, p = 1, config.MODULAR_PRIME_CEILING
    while modulus < target:
        p = prevprime(p)
        moduli.append(p)
        residues.append(_charpoly_mod(M.entries, p))
        modulus *= p
    coeffs = []
    for k in range(d + 1):
        value, _ = crt(moduli, [r[k] for r in residues], symmetric=True)
        coeffs.append(int(value))
    return IntPolynomial(tuple(coeffs))


def char_poly_exact(M: IntMatrix, method: str = "auto", cap: Optional[int] = None) -> IntPolynomial:
    """Exact det(xI - M); method is "faddeev", "modular" or "auto" (by size)"""
    cap = config.ORACLE_CAP if cap is None else cap
    d = M.dimension
    if d > cap:
        raise CapExceededError("matrix", d, cap)
    if d == 0:
        return IntPolynomial((1,))
    if method == "auto":
        method = "faddeev" if d <= config.FADDEEV_CAP else "modular"
    if method == "faddeev":
        return _faddeev_leverrier(M)
    if method == "modular":
        return _modular_charpoly(M)
    raise ValueError(f"unknown characteristic polynomial method {method!r}")


def _divide_by_root(coeffs: List[int], mu: int) -> Tuple[List[int], int]:
    """Synthetic division by (x - mu); coefficients constant first"""
    acc = 0
    out = []
    for c in reversed(coeffs):
        acc = acc * mu + c
        out.append(acc)
    remainder = out.pop()
    return out[::-1], remainder


def integer_root_factor(P: IntPolynomial, bound: int) -> FactoredSpectrum:
    """Factor a monic P as prod (x - mu)^mult over integers 0 <= mu <= bound"""
    if P.degree < 0:
        raise SpectrumError("cannot factor the zero polynomial")
    if P.leading != 1:
        raise SpectrumError(f"polynomial is not monic (leading coefficient {P.leading})")
    coeffs = list(P.coefficients)
    roots: Dict[int, int] = {}
    for mu in range(bound + 1):
        if len(coeffs) == 1:
            break
        # a nonzero integer root divides the constant term
        if mu and coeffs[0] % mu:
            continue
        while len(coeffs) > 1:
            quotient, remainder = _divide_by_root(coeffs, mu)
            if remainder:
                break
            coeffs = quotient
            roots[mu] = roots.get(mu, 0) + 1
    if len(coeffs) > 1:
        leftover = IntPolynomial(tuple(coeffs))
        raise NonIntegralSpectrumError(f"factor {leftover} has no integer roots in [0, {bound}]")
    return FactoredSpectrum.from_mapping(roots)


def graph_spectrum(g: Graph, cap: Optional[int] = None) -> FactoredSpectrum:
    poly = char_poly_exact(laplacian_matrix(g), cap=cap)
    return integer_root_factor(poly, g.vertex_count)


def brute_spectrum(G: GroupSpec, cap: Optional[int] = None) -> FactoredSpectrum:
    cap = config.ORACLE_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(f"oracle for {G}", G.order, cap)
    return graph_spectrum(build_power_graph(G), cap)


def squares_of_order4(G: GroupSpec, cap: Optional[int] = None) -> FrozenSet[GroupElement]:
    """Every 2x with x of order 4, from one pass over the group"""
    return frozenset(scale(G, 2, x) for x in elements(G, cap) if element_order(G, x) == 4)


def cyclic4_search(G: GroupSpec, alpha: GroupElement, cap: Optional[int] = None) -> bool:
    """Whether 2x = alpha for some x of order 4, by exhaustive search"""
    return tuple(alpha) in squares_of_order4(G, cap)


@dataclass
class Z2r4sCensus:
    order2: int = 0
    order4: int = 0
    deg1: int = 0
    deg_big: int = 0
    degree_mismatches: List[GroupElement] = field(default_factory=list)
    predicate_mismatches: List[GroupElement] = field(default_factory=list)


def enumerate_z2r4s_counts(r: int, s: int, cap: Optional[int] = None) -> Z2r4sCensus:
    """Element and degree counts of Z_2^r x Z_4^s taken from the group and its power graph"""
    G = group_z2r4s(r, s)
    graph = build_power_graph(G, cap)
    orders = [element_order(G, alpha) for alpha in graph.labels]
    squares = frozenset(
        scale(G, 2, alpha) for alpha, order in zip(graph.labels, orders) if order == 4
    )
    big = 2 ** (r + s) + 1
    census = Z2r4sCensus(order4=orders.count(4))
    for v, (alpha, order) in enumerate(zip(graph.labels, orders)):
        if order != 2:
            continue
        census.order2 += 1
        deg = degree(graph, v)
        if deg == 1:
            census.deg1 += 1
        elif deg == big:
            census.deg_big += 1
        if deg != degree_order2_closed(alpha, r, s):
            census.degree_mismatches.append(alpha)
        if (alpha in squares) != order2_lies_in_cyclic4(alpha, r, s):
            census.predicate_mismatches.append(alpha)
    return census


@dataclass
class VerificationReport:
    group: str
    order: int
    spectra: Dict[str, FactoredSpectrum] = field(default_factory=dict)
    agreement: Dict[str, bool] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    deviations: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return (
            bool(self.spectra)
            and not self.failures
            and all(self.agreement.values())
            and all(self.checks.values())
        )

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self, include_timing: bool = False) -> dict:
        data = {
            "group": self.group,
            "order": self.order,
            "status": self.status,
            "spectra": {label: spectrum_to_json(s) for label, s in sorted(self.spectra.items())},
            "agreement": dict(sorted(self.agreement.items())),
            "checks": dict(sorted(self.checks.items())),
            "failures": list(self.failures),
            "deviations": list(self.deviations),
            "skipped": list(self.skipped),
        }
        if include_timing:
            data["elapsed_seconds"] = round(self.elapsed, 6)
        return data


def _compare_paths(report: VerificationReport) -> None:
    for a, b in combinations(sorted(report.spectra), 2):
        sa, sb = report.spectra[a], report.spectra[b]
        equal = sa == sb
        report.agreement[f"{a} == {b}"] = equal
        if not equal:
            mu = first_difference(sa, sb)
            report.failures.append(
                f"{a} != {b}: first difference at eigenvalue {mu} "
                f"({sa.multiplicity(mu)} vs {sb.multiplicity(mu)})"
            )


def _check_structure(report: VerificationReport, edges: Optional[int]) -> None:
    for label, spectrum in sorted(report.spectra.items()):
        problems = check_laplacian_spectrum(spectrum, report.order)
        if spectrum.multiplicity(0) != 1:
            problems.append(f"eigenvalue 0 has multiplicity {spectrum.multiplicity(0)}")
        if report.order > 1 and spectrum.largest != report.order:
            problems.append(f"largest eigenvalue {spectrum.largest} != order {report.order}")
        if edges is not None and spectrum.trace != 2 * edges:
            problems.append(f"trace {spectrum.trace} != 2 * {edges} edges")
        report.checks[f"structure:{label}"] = not problems
        report.failures.extend(f"{label}: {problem}" for problem in problems)


def _record(report: VerificationReport, name: str, ok: bool, detail: str) -> None:
    report.checks[name] = ok
    if not ok:
        report.failures.append(f"{name}: {detail}")


def _check_zpmn_statements(report: VerificationReport, params: ZpmnParams) -> None:
    distinct = distinct_eigenvalue_count_zpmn(params)
    expected = expected_distinct_count(params)
    _record(
        report,
        "distinct_count",
        distinct.actual == expected,
        f"{distinct.actual} distinct eigenvalues, expected {expected}",
    )
    if not distinct.matches:
        report.deviations.append(
            f"{distinct.actual} distinct Laplacian eigenvalues, "
            f"not the stated 2(m+1) = {distinct.claimed}"
        )
    contained = spectrum_containment_zpmn(params)
    expected = expected_containment(params)
    _record(
        report,
        "containment",
        contained == expected,
        f"element orders contained = {contained}, expected {expected}",
    )
    if not contained and not expected:
        reason = "n = 1" if params.n == 1 else "p = 2, m = 1"
        report.deviations.append(
            f"element orders not contained in the Laplacian spectrum ({reason})"
        )


def _check_planar_containment(report: VerificationReport, G: GroupSpec) -> None:
    if not report.spectra or not is_planar_power_graph_abelian(G):
        return
    spectrum = next(iter(sorted(report.spectra.items())))[1]
    contained = group_orders_contained(G, spectrum)
    expected = expected_planar_containment(G)
    _record(
        report,
        "planar_containment",
        contained == expected,
        f"element orders contained = {contained}, expected {expected}",
    )
    if not contained and not expected:
        kind = "cyclic" if is_cyclic(G) else "elementary abelian 2-group"
        report.deviations.append(
            f"planar but {kind}: element orders not contained in the Laplacian spectrum"
        )


def _check_counts(report: VerificationReport, r: int, s: int, cap: int) -> None:
    census = enumerate_z2r4s_counts(r, s, cap)
    enumerated = (census.order2, census.order4)
    formula = (count_order2_z2r4s(r, s), count_order4_z2r4s(r, s))
    _record(
        report,
        "order_counts",
        enumerated == formula,
        f"(order 2, order 4) enumerated {enumerated}, formula {formula}",
    )
    enumerated = (census.deg1, census.deg_big)
    formula = degree_class_counts_z2r4s(r, s)
    _record(
        report,
        "degree_classes",
        enumerated == formula,
        f"(degree 1, degree 2^(r+s)+1) enumerated {enumerated}, formula {formula}",
    )
    report.checks["degree_formula"] = not census.degree_mismatches
    report.checks["cyclic4_predicate"] = not census.predicate_mismatches
    for alpha in census.degree_mismatches:
        report.failures.append(f"degree of {alpha} differs from the closed form")
    for alpha in census.predicate_mismatches:
        report.failures.append(f"cyclic-4 predicate wrong for {alpha}")


def verify_group(
    G: GroupSpec, oracle_cap: Optional[int] = None, enum_cap: Optional[int] = None
) -> VerificationReport:
    """Compute every applicable spectrum path for G and compare them"""
    oracle_cap = config.ORACLE_CAP if oracle_cap is None else oracle_cap
    enum_cap = config.ENUM_CAP if enum_cap is None else enum_cap
    start = time.perf_counter()
    report = VerificationReport(group=G.descriptor(), order=G.order)

    for label, spectrum in closed_form_paths(G):
        report.spectra[label] = spectrum
    if not report.spectra:
        report.skipped.append("closed form: group is outside both families")

    edges = None
    expr = structure_expr(G)
    if expr is not None:
        report.spectra["calculus"] = expr_spectrum(expr)
        vertices = vertex_count(expr)
        _record(
            report,
            "calculus_vertex_count",
            vertices == G.order,
            f"expression has {vertices} vertices, group order {G.order}",
        )
        edges = expr_edge_count(expr)
    else:
        report.skipped.append("calculus: no join/union decomposition is known for this group")

    if G.order <= min(oracle_cap, enum_cap):
        graph = build_power_graph(G, enum_cap)
        if edges is not None and edges != edge_count(graph):
            report.failures.append(f"expression has {edges} edges, power graph {edge_count(graph)}")
        edges = edge_count(graph)
        try:
            report.spectra["oracle"] = graph_spectrum(graph, oracle_cap)
        except NonIntegralSpectrumError as e:
            report.failures.append(f"oracle: {e}")
    else:
        report.skipped.append(f"oracle: order {G.order} above cap {min(oracle_cap, enum_cap)}")

    if not report.spectra:
        report.failures.append("no spectrum path applies")
    _compare_paths(report)
    _check_structure(report, edges)

    if isinstance(G.family, PrimePowerHomocyclic):
        family = G.family
        _check_zpmn_statements(report, ZpmnParams(family.p, family.m, family.n))
    _check_planar_containment(report, G)

    rs = rs_parameters(G)
    if rs is not None:
        if G.order <= enum_cap:
            _check_counts(report, rs[0], rs[1], enum_cap)
        else:
            report.skipped.append(f"counts: order {G.order} above enumeration cap {enum_cap}")

    report.elapsed = time.perf_counter() - start
    return report


def verify_many(
    groups: Sequence[GroupSpec],
    jobs: int = 1,
    oracle_cap: Optional[int] = None,
    enum_cap: Optional[int] = None,
    progress: bool = False,
) -> List[VerificationReport]:
    """verify_group over many groups; results keep the input order"""
    worker = partial(verify_group, oracle_cap=oracle_cap, enum_cap=enum_cap)
    show_bar = progress and tqdm is not None and len(groups) > 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = executor.map(worker, groups)
            if show_bar:
                results = tqdm(results, total=len(groups), desc="Verifying", unit="group")
            return list(results)
    iterator = tqdm(groups, desc="Verifying", unit="group") if show_bar else groups
    return [worker(G) for G in iterator]
