"""Finite abelian groups as direct products of cyclic groups Z_k, written additively"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import divisors, factorint

from utils import config
from utils.errors import CapExceededError, GroupError

GroupElement = Tuple[int, ...]


@dataclass(frozen=True)
class PrimePowerHomocyclic:
    """Z_{p^m}^n"""

    p: int
    m: int
    n: int


@dataclass(frozen=True)
class TwoFour:
    """Z_2^r x Z_4^s with s >= 1"""

    r: int
    s: int


@dataclass(frozen=True)
class General:
    pass


Family = Union[PrimePowerHomocyclic, TwoFour, General]


@dataclass(frozen=True)
class GroupSpec:
    factors: Tuple[int, ...]
    family: Family = General()

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    @property
    def identity(self) -> GroupElement:
        return (0,) * len(self.factors)

    def descriptor(self) -> str:
        """Canonical text form, e.g. ``Z2^2 x Z4``; the trivial group is ``1``"""
        if not self.factors:
            return "1"
        atoms = []
        for factor, run in itertools.groupby(self.factors):
            count = len(list(run))
            atoms.append(f"Z{factor}" if count == 1 else f"Z{factor}^{count}")
        return " x ".join(atoms)

    def __str__(self) -> str:
        return self.descriptor()


def _prime_power(value: int) -> Optional[Tuple[int, int]]:
    factored = factorint(value)
    if len(factored) != 1:
        return None
    ((p, m),) = factored.items()
    return p, m


def _detect_family(factors: Tuple[int, ...]) -> Family:
    if not factors:
        return General()
    if len(set(factors)) == 1:
        pp = _prime_power(factors[0])
        if pp is not None:
            return PrimePowerHomocyclic(p=pp[0], m=pp[1], n=len(factors))
    r = 0
    while r < len(factors) and factors[r] == 2:
        r += 1
    tail = factors[r:]
    if tail and all(f == 4 for f in tail):
        return TwoFour(r=r, s=len(tail))
    return General()


def make_group(factors: Sequence[int]) -> GroupSpec:
    """Build a GroupSpec, keeping the factor order for element indexing"""
    checked = []
    for factor in factors:
        if isinstance(factor, bool) or not isinstance(factor, int):
            raise GroupError(f"cyclic factor must be an integer, got {factor!r}")
        if factor < 2:
            raise GroupError(f"cyclic factor must be at least 2, got {factor}")
        checked.append(factor)
    normalized = tuple(checked)
    return GroupSpec(factors=normalized, family=_detect_family(normalized))


def group_zpmn(p: int, m: int, n: int) -> GroupSpec:
    if m < 1 or n < 1:
        raise GroupError(f"Z_(p^m)^n needs m, n >= 1, got m={m}, n={n}")
    return make_group([p**m] * n)


def group_z2r4s(r: int, s: int) -> GroupSpec:
    if r < 0 or s < 1:
        raise GroupError(f"Z_2^r x Z_4^s needs r >= 0 and s >= 1, got r={r}, s={s}")
    return make_group([2] * r + [4] * s)


def check_element(G: GroupSpec, a: Sequence[int]) -> GroupElement:
    """Validate coordinates of an element of G and return them as a tuple"""
    a = tuple(a)
    if len(a) != len(G.factors):
        raise GroupError(f"element {a} has {len(a)} coordinates, {G} needs {len(G.factors)}")
    for coord, factor in zip(a, G.factors):
        if isinstance(coord, bool) or not isinstance(coord, int):
            raise GroupError(f"coordinate {coord!r} of {a} is not an integer")
        if not 0 <= coord < factor:
            raise GroupError(f"coordinate {coord} of {a} is out of range for Z{factor}")
    return a


def add(G: GroupSpec, a: GroupElement, b: GroupElement) -> GroupElement:
    return tuple((x + y) % f for x, y, f in zip(a, b, G.factors))


def scale(G: GroupSpec, k: int, a: GroupElement) -> GroupElement:
    return tuple((k * x) % f for x, f in zip(a, G.factors))


def elements(G: GroupSpec, cap: Optional[int] = None) -> Iterator[GroupElement]:
    """All elements in lexicographic coordinate order"""
    cap = config.ENUM_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(f"group {G}", G.order, cap)
    return itertools.product(*(range(f) for f in G.factors))


def element_order(G: GroupSpec, a: Sequence[int]) -> int:
    a = check_element(G, a)
    return math.lcm(*(f // math.gcd(f, x) for x, f in zip(a, G.factors))) if a else 1


def cyclic_subgroup(G: GroupSpec, a: Sequence[int]) -> List[GroupElement]:
    """The multiples 0*a, 1*a, ..., (|a|-1)*a"""
    a = check_element(G, a)
    return [scale(G, k, a) for k in range(element_order(G, a))]


def group_spectrum(G: GroupSpec, cap: Optional[int] = None) -> Tuple[int, ...]:
    """The set of element orders, ascending"""
    cap = config.ENUM_CAP if cap is None else cap
    if G.order <= cap:
        return tuple(sorted({element_order(G, a) for a in elements(G, cap)}))
    return tuple(divisors(G.exponent))


def order_class_counts(G: GroupSpec, cap: Optional[int] = None) -> Dict[int, int]:
    counts = Counter(element_order(G, a) for a in elements(G, cap))
    return dict(sorted(counts.items()))


def is_power_of(G: GroupSpec, a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff b = k*a for some k >= 0"""
    b = check_element(G, b)
    return b in cyclic_subgroup(G, a)


def generated_subgroup(G: GroupSpec, a: Sequence[int]) -> FrozenSet[GroupElement]:
    return frozenset(cyclic_subgroup(G, a))


def elementary_divisors(G: GroupSpec) -> Tuple[int, ...]:
    """Prime-power cyclic factors of G, ascending"""
    parts = []
    for factor in G.factors:
        parts.extend(p**e for p, e in factorint(factor).items())
    return tuple(sorted(parts))


def invariant_factors(G: GroupSpec) -> Tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... | d_k with d_1 >= 2"""
    by_prime: Dict[int, List[int]] = {}
    for q in elementary_divisors(G):
        ((p, _),) = factorint(q).items()
        by_prime.setdefault(p, []).append(q)
    length = max((len(powers) for powers in by_prime.values()), default=0)
    result = [1] * length
    for powers in by_prime.values():
        # largest powers go to the last invariant factor
        for offset, q in enumerate(sorted(powers, reverse=True)):
            result[length - 1 - offset] *= q
    return tuple(result)


def is_cyclic(G: GroupSpec) -> bool:
    return len(invariant_factors(G)) <= 1
