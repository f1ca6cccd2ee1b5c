"""Join/union expressions over complete graphs

Grammar of the text form (join binds looser than union):

    expr   := term { "+" term }
    term   := factor { "u" factor }
    factor := [ count "*" ] atom
    atom   := "K" int | "(" expr ")"

A bare atom is itself; a counted atom or several factors make a DisjointUnion.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from utils import config
from utils.errors import CapExceededError, ParseError, SpectrumError
from utils.formula_utils import ZpmnParams, euler_phi_prime_power, rs_parameters
from utils.graph_utils import Graph
from utils.group_utils import GroupSpec, PrimePowerHomocyclic
from utils.spectrum_utils import (
    FactoredSpectrum,
    join_spectrum,
    spectrum_of_complete,
    union_spectrum,
)


@dataclass(frozen=True)
class Complete:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise SpectrumError(f"K_{self.k} has no vertices")


@dataclass(frozen=True)
class DisjointUnion:
    parts: Tuple[Tuple[int, "GraphExpr"], ...]

    def __post_init__(self):
        if not self.parts:
            raise SpectrumError("union needs at least one part")
        for count, _ in self.parts:
            if count < 1:
                raise SpectrumError(f"union copy count must be at least 1, got {count}")


@dataclass(frozen=True)
class Join:
    left: "GraphExpr"
    right: "GraphExpr"


GraphExpr = Union[Complete, DisjointUnion, Join]


def union_of(*parts: Tuple[int, GraphExpr]) -> DisjointUnion:
    return DisjointUnion(tuple(parts))


def vertex_count(e: GraphExpr) -> int:
    if isinstance(e, Complete):
        return e.k
    if isinstance(e, DisjointUnion):
        return sum(count * vertex_count(part) for count, part in e.parts)
    return vertex_count(e.left) + vertex_count(e.right)


def expr_edge_count(e: GraphExpr) -> int:
    if isinstance(e, Complete):
        return e.k * (e.k - 1) // 2
    if isinstance(e, DisjointUnion):
        return sum(count * expr_edge_count(part) for count, part in e.parts)
    cross = vertex_count(e.left) * vertex_count(e.right)
    return expr_edge_count(e.left) + expr_edge_count(e.right) + cross


def power_graph_expr_zpmn(p: int, m: int, n: int) -> GraphExpr:
    """K_1 + l(K_phi(p) + p^(n-1)(K_phi(p^2) + ... + p^(n-1) K_phi(p^m)))"""
    params = ZpmnParams(p, m, n)
    inner: GraphExpr = Complete(euler_phi_prime_power(p, m))
    for i in range(m - 1, 0, -1):
        inner = Join(Complete(euler_phi_prime_power(p, i)), union_of((p ** (n - 1), inner)))
    return Join(Complete(1), union_of((params.l, inner)))


def power_graph_expr_z2r4s(r: int, s: int) -> GraphExpr:
    """K_1 + (2^s(2^r-1) K_1 u (2^s-1)(K_1 + 2^(r+s-1) K_2))"""
    if r < 0:
        raise SpectrumError(f"r must be non-negative, got {r}")
    if s < 1:
        raise SpectrumError("s = 0 is Z_2^r; use power_graph_expr_zpmn(2, 1, r)")
    lobe = Join(Complete(1), union_of((2 ** (r + s - 1), Complete(2))))
    parts = []
    leaves = 2**s * (2**r - 1)
    if leaves:
        parts.append((leaves, Complete(1)))
    parts.append((2**s - 1, lobe))
    return Join(Complete(1), DisjointUnion(tuple(parts)))


def structure_expr(G: GroupSpec) -> Optional[GraphExpr]:
    """The decomposition of the power graph of G when it belongs to one of the two families"""
    if G.order == 1:
        return Complete(1)
    rs = rs_parameters(G)
    if rs is not None and rs[0] > 0:
        return power_graph_expr_z2r4s(*rs)
    if isinstance(G.family, PrimePowerHomocyclic):
        family = G.family
        return power_graph_expr_zpmn(family.p, family.m, family.n)
    return None


def expr_spectrum(e: GraphExpr) -> FactoredSpectrum:
    if isinstance(e, Complete):
        return spectrum_of_complete(e.k)
    if isinstance(e, DisjointUnion):
        return union_spectrum([(expr_spectrum(part), count) for count, part in e.parts])
    return join_spectrum(expr_spectrum(e.left), expr_spectrum(e.right))


def realize(e: GraphExpr, cap: Optional[int] = None) -> Graph:
    cap = config.ENUM_CAP if cap is None else cap
    size = vertex_count(e)
    if size > cap:
        raise CapExceededError("expression", size, cap)
    rows = [0] * size

    def emit(node: GraphExpr, offset: int) -> int:
        if isinstance(node, Complete):
            block = ((1 << node.k) - 1) << offset
            for v in range(offset, offset + node.k):
                rows[v] |= block & ~(1 << v)
            return node.k
        if isinstance(node, DisjointUnion):
            used = 0
            for count, part in node.parts:
                for _ in range(count):
                    used += emit(part, offset + used)
            return used
        left = emit(node.left, offset)
        right = emit(node.right, offset + left)
        left_mask = ((1 << left) - 1) << offset
        right_mask = ((1 << right) - 1) << (offset + left)
        for v in range(offset, offset + left):
            rows[v] |= right_mask
        for v in range(offset + left, offset + left + right):
            rows[v] |= left_mask
        return left + right

    emit(e, 0)
    return Graph(size, tuple(rows))


def print_expr(e: GraphExpr) -> str:
    """Canonical text; union parts always carry their count"""
    if isinstance(e, Complete):
        return f"K{e.k}"
    if isinstance(e, DisjointUnion):
        return " u ".join(f"{count}*{_atom_text(part)}" for count, part in e.parts)
    left, right = print_expr(e.left), print_expr(e.right)
    if _is_multi_union(e.left):
        left = f"({left})"
    if isinstance(e.right, Join) or _is_multi_union(e.right):
        right = f"({right})"
    return f"{left} + {right}"


def _is_multi_union(e: GraphExpr) -> bool:
    return isinstance(e, DisjointUnion) and len(e.parts) > 1


def _atom_text(e: GraphExpr) -> str:
    if isinstance(e, Complete):
        return print_expr(e)
    return f"({print_expr(e)})"


Token = Tuple[str, Union[int, str], int]


def tokenize(text: str) -> List[Token]:
    """Tokens as (kind, value, position); kinds are int, K, u, +, *, (, ), end"""
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("int", int(text[start:i]), start))
            continue
        if c in "Ku+*()":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self, kind: str) -> Token:
        token = self.peek()
        if token[0] != kind:
            found = "end of input" if token[0] == "end" else repr(token[1])
            raise ParseError(f"expected {kind!r}, found {found}", token[2])
        self.index += 1
        return token

    def expr(self) -> GraphExpr:
        node = self.term()
        while self.peek()[0] == "+":
            self.take("+")
            node = Join(node, self.term())
        return node

    def term(self) -> GraphExpr:
        factors = [self.factor()]
        while self.peek()[0] == "u":
            self.take("u")
            factors.append(self.factor())
        if len(factors) == 1 and factors[0][0] is None:
            return factors[0][1]
        return DisjointUnion(tuple((count or 1, atom) for count, atom in factors))

    def factor(self) -> Tuple[Optional[int], GraphExpr]:
        count = None
        if self.peek()[0] == "int":
            _, count, position = self.take("int")
            if count < 1:
                raise ParseError("copy count must be at least 1", position)
            self.take("*")
        return count, self.atom()

    def atom(self) -> GraphExpr:
        if self.peek()[0] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        self.take("K")
        _, k, position = self.take("int")
        if k < 1:
            raise ParseError(f"K{k} has no vertices", position)
        return Complete(k)


def parse_expr(text: str) -> GraphExpr:
    parser = _Parser(text)
    node = parser.expr()
    parser.take("end")
    return node
