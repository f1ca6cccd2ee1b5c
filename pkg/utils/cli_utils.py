import csv
import io
import json
import re
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from sympy import primerange

from utils.errors import GroupError, ParseError
from utils.group_utils import GroupSpec, make_group
from utils.spectrum_utils import FactoredSpectrum

_ATOM_RE = re.compile(r"^Z(\d+)(?:\^(\d+))?$")
_GRID_ITEM_RE = re.compile(r"^([a-z]+)\s*(=|<=)\s*(\d+)(?:\.\.(\d+))?$")

# Lower bounds for grid parameters left open by "name<=b" or omitted entirely
GRID_LOWER_BOUNDS = {"p": 2, "m": 1, "n": 1, "r": 0, "s": 1}


def parse_group_descriptor(text: str) -> GroupSpec:
    """Parse ``Z2^3 x Z4^2`` style descriptors; ``1`` or ``trivial`` is the trivial group"""
    compact = "".join(text.split())
    if compact in ("1", "trivial"):
        return make_group([])
    if not compact:
        raise ParseError("empty group descriptor", 0)
    factors: List[int] = []
    offset = 0
    for raw in text.split("x"):
        # position of the atom's first non-blank character in the original text
        position = offset + len(raw) - len(raw.lstrip())
        offset += len(raw) + 1
        atom = "".join(raw.split())
        match = _ATOM_RE.match(atom)
        if not match:
            raise ParseError(f"bad group atom {atom!r}, expected Z<k> or Z<k>^<e>", position)
        repeat = int(match.group(2)) if match.group(2) is not None else 1
        if repeat < 1:
            raise ParseError(f"repetition in {atom!r} must be at least 1", position)
        factors.extend([int(match.group(1))] * repeat)
    try:
        return make_group(factors)
    except GroupError as e:
        raise ParseError(str(e)) from None


def parse_int_tuple(text: str, names: Sequence[str]) -> Tuple[int, ...]:
    """Parse ``2,2,2`` into as many integers as there are names"""
    items = [item.strip() for item in text.split(",")]
    if len(items) != len(names):
        raise ParseError(f"expected {len(names)} values ({','.join(names)}), got {text!r}")
    try:
        return tuple(int(item) for item in items)
    except ValueError:
        raise ParseError(f"values must be integers: {text!r}") from None


def parse_grid(text: str, names: Sequence[str]) -> Tuple[Dict[str, List[int]], int]:
    """Parse ``p=2..3,m<=2,n=1,ordercap=300``; returns value lists and the order cap (0 = none)"""
    bounds: Dict[str, Tuple[int, int]] = {}
    order_cap = 0
    for item in filter(None, (part.strip() for part in text.split(","))):
        match = _GRID_ITEM_RE.match(item)
        if not match:
            raise ParseError(f"bad grid item {item!r}")
        name, op, low, high = match.group(1), match.group(2), match.group(3), match.group(4)
        if name == "ordercap":
            order_cap = int(low)
            continue
        if name not in names:
            raise ParseError(f"unknown grid parameter {name!r}, expected one of {list(names)}")
        if op == "<=":
            if high is not None:
                raise ParseError(f"bad grid item {item!r}")
            bounds[name] = (GRID_LOWER_BOUNDS[name], int(low))
        else:
            bounds[name] = (int(low), int(high) if high is not None else int(low))
    values = {}
    for name in names:
        if name not in bounds:
            raise ParseError(f"grid does not bound {name!r}")
        low, high = bounds[name]
        low = max(low, GRID_LOWER_BOUNDS[name])
        if name == "p":
            values[name] = list(primerange(low, high + 1))
        else:
            values[name] = list(range(low, high + 1))
        if not values[name]:
            raise ParseError(f"grid range for {name!r} is empty")
    return values, order_cap


def spectrum_text(s: FactoredSpectrum) -> str:
    return str(s)


def spectrum_latex(s: FactoredSpectrum) -> str:
    return "\\{" + ", ".join(f"{mu}^{{{mult}}}" for mu, mult in s.roots) + "\\}"


def _cell(value: Any, fmt: str) -> str:
    if isinstance(value, FactoredSpectrum):
        return spectrum_latex(value) if fmt == "latex-table" else spectrum_text(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "n/a"
    if isinstance(value, (list, tuple)):
        return "; ".join(str(v) for v in value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, FactoredSpectrum):
        return {str(mu): mult for mu, mult in value.roots}
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render_json(data: Any) -> str:
    return json.dumps(_json_value(data), indent=2)


def render_records(records: Iterable[Dict[str, Any]], columns: Sequence[str], fmt: str) -> str:
    """Render rows in one of the output formats; json keeps full structure"""
    records = list(records)
    if fmt == "json":
        return render_json([{c: r.get(c) for c in columns} for r in records])
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            writer.writerow([_cell(record.get(c), fmt) for c in columns])
        return buffer.getvalue().rstrip("\n")
    if fmt == "latex-table":
        lines = [
            "\\begin{tabular}{" + "l" * len(columns) + "}",
            " & ".join(c.replace("_", "\\_") for c in columns) + " \\\\",
            "\\hline",
        ]
        for record in records:
            lines.append(" & ".join(f"${_cell(record.get(c), fmt)}$" for c in columns) + " \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    if fmt == "plain":
        rows = [list(columns)] + [[_cell(r.get(c), fmt) for c in columns] for r in records]
        widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
        return "\n".join(
            "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
            for row in rows
        )
    raise ValueError(f"unknown output format {fmt!r}")
