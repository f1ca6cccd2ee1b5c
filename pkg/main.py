#!/usr/bin/env python3
"""
Power Graph Spectra
Laplacian spectra of power graphs of finite abelian p-groups: closed forms,
join/union calculus and a brute-force exact oracle, cross-checked.
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

from utils import config
from utils.cli_utils import (
    parse_grid,
    parse_group_descriptor,
    parse_int_tuple,
    render_json,
    render_records,
)
from utils.errors import CapExceededError, NonIntegralSpectrumError, PowerGraphError
from utils.expr_utils import (
    expr_edge_count,
    expr_spectrum,
    parse_expr,
    power_graph_expr_z2r4s,
    power_graph_expr_zpmn,
    print_expr,
    realize,
    structure_expr,
    vertex_count,
)
from utils.formula_utils import (
    ZpmnParams,
    closed_form_paths,
    count_order2_z2r4s,
    count_order4_z2r4s,
    degree_class_counts_z2r4s,
    distinct_eigenvalue_count_zpmn,
    dropped_terms,
    group_orders_contained,
    is_flower_zpmn,
    is_planar_power_graph_abelian,
    is_power_graph_complete,
    spectrum_containment_zpmn,
    spectrum_from_terms,
    z2r4s_terms,
    zpmn_terms,
)
from utils.graph_utils import build_power_graph, format_edge_list
from utils.group_utils import GroupSpec, PrimePowerHomocyclic, TwoFour, group_z2r4s, group_zpmn
from utils.oracle_utils import brute_spectrum, enumerate_z2r4s_counts, verify_many

try:
    from tqdm import tqdm
except ImportError:
    tqdm = None

SPECTRUM_COLUMNS = ["group", "source", "vertices", "edges", "spectrum", "dropped_factors"]
VERIFY_COLUMNS = ["group", "order", "status", "paths", "failures", "deviations"]
CLASSIFY_COLUMNS = [
    "group",
    "complete",
    "planar",
    "flower",
    "laplacian_integral",
    "spectrum_containment",
]
COUNTS_COLUMNS = ["quantity", "formula", "enumerated", "match"]
PMN_TABLE_COLUMNS = ["p", "m", "n", "order", "distinct", "containment", "spectrum"]
RS_TABLE_COLUMNS = ["r", "s", "order", "distinct", "spectrum"]


class UsageError(Exception):
    pass


def echo(message: str, err: bool = False) -> None:
    """Print without breaking an active progress bar"""
    stream = sys.stderr if err else sys.stdout
    if tqdm:
        tqdm.write(message, file=stream)
    else:
        print(message, file=stream)


def emit(record: Dict[str, Any], columns: Sequence[str], fmt: str) -> None:
    if fmt == "json":
        echo(render_json(record))
    else:
        echo(render_records([record], columns, fmt))


def _pmn(text: str) -> ZpmnParams:
    return ZpmnParams(*parse_int_tuple(text, ("p", "m", "n")))


def _rs(text: str) -> tuple:
    r, s = parse_int_tuple(text, ("r", "s"))
    group_z2r4s(r, s)
    return r, s


def _group_from_args(args) -> GroupSpec:
    if getattr(args, "group", None):
        return parse_group_descriptor(args.group)
    if getattr(args, "pmn", None):
        params = _pmn(args.pmn)
        return group_zpmn(params.p, params.m, params.n)
    if getattr(args, "rs", None):
        return group_z2r4s(*_rs(args.rs))
    raise UsageError("a group is required (--group, --pmn or --rs)")


def _closed_form_record(G: GroupSpec) -> Optional[Dict[str, Any]]:
    family = G.family
    if isinstance(family, PrimePowerHomocyclic):
        source, terms = "closed_form:zpmn", zpmn_terms(ZpmnParams(family.p, family.m, family.n))
    elif isinstance(family, TwoFour):
        source, terms = "closed_form:z2r4s", z2r4s_terms(family.r, family.s)
    else:
        return None
    spectrum = spectrum_from_terms(terms)
    return {
        "group": G.descriptor(),
        "source": source,
        "vertices": G.order,
        "edges": spectrum.trace // 2,
        "spectrum": spectrum,
        "dropped_factors": [f"({t.provenance})^0" for t in dropped_terms(terms)],
    }


def _spectrum_record(args) -> Dict[str, Any]:
    if args.expr:
        expr = parse_expr(args.expr)
        return {
            "group": print_expr(expr),
            "source": "calculus",
            "vertices": vertex_count(expr),
            "edges": expr_edge_count(expr),
            "spectrum": expr_spectrum(expr),
            "dropped_factors": [],
        }
    G = _group_from_args(args)
    record = _closed_form_record(G)
    if record is not None:
        return record
    expr = structure_expr(G)
    if expr is not None:
        spectrum, source = expr_spectrum(expr), "calculus"
    else:
        try:
            spectrum, source = brute_spectrum(G, args.oracle_cap), "oracle"
        except CapExceededError as e:
            raise UsageError(f"no spectrum path applies to {G}: {e}") from None
    return {
        "group": G.descriptor(),
        "source": source,
        "vertices": G.order,
        "edges": spectrum.trace // 2,
        "spectrum": spectrum,
        "dropped_factors": [],
    }


def cmd_spectrum(args) -> int:
    try:
        record = _spectrum_record(args)
    except NonIntegralSpectrumError as e:
        echo(f"Oracle found a non-integral spectrum: {e}", err=True)
        return config.EXIT_FAIL
    emit(record, SPECTRUM_COLUMNS, args.format)
    if args.verbose:
        for factor in record["dropped_factors"]:
            echo(f"Dropped zero-multiplicity factor {factor}", err=True)
    return config.EXIT_OK


def cmd_structure(args) -> int:
    G = None
    if args.expr:
        expr = parse_expr(args.expr)
    elif args.pmn:
        params = _pmn(args.pmn)
        G = group_zpmn(params.p, params.m, params.n)
        expr = power_graph_expr_zpmn(params.p, params.m, params.n)
    elif args.rs:
        G = group_z2r4s(*_rs(args.rs))
        expr = power_graph_expr_z2r4s(*_rs(args.rs))
    else:
        G = parse_group_descriptor(args.group)
        expr = structure_expr(G)
        if expr is None and not args.edges:
            raise UsageError(f"no join/union decomposition is known for {G}")
    if args.edges:
        graph = realize(expr) if G is None else build_power_graph(G)
        sys.stdout.write(format_edge_list(graph))
        return config.EXIT_OK
    echo(print_expr(expr))
    if args.verbose:
        echo(f"{vertex_count(expr)} vertices, {expr_edge_count(expr)} edges", err=True)
    return config.EXIT_OK


def _grid_groups(text: str, names: Sequence[str]) -> List[GroupSpec]:
    values, order_cap = parse_grid(text, names)
    groups = []
    build = group_zpmn if len(names) == 3 else group_z2r4s
    for combo in product(*(values[name] for name in names)):
        G = build(*combo)
        if not order_cap or G.order <= order_cap:
            groups.append(G)
    return groups


def cmd_verify(args) -> int:
    groups: List[GroupSpec] = []
    for text in args.group or []:
        groups.append(parse_group_descriptor(text))
    for text in args.pmn or []:
        params = _pmn(text)
        groups.append(group_zpmn(params.p, params.m, params.n))
    for text in args.rs or []:
        groups.append(group_z2r4s(*_rs(text)))
    if args.all_pmn:
        groups.extend(_grid_groups(args.all_pmn, ("p", "m", "n")))
    if args.all_rs:
        groups.extend(_grid_groups(args.all_rs, ("r", "s")))
    if not groups:
        raise UsageError("nothing to verify")

    reports = verify_many(
        groups,
        jobs=args.jobs,
        oracle_cap=args.oracle_cap,
        enum_cap=args.enum_cap,
        progress=True,
    )
    if args.format == "json":
        echo(render_json([report.to_json(include_timing=args.timing) for report in reports]))
    else:
        records = [
            {
                "group": report.group,
                "order": report.order,
                "status": report.status,
                "paths": sorted(report.spectra),
                "failures": report.failures,
                "deviations": report.deviations,
            }
            for report in reports
        ]
        echo(render_records(records, VERIFY_COLUMNS, args.format))

    if args.verbose:
        for report in reports:
            mark = "✓" if report.passed else "✗"
            paths = ", ".join(sorted(report.spectra))
            echo(f"{mark} {report.group} -> {report.status} ({paths})", err=True)
            for failure in report.failures:
                echo(f"    failure: {failure}", err=True)
            for deviation in report.deviations:
                echo(f"    deviation: {deviation}", err=True)
    failed = sum(not report.passed for report in reports)
    echo(f"\nResults: {len(reports) - failed} passed, {failed} failed", err=True)
    return config.EXIT_FAIL if failed else config.EXIT_OK


def cmd_classify(args) -> int:
    G = _group_from_args(args)
    spectrum, integral = None, None
    paths, expr = closed_form_paths(G), structure_expr(G)
    if paths:
        spectrum = paths[0][1]
    elif expr is not None:
        spectrum = expr_spectrum(expr)
    else:
        try:
            spectrum = brute_spectrum(G, args.oracle_cap)
        except CapExceededError:
            pass
        except NonIntegralSpectrumError:
            integral = False
    if spectrum is not None:
        integral = True
    flower = None
    if isinstance(G.family, PrimePowerHomocyclic):
        family = G.family
        flower = is_flower_zpmn(ZpmnParams(family.p, family.m, family.n))
    record = {
        "group": G.descriptor(),
        "complete": is_power_graph_complete(G),
        "planar": is_planar_power_graph_abelian(G),
        "flower": flower,
        "laplacian_integral": integral,
        "spectrum_containment": (
            group_orders_contained(G, spectrum) if spectrum is not None else None
        ),
    }
    if args.format == "plain":
        for key in CLASSIFY_COLUMNS[1:]:
            value = record[key]
            shown = "n/a" if value is None else ("yes" if value else "no")
            echo(f"{key}={shown}")
    else:
        emit(record, CLASSIFY_COLUMNS, args.format)
    return config.EXIT_OK


def cmd_counts(args) -> int:
    r, s = _rs(args.rs)
    deg1, deg_big = degree_class_counts_z2r4s(r, s)
    formulas = {
        "order2": count_order2_z2r4s(r, s),
        "order4": count_order4_z2r4s(r, s),
        "deg1": deg1,
        "degBig": deg_big,
    }
    enumerated: Dict[str, Optional[int]] = dict.fromkeys(formulas)
    cap = config.ENUM_CAP if args.enum_cap is None else args.enum_cap
    if 2 ** (r + 2 * s) <= cap:
        census = enumerate_z2r4s_counts(r, s, cap)
        enumerated = {
            "order2": census.order2,
            "order4": census.order4,
            "deg1": census.deg1,
            "degBig": census.deg_big,
        }
    elif args.verbose:
        echo(f"Order {2 ** (r + 2 * s)} is above the enumeration cap {cap}", err=True)
    rows = [
        {
            "quantity": name,
            "formula": value,
            "enumerated": enumerated[name],
            "match": None if enumerated[name] is None else enumerated[name] == value,
        }
        for name, value in formulas.items()
    ]
    if args.format == "json":
        echo(render_json({"r": r, "s": s, "counts": rows}))
    else:
        echo(render_records(rows, COUNTS_COLUMNS, args.format))
    mismatched = any(row["match"] is False for row in rows)
    return config.EXIT_FAIL if mismatched else config.EXIT_OK


def pmn_table_row(params: ZpmnParams) -> Dict[str, Any]:
    spectrum = spectrum_from_terms(zpmn_terms(params))
    return {
        "p": params.p,
        "m": params.m,
        "n": params.n,
        "order": params.order,
        "distinct": distinct_eigenvalue_count_zpmn(params).actual,
        "containment": spectrum_containment_zpmn(params),
        "spectrum": spectrum,
    }


def rs_table_row(rs: tuple) -> Dict[str, Any]:
    r, s = rs
    spectrum = spectrum_from_terms(z2r4s_terms(r, s))
    return {
        "r": r,
        "s": s,
        "order": 2 ** (r + 2 * s),
        "distinct": spectrum.distinct_count,
        "spectrum": spectrum,
    }


def _map_rows(function, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(function, items))
    return [function(item) for item in items]


def cmd_table(args) -> int:
    if args.pmn or args.pmn_grid:
        if args.pmn:
            items = [_pmn(args.pmn)]
        else:
            values, order_cap = parse_grid(args.pmn_grid, ("p", "m", "n"))
            items = [
                ZpmnParams(p, m, n)
                for p, m, n in product(values["p"], values["m"], values["n"])
                if not order_cap or p ** (m * n) <= order_cap
            ]
        rows, columns = _map_rows(pmn_table_row, items, args.jobs), PMN_TABLE_COLUMNS
    else:
        if args.rs:
            items = [_rs(args.rs)]
        else:
            values, order_cap = parse_grid(args.rs_grid, ("r", "s"))
            items = [
                (r, s)
                for r, s in product(values["r"], values["s"])
                if not order_cap or 2 ** (r + 2 * s) <= order_cap
            ]
        rows, columns = _map_rows(rs_table_row, items, args.jobs), RS_TABLE_COLUMNS
    echo(render_records(rows, columns, args.format))
    return config.EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=config.OUTPUT_FORMATS,
        default=config.DEFAULT_FORMAT,
        help="Output format (default: json)",
    )
    common.add_argument("--verbose", "-v", action="store_true", help="Verbose output")

    parser = argparse.ArgumentParser(description="Power Graph Spectra")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum of a group")
    source = spectrum.add_mutually_exclusive_group(required=True)
    source.add_argument("--group", help='Group descriptor, e.g. "Z2^2 x Z4"')
    source.add_argument("--pmn", metavar="P,M,N", help="The group Z_(p^m)^n")
    source.add_argument("--rs", metavar="R,S", help="The group Z_2^r x Z_4^s")
    source.add_argument("--expr", help='Join/union expression, e.g. "K1 + 3*K2"')
    spectrum.add_argument("--oracle-cap", type=int, help="Largest order for the brute-force oracle")
    spectrum.set_defaults(func=cmd_spectrum)

    structure = sub.add_parser("structure", parents=[common], help="Join/union decomposition")
    shape = structure.add_mutually_exclusive_group(required=True)
    shape.add_argument("--group", help="Group descriptor")
    shape.add_argument("--pmn", metavar="P,M,N")
    shape.add_argument("--rs", metavar="R,S")
    shape.add_argument("--expr", help="Expression to print in canonical form")
    structure.add_argument(
        "--edges", action="store_true", help='Print the edge list, one "u v" pair per line'
    )
    structure.set_defaults(func=cmd_structure)

    verify = sub.add_parser("verify", parents=[common], help="Cross-check all spectrum paths")
    verify.add_argument("--group", action="append", help="Group descriptor (repeatable)")
    verify.add_argument("--pmn", action="append", metavar="P,M,N", help="Repeatable")
    verify.add_argument("--rs", action="append", metavar="R,S", help="Repeatable")
    verify.add_argument("--all-pmn", metavar="GRID", help='e.g. "p<=5,m<=3,n<=3,ordercap=300"')
    verify.add_argument("--all-rs", metavar="GRID", help='e.g. "r<=5,s<=3,ordercap=300"')
    verify.add_argument("--oracle-cap", type=int, help="Largest order for the brute-force oracle")
    verify.add_argument("--enum-cap", type=int, help="Largest order that is enumerated")
    verify.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    verify.add_argument("--timing", action="store_true", help="Include elapsed time in reports")
    verify.set_defaults(func=cmd_verify)

    classify = sub.add_parser("classify", parents=[common], help="Structural classifiers")
    target = classify.add_mutually_exclusive_group(required=True)
    target.add_argument("--group", help="Group descriptor")
    target.add_argument("--pmn", metavar="P,M,N")
    target.add_argument("--rs", metavar="R,S")
    classify.add_argument("--oracle-cap", type=int, help="Largest order for the brute-force oracle")
    classify.set_defaults(func=cmd_classify)

    counts = sub.add_parser("counts", parents=[common], help="Order and degree class counts")
    counts.add_argument("--rs", required=True, metavar="R,S")
    counts.add_argument("--enum-cap", type=int, help="Largest order that is enumerated")
    counts.set_defaults(func=cmd_counts)

    table = sub.add_parser("table", parents=[common], help="Closed-form spectra over a grid")
    grid = table.add_mutually_exclusive_group(required=True)
    grid.add_argument("--pmn", metavar="P,M,N")
    grid.add_argument("--pmn-grid", metavar="GRID", help='e.g. "p=2..3,m=1..2,n=1..2"')
    grid.add_argument("--rs", metavar="R,S")
    grid.add_argument("--rs-grid", metavar="GRID", help='e.g. "r=0..2,s=1..2"')
    table.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    table.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, PowerGraphError) as e:
        echo(f"Error: {e}", err=True)
        return config.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
