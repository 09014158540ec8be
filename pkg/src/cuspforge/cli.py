"""Command-line front-end.

Subcommands: invariants, convert, resolve, family gen|enumerate, verify,
ledger.  Exit codes: 0 success, 1 failed audit, 2 usage error.  `--json`
selects machine output; `-` as a file argument means stdout.  Output is
deterministic byte-for-byte for a fixed invocation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .divisor import dot_export, resolution_graph
from .errors import CuspforgeError
from .families import (
    FAMILY_IDS,
    CurveRecord,
    FamilySpec,
    enumerate_curves,
    generate,
)
from .hn import format_hn, parse_hn, standardize
from .invariants import (
    ZARISKI,
    PairList,
    alexander_polynomial,
    cusp_record,
    hn_from_zariski,
    hn_to_multiplicity,
    hn_to_puiseux_char,
    multiplicity_to_standard_hn,
    parse_multiplicity,
    parse_puiseux_char,
    puiseux_char_to_standard_hn,
    zariski_from_hn,
)
from .verify import (
    GENERIC,
    Q_ACYCLIC_CSTST,
    AuditReport,
    FibrationLedger,
    fibration_ledger,
    full_audit,
)

REPRESENTATIONS = ("hn", "mult", "char", "zariski")


def _int(token: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise ValueError(f"invalid integer {token!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(_int(tok.strip()) for tok in text.split(","))


def _parse_pair_list(text: str, kind: str) -> PairList:
    s = "".join(text.split())
    if not s:
        raise ValueError("empty pair list text")
    toks = re.findall(r"\((\d+),(\d+)\)", s)
    if ",".join(f"({a},{b})" for a, b in toks) != s:
        raise ValueError(f"invalid pair list text {text!r}")
    return PairList(kind, tuple((int(a), int(b)) for a, b in toks))


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_rows(rows: Sequence[tuple[str, str]]) -> None:
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        print(f"{key:<{width}}  {value}")


def _print_report(report: AuditReport) -> None:
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        flag = "PASS" if c.passed else "FAIL"
        print(f"{flag} {c.name:<{width}}  {c.lhs} {c.rhs}")
    failed = report.failed()
    if failed:
        print(f"FAILED ({len(failed)} of {len(report.checks)} checks)")
    else:
        print(f"ok ({len(report.checks)} checks)")


def _thread_cap() -> int:
    raw = os.environ.get("CUSPFORGE_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        n = int(raw, 10)
    except ValueError:
        n = 0
    if n < 1:
        raise ValueError(f"CUSPFORGE_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------- handlers


def _cmd_invariants(args: argparse.Namespace) -> int:
    if (args.hn is None) == (args.mult is None):
        raise ValueError("invariants needs exactly one of --hn or --mult")
    if args.hn is not None:
        std = standardize(parse_hn(args.hn))
    else:
        std = multiplicity_to_standard_hn(parse_multiplicity(args.mult))
    record = cusp_record(std)
    if args.json:
        _print_json(record.to_json_obj())
        return 0
    sg = record.semigroup
    _print_rows([
        ("hn", format_hn(record.hn)),
        ("mult", record.mult.reduced().to_text()),
        ("char", record.char.to_text()),
        ("puiseux", record.puiseux.to_text()),
        ("zariski", record.zariski.to_text()),
        ("semigroup", ",".join(str(g) for g in sg.generators)),
        ("gaps", ",".join(str(g) for g in sorted(sg.gaps))),
        ("alexander", ",".join(str(a) for a in alexander_polynomial(sg))),
        ("M", str(record.M)),
        ("I", str(record.I)),
    ])
    return 0


def _to_standard_hn(source: str, text: str):
    if source == "hn":
        return standardize(parse_hn(text))
    if source == "mult":
        return multiplicity_to_standard_hn(parse_multiplicity(text))
    if source == "char":
        return puiseux_char_to_standard_hn(parse_puiseux_char(text))
    return hn_from_zariski(_parse_pair_list(text, ZARISKI))


def _from_standard_hn(target: str, std) -> str:
    if target == "hn":
        return format_hn(std)
    if target == "mult":
        return hn_to_multiplicity(std).to_text()
    if target == "char":
        return hn_to_puiseux_char(std).to_text()
    return zariski_from_hn(std).to_text()


def _cmd_convert(args: argparse.Namespace) -> int:
    std = _to_standard_hn(args.source, args.text)
    print(_from_standard_hn(args.target, std))
    return 0


def _cmd_resolve(args: argparse.Namespace) -> int:
    std = standardize(parse_hn(args.hn))
    res = resolution_graph(std)
    if args.dot is not None:
        _write_text(args.dot, dot_export(res))
        return 0
    try:
        chain_text: Optional[str] = str(res.chain())
    except ValueError:
        chain_text = None
    if args.json:
        obj = {
            "hn": std.to_json_obj(),
            "weights": [str(w) for w in res.tree.weights],
            "edges": [[str(u), str(v)] for u, v in res.tree.edges],
            "curve_vertex": str(res.c_vertex),
            "multiplicities": [str(m) for m in res.mult.entries()],
            "chain": chain_text,
        }
        _print_json(obj)
        return 0
    adj = res.tree.adjacency()
    rows = [
        ("hn", format_hn(std)),
        ("vertices", str(len(res.tree))),
        ("weights", " ".join(f"v{i}:{w}" for i, w in enumerate(res.tree.weights))),
        ("edges", " ".join(f"v{u}-v{v}" for u, v in res.tree.edges)),
        ("curve", f"v{res.c_vertex}"),
        ("mult", res.mult.to_text()),
    ]
    if chain_text is not None:
        rows.append(("chain", chain_text))
    _print_rows(rows)
    return 0


def _curve_line(record: CurveRecord) -> str:
    name = str(record.family) if record.family is not None else "-"
    cusps = " + ".join(format_hn(std) for _, std in record.cusps)
    return f"{name:<12} degree {record.degree:<4} gamma {record.gamma:<3} cusps {cusps}"


def _cmd_family_gen(args: argparse.Namespace) -> int:
    spec = FamilySpec(args.id, tuple(args.params))
    record = generate(spec)
    report = full_audit(record) if args.audit else None
    if args.json:
        obj = record.to_json_obj()
        if report is not None:
            obj["audit"] = report.to_json_obj()
        _print_json(obj)
    else:
        rows = [
            ("family", str(spec)),
            ("degree", str(record.degree)),
            ("gamma", str(record.gamma)),
        ]
        for i, (raw, std) in enumerate(record.cusps, start=1):
            rows.append((f"cusp {i}", f"{format_hn(raw)}  (standard {format_hn(std)})"))
        _print_rows(rows)
        if report is not None:
            _print_report(report)
    return 0 if report is None or report.ok else 1


def _cmd_family_enumerate(args: argparse.Namespace) -> int:
    records = enumerate_curves(args.max_degree)
    reports: list[Optional[AuditReport]] = [None] * len(records)
    if args.audit and records:
        cap = _thread_cap()
        if cap <= 1:
            reports = [full_audit(r) for r in records]
        else:
            with ThreadPoolExecutor(max_workers=cap) as pool:
                reports = list(pool.map(full_audit, records))
    if args.json:
        curves = []
        for record, report in zip(records, reports):
            obj = record.to_json_obj()
            if report is not None:
                obj["audit_ok"] = report.ok
            curves.append(obj)
        _print_json({"curves": curves})
    else:
        for record, report in zip(records, reports):
            line = _curve_line(record)
            if report is not None:
                line += "  audit " + ("ok" if report.ok else "FAILED")
            print(line)
        print(f"{len(records)} curves with degree <= {args.max_degree}")
    if args.audit and any(r is not None and not r.ok for r in reports):
        return 1
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    explicit = args.degree is not None or args.gamma is not None or args.hn
    if args.family is not None:
        if explicit:
            raise ValueError("verify takes either --family or an explicit curve, not both")
        name = args.family[0]
        if name not in FAMILY_IDS:
            raise ValueError(f"unknown family {name!r}")
        spec = FamilySpec(name, tuple(_int(tok) for tok in args.family[1:]))
        report = full_audit(spec)
    else:
        if args.degree is None or args.gamma is None or not args.hn:
            raise ValueError("verify needs --family, or --degree, --gamma and at least one --hn")
        seqs = [parse_hn(text) for text in args.hn]
        record = CurveRecord.from_cusps(args.degree, args.gamma, seqs)
        report = full_audit(record)
    if args.json:
        _print_json(report.to_json_obj())
    else:
        _print_report(report)
    return 0 if report.ok else 1


def _cmd_ledger(args: argparse.Namespace) -> int:
    ledger = FibrationLedger(args.h, args.nu, args.sigmas, args.chis)
    report = fibration_ledger(ledger, args.mode)
    if args.json:
        _print_json(report.to_json_obj())
    else:
        _print_report(report)
    return 0 if report.ok else 1


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspforge",
        description="Exact-arithmetic invariants of plane-curve cusps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="full invariant record of one cusp")
    p.add_argument("--hn", help="HN pairs, e.g. '6/4,2/3'")
    p.add_argument("--mult", help="reduced multiplicity sequence, e.g. '4,2,2,2'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("convert", help="convert between cusp representations")
    p.add_argument("--from", dest="source", required=True, choices=REPRESENTATIONS)
    p.add_argument("--to", dest="target", required=True, choices=REPRESENTATIONS)
    p.add_argument("text", help="input in the --from representation")
    p.set_defaults(handler=_cmd_convert)

    p = sub.add_parser("resolve", help="dual graph of the minimal embedded resolution")
    p.add_argument("--hn", required=True, help="HN pairs, e.g. '13/4'")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="PATH", help="write DOT to PATH ('-' for stdout)")
    p.set_defaults(handler=_cmd_resolve)

    p = sub.add_parser("family", help="curve families")
    fam_sub = p.add_subparsers(dest="action", required=True)
    g = fam_sub.add_parser("gen", help="generate one family instance")
    g.add_argument("id", choices=FAMILY_IDS)
    g.add_argument("params", nargs="*", type=_int)
    g.add_argument("--json", action="store_true")
    g.add_argument("--audit", action="store_true")
    g.set_defaults(handler=_cmd_family_gen)
    e = fam_sub.add_parser("enumerate", help="all instances up to a degree bound")
    e.add_argument("--max-degree", required=True, type=_int)
    e.add_argument("--json", action="store_true")
    e.add_argument("--audit", action="store_true")
    e.set_defaults(handler=_cmd_family_enumerate)

    p = sub.add_parser("verify", help="run the full audit on a curve")
    p.add_argument("--family", nargs="+", metavar="ID|PARAM",
                   help="family id followed by its parameters")
    p.add_argument("--degree", type=_int)
    p.add_argument("--gamma", type=_int)
    p.add_argument("--hn", action="append", default=[],
                   help="one cusp; repeat for several")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("ledger", help="fibration counting identities")
    p.add_argument("--h", required=True, type=_int)
    p.add_argument("--nu", required=True, type=_int)
    p.add_argument("--sigmas", required=True, type=_int_list)
    p.add_argument("--chis", type=_int_list)
    p.add_argument("--mode", choices=(GENERIC, Q_ACYCLIC_CSTST), default=GENERIC)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_ledger)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except (CuspforgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
