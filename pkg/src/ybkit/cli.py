"""Command-line front end.

Exit codes: 0 success, 1 negative result (verification failure or
non-isomorphic pair), 2 usage or input error, 3 desk-scale cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import braceforge, quotients, report, sconstruct, ybecore
from .census import census as census_entries
from .census import census_summary, table1_report
from .intlat import AbGroup, Overflow, subgroup_generated
from .permkit import CapExceeded
from .sconstruct import BadParams, SParams
from .quotients import BadDescriptor
from .braceforge import BadOrder, NotCycleBase
from .ybecore import FinSolution, SolutionError, TooLarge


class ParseError(Exception):
    pass


# ---------------------------------------------------------------------------
# file and flag plumbing


def write_solution(path: str | None, s: FinSolution, meta: dict | None) -> None:
    payload = ybecore.to_json_dict(s, meta)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_solution(path: str) -> tuple[FinSolution, dict]:
    try:
        data = json.loads(Path(path).read_text())
        sigma = data["sigma"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as err:
        raise ParseError(f"{path}: {err}") from err
    return ybecore.from_sigma(sigma), data.get("meta", {})


def parse_vec(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as err:
        raise ParseError(f"bad element {text!r}") from err


def parse_vec_list(text: str) -> tuple[tuple[int, ...], ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_vec(part) for part in text.split(";"))


def params_from_args(args) -> SParams:
    if getattr(args, "params_json", None):
        try:
            data = json.loads(Path(args.params_json).read_text())
        except (OSError, json.JSONDecodeError) as err:
            raise ParseError(f"{args.params_json}: {err}") from err
        try:
            return sconstruct.sparams_from_json(data)
        except (KeyError, TypeError) as err:
            raise ParseError(f"bad params file: {err}") from err
    if args.factors is None or args.n is None or args.c is None:
        raise ParseError("need --factors, --n and --c (or --params-json)")
    group = AbGroup(parse_vec(args.factors))
    return SParams(group, args.n, parse_vec_list(args.c))


def add_params_flags(sub) -> None:
    sub.add_argument("--factors", help="invariant factors of G, e.g. 4,2")
    sub.add_argument("--n", type=int, help="period of the Z_n coordinate")
    sub.add_argument("--c", help="constants, e.g. '0,0;1,0;1,0;2,1'")
    sub.add_argument("--params-json", help="JSON file with factors/n/c")


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    try:
        s, _ = read_solution(args.file)
    except SolutionError as err:
        print(f"verification failed: {err}")
        return 1
    print(f"size: {s.size}")
    print("braid: ok")
    print("involutive: ok")
    print("non-degenerate: ok")
    print(f"square-free: {'yes' if ybecore.is_square_free(s) else 'no'}")
    try:
        print(f"level: {ybecore.multipermutation_level(s)}")
    except ybecore.NotMultipermutation:
        print("level: not a multipermutation solution")
    print(f"indecomposable: {'yes' if ybecore.is_indecomposable(s) else 'no'}")
    print(f"uniconnected: {'yes' if ybecore.is_uniconnected(s) else 'no'}")
    print(f"|G|: {ybecore.permutation_group(s).order}")
    print(f"|Dis|: {ybecore.displacement_group(s).order}")
    return 0


def cmd_construct(args) -> int:
    if args.kind == "s":
        p = params_from_args(args)
        s = sconstruct.build_solution(p)
        meta = {"kind": "s", "params": sconstruct.sparams_to_json(p)}
    elif args.kind == "module":
        if args.k is None or args.r is None:
            raise ParseError("construct module needs --k and --r")
        p = sconstruct.module_construction(args.k, args.r)
        s = sconstruct.build_solution(p)
        meta = {"kind": "module", "k": args.k, "r": args.r,
                "params": sconstruct.sparams_to_json(p)}
    elif args.kind in ("brace-dihedral", "brace-quaternion"):
        if args.m is None:
            raise ParseError(f"construct {args.kind} needs --m")
        s = braceforge.cyclic_brace_family(args.kind.split("-")[1], args.m)
        meta = {"kind": args.kind, "m": args.m}
    elif args.kind == "semidirect":
        if None in (args.factors, args.n, args.alpha, args.g):
            raise ParseError(
                "construct semidirect needs --factors, --n, --alpha, --g")
        group = AbGroup(parse_vec(args.factors))
        rows = parse_vec_list(args.alpha)
        alpha = braceforge.matrix_automorphism(group, rows)
        brace = braceforge.semidirect_trivial(group, args.n, alpha)
        gparts = args.g.split(";")
        if len(gparts) != 2:
            raise ParseError("--g must look like 'VEC;I', e.g. '1,0;1'")
        gvec, gi = parse_vec(gparts[0]), int(gparts[1])
        g_idx = group.element_index(group.reduce(gvec)) * args.n + gi % args.n
        s = braceforge.rump_solution(brace, g_idx)
        meta = {"kind": "semidirect", "factors": list(group.factors),
                "n": args.n, "alpha": [list(r) for r in rows],
                "g": [list(gvec), gi]}
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown construct kind {args.kind}")
    write_solution(args.out, s, meta)
    return 0


def _descriptor_line(p: SParams, d) -> str:
    h = "{" + ",".join("(" + ",".join(str(x) for x in v) + ")"
                       for v in d.H.elements) + "}"
    size = d.m * (p.group.order // len(d.H.elements))
    return (f"theta(m={d.m}, H={h}, r=({','.join(str(x) for x in d.r)})) "
            f"quotient_size={size}")


def cmd_congruences(args) -> int:
    p = params_from_args(args)
    for d in quotients.enumerate_congruences(p):
        print(_descriptor_line(p, d))
    return 0


def cmd_quotient(args) -> int:
    p = params_from_args(args)
    sub = subgroup_generated(p.group, parse_vec_list(args.H or ""))
    d = quotients.CongruenceDescriptor(args.m, sub, parse_vec(args.r or ""))
    y = quotients.quotient_by(p, d)
    meta = {"kind": "quotient", "params": sconstruct.sparams_to_json(p),
            "descriptor": quotients.descriptor_to_json(d)}
    write_solution(args.out, y, meta)
    return 0


def cmd_iso(args) -> int:
    s1, _ = read_solution(args.a)
    s2, _ = read_solution(args.b)
    phi = ybecore.find_isomorphism(s1, s2)
    if phi is None:
        print("not isomorphic")
        return 1
    print("isomorphic:", " ".join(str(v) for v in phi))
    return 0


def _census_rows(summary: dict) -> list[list]:
    return [[m, report.type_label(t), count]
            for (m, t), count in summary["by_type"].items()]


def cmd_census(args) -> int:
    summary = census_summary(args.size, jobs=args.jobs)
    rows = _census_rows(summary)
    print(report.format_table(["m", "A", "count"], rows))
    print(f"total: {summary['total']}  abelian: {summary['abelian']}  "
          f"cyclic: {summary['cyclic']}")
    if args.emit:
        emit_dir = Path(args.emit)
        emit_dir.mkdir(parents=True, exist_ok=True)
        for entry in census_entries(args.size):
            meta = {"kind": "census", "size": entry.size, "m": entry.m,
                    "hnf": [list(r) for r in entry.lattice.hnf],
                    "r": list(entry.rbar)}
            write_solution(str(emit_dir / f"{entry.label()}.json"),
                           entry.solution(), meta)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"census_{args.size}"
        payload = dict(summary)
        payload["by_m"] = {str(k): v for k, v in summary["by_m"].items()}
        payload["by_type"] = {f"{m}:{report.type_label(t)}": v
                              for (m, t), v in summary["by_type"].items()}
        report.write_json(out / f"{stem}.json", payload)
        report.write_csv(out / f"{stem}.csv", ["m", "A", "count"], rows)
        report.save_census_figure(args.size, summary["by_type"],
                                  out / f"{stem}.png")
    return 0


def cmd_table1(args) -> int:
    rows = table1_report(args.max)
    table = [[r["size"], r["total"], r["abelian"], r["cyclic"],
              " ".join(f"{m}:{c}" for m, c in r["by_m"].items())]
             for r in rows]
    print(report.format_table(
        ["size", "total", "abelian", "cyclic", "by_m"], table))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        report.write_csv(out / "table1.csv",
                         ["size", "total", "abelian", "cyclic"],
                         [[r["size"], r["total"], r["abelian"], r["cyclic"]]
                          for r in rows])
        payload = [dict(r, by_m={str(k): v for k, v in r["by_m"].items()})
                   for r in rows]
        report.write_json(out / "table1.json", payload)
        report.save_table1_figure(rows, out / "table1.png")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybkit",
        description="Construct, verify and enumerate indecomposable "
                    "involutive Yang-Baxter solutions of level <= 2.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("verify", help="check a solution file")
    sub.add_argument("file")
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("construct", help="build a solution file")
    sub.add_argument("kind", choices=["s", "module", "brace-dihedral",
                                      "brace-quaternion", "semidirect"])
    add_params_flags(sub)
    sub.add_argument("--k", type=int, help="module scalar ring Z_k")
    sub.add_argument("--r", type=int, help="module rank")
    sub.add_argument("--m", type=int, help="power for the Z_{2^m} families")
    sub.add_argument("--alpha", help="automorphism matrix rows, e.g. '0,1;1,1'")
    sub.add_argument("--g", help="cycle-base element 'VEC;I', e.g. '1,0;1'")
    sub.add_argument("-o", "--out", help="output file (default stdout)")
    sub.set_defaults(func=cmd_construct)

    sub = subs.add_parser("congruences",
                          help="list all congruences of S(G x Z_n, c)")
    add_params_flags(sub)
    sub.set_defaults(func=cmd_congruences)

    sub = subs.add_parser("quotient", help="build a quotient solution")
    add_params_flags(sub)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--H", help="subgroup generators, e.g. '2,0;0,1'")
    sub.add_argument("--r", help="twist element, e.g. '1,0'")
    sub.add_argument("-o", "--out", help="output file (default stdout)")
    sub.set_defaults(func=cmd_quotient)

    sub = subs.add_parser("iso", help="test two solution files for isomorphism")
    sub.add_argument("a")
    sub.add_argument("b")
    sub.set_defaults(func=cmd_iso)

    sub = subs.add_parser("census", help="enumerate one size exhaustively")
    sub.add_argument("--size", type=int, required=True)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--emit", help="directory for per-solution JSON files")
    sub.add_argument("--out", help="directory for csv/json/png report")
    sub.set_defaults(func=cmd_census)

    sub = subs.add_parser("table1", help="census summary for sizes 1..max")
    sub.add_argument("--max", type=int, default=16)
    sub.add_argument("--out", help="directory for csv/json/png report")
    sub.set_defaults(func=cmd_table1)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TooLarge, CapExceeded, Overflow) as err:
        print(f"cap exceeded: {err}", file=sys.stderr)
        return 3
    except (ParseError, BadParams, BadDescriptor, BadOrder,
            NotCycleBase) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SolutionError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
