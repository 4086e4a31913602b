"""Command line front end: ``polycat <command> ...``.

Selectors name a quiver: ``e6``, ``e7``, ``e8``, ``d:n`` (the punctured model
Gamma^n_{n-3,1,1}), ``dt:n`` (centrally symmetric triples in the 2n-gon),
``a2:r`` (Gamma^{r+4}_{r,0,0}) or ``custom`` with ``--r --s --t --m``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from pathlib import Path

from . import f4 as f4mod
from .mesh import NotClusterCategory, ext_table
from .polygon import SpecError, parse_diagonal
from .quiver import QuiverError, build_gamma_Dn_triples, gamma_for
from .tilting import (
    ClusterModel, Configuration, ConsistencyError, census, classify, complements, default_workers,
    exchange_graph, mutate,
)
from .verify import report, run

E_TYPES = {"e6": (7, 1, 2, 2), "e7": (10, 1, 2, 3), "e8": (16, 1, 2, 4)}
E6_CENSUS = {"total": 833, "long_paired": 350, "short_1": 224, "short_2": 175, "short_0": 84}


class SelectorError(ValueError):
    pass


def resolve(selector: str, args=None):
    """Translate a selector into a translation quiver."""
    sel = selector.strip().lower()
    if sel in E_TYPES:
        return gamma_for(*E_TYPES[sel])
    m = re.fullmatch(r"(d|dt|a2|a)[:]?(\d+)", sel)
    if m:
        kind, n = m[1], int(m[2])
        if kind == "d":
            if n < 4:
                raise SelectorError("d:n needs n >= 4")
            return gamma_for(n, n - 3, 1, 1, relaxed=True)
        if kind == "dt":
            return build_gamma_Dn_triples(n)
        return gamma_for(n + 4, n, 0, 0)
    if sel == "custom":
        if args is None or None in (args.r, args.s, args.t, args.m):
            raise SelectorError("custom needs --r, --s, --t and --m")
        return gamma_for(args.m, args.r, args.s, args.t, relaxed=args.relaxed)
    raise SelectorError(f"unknown selector {selector!r}; use e6|e7|e8|d:n|dt:n|a2:r|custom")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _model(args) -> ClusterModel:
    q = resolve(args.selector, args)
    table = ext_table(q, W=getattr(args, "window", None))
    return ClusterModel(q, table, workers=args.threads)


def _read_config(text: str, m: int = 7) -> Configuration:
    path = Path(text)
    raw = path.read_text(encoding="utf-8") if path.exists() else text
    items = json.loads(raw)
    return Configuration.of(parse_diagonal(s, m) for s in items)


# -- commands --------------------------------------------------------------


def cmd_build(args) -> int:
    _write(resolve(args.selector, args).to_json(), args.out)
    return 0


def cmd_ext_table(args) -> int:
    q = resolve(args.selector, args)
    tab = ext_table(q, W=args.window)
    if args.hammock:
        named = {str(v).replace(" ", ""): v for v in q.vertices}
        if q.spec is not None:
            x = parse_diagonal(args.hammock, q.spec.m)
        else:
            x = named.get(args.hammock.replace(" ", ""))
        if x not in q.index:
            raise SpecError(f"{args.hammock} is not a vertex of {q.name}")
        row = {str(y): tab(x, y) for y in q.vertices if tab(x, y)}
        if args.format == "csv":
            text = "target,ext\n" + "".join(f"{y},{v}\n" for y, v in row.items())
        else:
            text = json.dumps({"schema": 1, "source": str(x), "hammock": row})
        _write(text, args.out)
        return 0
    _write(tab.to_csv() if args.format == "csv" else tab.to_json(), args.out)
    return 0


def cmd_enumerate(args) -> int:
    model = _model(args)
    configs = model.configurations
    if args.out:
        Path(args.out).write_text(json.dumps({"schema": 1, "quiver": model.q.name,
                                              "configurations": [c.to_json() for c in configs]}),
                                  encoding="utf-8")
    lines = [f"{len(configs)} configurations"]
    status = 0
    if args.selector.lower() == "e6":
        cen = census(configs)
        sym = f4mod.rho_symmetric_configs(model)
        kinds = Counter(sc.kind for sc in sym)
        lines.append(f"long paired {cen['long_paired']}; short paired 1/2/0: "
                     f"{cen['short_1']}/{cen['short_2']}/{cen['short_0']}")
        lines.append(f"F4: {len(sym)} = {kinds['T']}+{kinds['C']}+{kinds['L']}")
        if cen != E6_CENSUS:
            lines.append(f"census mismatch: expected {E6_CENSUS}")
            status = 1
    if args.list:
        lines += [json.dumps(c.to_json()) for c in configs]
    _write("\n".join(lines), None)
    return status


def cmd_classify(args) -> int:
    model = ClusterModel(gamma_for(7, 1, 2, 2), workers=args.threads)
    if args.config:
        c = _read_config(args.config)
        if not model.is_configuration(c):
            print(f"not a cluster configuration: {c}", file=sys.stderr)
            return 1
        cl = classify(c)
        _write(json.dumps({"config": c.to_json(), "family": cl.family,
                           "long_paired": cl.has_long_paired, "short_paired": cl.short_paired_count}), None)
        return 0
    _write(json.dumps(census(model.configurations)), None)
    return 0


def cmd_mutate(args) -> int:
    model = ClusterModel(gamma_for(7, 1, 2, 2), workers=args.threads)
    c = _read_config(args.config)
    if not model.is_configuration(c):
        print(f"not a cluster configuration: {c}", file=sys.stderr)
        return 1
    if not 0 <= args.slot < len(c):
        print(f"slot must be in 0..{len(c) - 1}", file=sys.stderr)
        return 2
    d = c.members[args.slot]
    _, star = complements(model, c, d)
    new = mutate(model, c, d)
    _write(json.dumps({"removed": str(d), "added": str(star), "config": new.to_json()}), None)
    return 0


def cmd_exchange_graph(args) -> int:
    g = exchange_graph(_model(args))
    if args.dot:
        Path(args.dot).write_text(g.to_dot(), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(g.to_json(), encoding="utf-8")
    _write(f"{len(g.vertices)} vertices, {len(g.edges)} edges, degrees {sorted(g.degrees())}, "
           f"connected {g.is_connected()}", None)
    return 0


def cmd_f4(args) -> int:
    model = ClusterModel(gamma_for(7, 1, 2, 2), workers=args.threads)
    sym = f4mod.rho_symmetric_configs(model)
    out = {}
    if args.census or not (args.exchange_graph or args.moves):
        kinds = Counter(sc.kind for sc in sym)
        out["census"] = {"total": len(sym), **{k: kinds[k] for k in f4mod.KINDS}}
        out["rho_orbits"] = f4mod.orbit_counts(model.q)
    if args.moves:
        moves = f4mod.all_moves(model, sym)
        out["moves"] = f4mod.move_table(moves)
        out["unmatched_moves"] = sum(not mv.pattern_ok for mv in moves)
    if args.exchange_graph:
        g = f4mod.f4_exchange_graph(model, sym)
        Path(args.exchange_graph).write_text(g.to_dot(), encoding="utf-8")
        out["exchange_graph"] = {"vertices": len(g.vertices), "edges": len(g.edges),
                                 "degrees": sorted(g.degrees()), "connected": g.is_connected()}
    _write(json.dumps(out, sort_keys=True), None)
    return 0


def cmd_verify(args) -> int:
    try:
        results = run(args.only, workers=args.threads)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.json:
        _write(json.dumps({"schema": 1, "criteria": [r.to_dict() for r in results],
                           "ok": all(r.ok for r in results)}), None)
    else:
        _write(report(results, verbose=not args.quiet), None)
    return 0 if all(r.ok for r in results) else 1


# -- parser ----------------------------------------------------------------


def _add_selector(p: argparse.ArgumentParser, default: str | None = None) -> None:
    if default is None:
        p.add_argument("selector", help="e6|e7|e8|d:n|dt:n|a2:r|custom")
    else:
        p.add_argument("selector", nargs="?", default=default, help=f"quiver selector (default {default})")
    p.add_argument("--type", dest="type_", help="alias for the positional selector")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--relaxed", action="store_true", help="allow reaches up to m (custom only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polycat", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes for enumeration (default from POLYCAT_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="dump a translation quiver as JSON")
    _add_selector(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("ext-table", help="Ext^1 dimensions for all pairs")
    _add_selector(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--window", type=int, help="covering window radius")
    p.add_argument("--hammock", metavar="DIAGONAL", help="only the Ext-hammock of one diagonal, e.g. '[1,6]R'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ext_table)

    p = sub.add_parser("enumerate", help="cluster configurations and census")
    _add_selector(p, "e6")
    p.add_argument("--window", type=int)
    p.add_argument("--out", help="write the configuration list as JSON")
    p.add_argument("--list", action="store_true", help="print every configuration")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="family and paired census of E6 configurations")
    p.add_argument("--config", help="JSON array of diagonal strings, or a file holding one")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mutate", help="mutate an E6 configuration at a slot")
    p.add_argument("--config", required=True)
    p.add_argument("--slot", type=int, required=True, help="0-based index into the sorted members")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("exchange-graph", help="exchange graph as DOT/JSON")
    _add_selector(p, "e6")
    p.add_argument("--window", type=int)
    p.add_argument("--dot")
    p.add_argument("--json")
    p.set_defaults(func=cmd_exchange_graph)

    p = sub.add_parser("f4", help="rho-symmetric configurations")
    p.add_argument("--census", action="store_true")
    p.add_argument("--moves", action="store_true")
    p.add_argument("--exchange-graph", metavar="DOT")
    p.set_defaults(func=cmd_f4)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", nargs="+", help="criterion numbers or keys")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true", help="one line per criterion")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "type_", None):
        args.selector = args.type_
    if args.threads is None:
        args.threads = default_workers()
    try:
        return args.func(args)
    except (SelectorError, SpecError, QuiverError, NotClusterCategory, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: bad configuration JSON: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
