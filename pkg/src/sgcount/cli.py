"""Command-line entry point: ``sgcount <command> [flags]``.

Exit codes: 0 ok, 1 generic error, 2 unsupported family, 3 fixture
mismatch, 4 budget or stage cap exceeded, 5 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .config import load_config
from .errors import FixtureMismatch, OracleMismatch, SGCountError

OUTPUT_FORMAT_VERSION = 1
DEFAULT_METHOD = {2: "improved", 3: "sg23", 4: "sg24"}

log = logging.getLogger("sgcount")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="key = value config file (default: $SGCOUNT_CONFIG)")
    p.add_argument("--threads", type=int, help="worker threads for compiled kernels")
    p.add_argument("--precision", type=int, help="significant decimal digits for real output")
    p.add_argument("--cache-dir", help="directory for derived systems")
    p.add_argument("--no-cache", action="store_true", help="always re-derive")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _family(p, b_default=2):
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, default=b_default)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="sgcount",
        description="Exact counts of connected spanning subgraphs on Sierpinski gaskets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[common], help="derive the recursion system")
    _family(p)
    p.add_argument("--verify", action="store_true", help="diff against the published system")
    p.add_argument("--engine", choices=("compiled", "python"), default="compiled")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("evaluate", parents=[common], help="class counts per stage")
    _family(p)
    p.add_argument("--stages", type=int, required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ratios", parents=[common], help="alpha = f/g and beta = g/h per stage")
    _family(p)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--digits", type=int, default=15)
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("bounds", parents=[common], help="rigorous bracket on z")
    _family(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m-min", type=int, help="emit one row per m from here up to --m")
    p.add_argument("--method", choices=("lemma6", "improved", "sg23", "sg24"))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fit", parents=[common], help="extrapolated z for b = 2")
    _family(p)
    p.add_argument("--stages", type=int, required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("oracle", parents=[common], help="brute-force cross-check of one stage")
    _family(p)
    p.add_argument("--stage", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("dimension", parents=[common], help="Hausdorff dimension")
    _family(p)
    p.set_defaults(func=cmd_dimension)
    return parser


# --- helpers ----------------------------------------------------------------


def _settings(args):
    cfg = load_config(args.config)
    cfg = cfg.with_overrides(
        precision=args.precision, threads=args.threads, cache_dir=args.cache_dir,
    )
    if args.no_cache:
        cfg = cfg.with_overrides(use_cache=False)
    return cfg


def _system(cfg, d, b):
    from .derivation import load_or_derive

    cache = cfg.cache_dir if cfg.use_cache else None
    return load_or_derive(d, b, cache_dir=cache, budget=cfg.derivation_budget)


def _vectors(cfg, d, b, stages):
    from .sequences import initial_vector, iterate
    from .topology import check_family

    check_family(d, b)
    return iterate(_system(cfg, d, b), initial_vector(d), stages, cfg.stage_cap(d, b))


def _flags(args) -> dict:
    skip = {"func", "config", "out", "verbose", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _envelope(args, payload: dict) -> dict:
    return {"format_version": OUTPUT_FORMAT_VERSION, "command": args.command,
            "flags": _flags(args), **payload}


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------


def cmd_derive(args, cfg) -> int:
    from .derivation import derive_system
    from .fixtures import fixture_for_family, verify_fixture
    from .topology import build_schema, check_family

    check_family(args.d, args.b)
    if args.engine == "python":
        system = derive_system(build_schema(args.d, args.b), cfg.derivation_budget, "python")
    else:
        system = _system(cfg, args.d, args.b)
    if args.format == "csv":
        rows = [
            (s, name, "".join(f"{n}^{e}" if e > 1 else n for n, e in zip(system.names, mono) if e), c)
            for s, name in zip(system.variables, system.names)
            for mono, c in sorted(system.polynomials[s].items(), reverse=True)
        ]
        _emit(args, _csv(["shape", "name", "monomial", "coefficient"], rows))
    else:
        body = json.loads(system.to_json())
        _emit(args, json.dumps(_envelope(args, {"system": body}), indent=2))
    if args.verify:
        fixture = fixture_for_family(args.d, args.b)
        if fixture is None:
            print(f"no published system for SG_{{{args.d},{args.b}}}; nothing to verify",
                  file=sys.stderr)
            return 0
        mismatches = verify_fixture(system, fixture)
        for m in mismatches:
            print(m.describe(system.names), file=sys.stderr)
        if mismatches:
            raise FixtureMismatch(f"{len(mismatches)} monomials differ from fixture {fixture}")
        print(f"fixture {fixture}: all monomials agree", file=sys.stderr)
    return 0


def cmd_evaluate(args, cfg) -> int:
    from .partitions import shape_name

    vectors = _vectors(cfg, args.d, args.b, args.stages)
    shapes = vectors[0].shapes
    if args.format == "csv":
        rows = [[v.stage, *(str(v.counts[s]) for s in shapes)] for v in vectors]
        _emit(args, _csv(["stage", *(shape_name(s) for s in shapes)], rows))
    else:
        _emit(args, json.dumps(_envelope(args, {"vectors": [v.as_json() for v in vectors]}),
                               indent=2))
    return 0


def cmd_ratios(args, cfg) -> int:
    from .sequences import ratios

    seq = ratios(_vectors(cfg, args.d, args.b, args.stages))
    rows = seq.rendered(args.digits)
    if args.format == "csv":
        _emit(args, _csv(["stage", "alpha", "beta"], rows))
    else:
        _emit(args, json.dumps(_envelope(args, {"ratios": [
            {"stage": m, "alpha": a, "beta": b} for m, a, b in rows
        ]}), indent=2))
    return 0


def cmd_bounds(args, cfg) -> int:
    from .bounds import METHOD_FAMILY, compute_bounds

    method = args.method or DEFAULT_METHOD.get(args.b)
    if args.d != 2 or method is None or METHOD_FAMILY[method] != args.b:
        raise ValueError(f"no bound method {args.method or ''} for SG_{{{args.d},{args.b}}}")
    vectors = _vectors(cfg, args.d, args.b, args.m)
    lo = args.m if args.m_min is None else args.m_min
    reports = [compute_bounds(method, m, vectors, cfg.precision) for m in range(lo, args.m + 1)]
    rows = [r.as_row(cfg.precision) for r in reports]
    if args.format == "csv":
        _emit(args, _csv(["m", "lower", "upper", "width", "method"],
                         [[r[k] for k in ("m", "lower", "upper", "width", "method")]
                          for r in rows]))
    else:
        _emit(args, json.dumps(_envelope(args, {"bounds": rows}), indent=2))
    return 0


def cmd_fit(args, cfg) -> int:
    from .fit import extrapolate_z

    if args.b != 2:
        raise ValueError("the fit model is defined for b = 2 only")
    report = extrapolate_z(args.d, _vectors(cfg, args.d, 2, args.stages), cfg.precision)
    body = json.loads(report.to_json())
    if args.format == "csv":
        _emit(args, _csv(["d", "stages", "a", "b", "c", "z"],
                         [[body["d"], " ".join(map(str, body["stages"])),
                           body["a"], body["b"], body["c"], body["z"]]]))
    else:
        _emit(args, json.dumps(_envelope(args, {"fit": body}), indent=2))
    return 0


def cmd_oracle(args, cfg) -> int:
    from .oracle import classify_by_subsets, count_connected_frontier, count_connected_tutte
    from .topology import GasketSpec, build_graph

    graph = build_graph(GasketSpec(args.d, args.b, args.stage), cfg.vertex_cap)
    recursion = _vectors(cfg, args.d, args.b, args.stage)[-1]
    checks = []  # (quantity, method, brute force, recursion)
    if graph.edge_count <= cfg.edge_cap:
        brute = classify_by_subsets(graph, cfg.edge_cap)
        for s in recursion.shapes:
            checks.append((str(s), "subsets", brute.counts[s], recursion.counts[s]))
        checks.append(("f", "tutte", count_connected_tutte(graph), recursion.f))
    else:
        log.info("%d edges exceeds edge cap; checking f only", graph.edge_count)
    checks.append(("f", "frontier", count_connected_frontier(graph), recursion.f))
    bad = [c for c in checks if c[2] != c[3]]
    if args.format == "csv":
        _emit(args, _csv(["shape", "method", "oracle", "recursion", "agree"],
                         [[q, m, str(x), str(y), x == y] for q, m, x, y in checks]))
    else:
        _emit(args, json.dumps(_envelope(args, {
            "stage": args.stage,
            "edges": graph.edge_count,
            "vertices": graph.vertex_count,
            "checks": [{"shape": q, "method": m, "oracle": str(x), "recursion": str(y),
                        "agree": x == y} for q, m, x, y in checks],
        }), indent=2))
    if bad:
        raise OracleMismatch("; ".join(f"{q} via {m}: {x} != {y}" for q, m, x, y in bad))
    return 0


def cmd_dimension(args, cfg) -> int:
    from .topology import check_family, hausdorff_dimension

    check_family(args.d, args.b)
    dim = hausdorff_dimension(args.d, args.b, cfg.precision)
    text = format(dim, f".{cfg.precision}g")
    if args.format == "csv":
        _emit(args, _csv(["d", "b", "dimension"], [[args.d, args.b, text]]))
    else:
        _emit(args, json.dumps(_envelope(args, {"dimension": text})))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _settings(args)
        if cfg.threads:
            from . import _kernels  # noqa: F401  (installs the TBB warning filter)
            import numba

            numba.set_num_threads(min(cfg.threads, numba.config.NUMBA_NUM_THREADS))
        return args.func(args, cfg)
    except SGCountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
