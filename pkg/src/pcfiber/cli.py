"""Command-line front end: ``pcfiber <command> ...``.

Exit codes: 0 ok, 2 input error, 3 resource cap, 4 domain error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from ._version import __version__
from .circumsphere import CircumsphereFramework, circumsphere_rigidity_test, verify_conjecture_66
from .criticality import critical_structures_from
from .exceptions import (AngleViolation, ComplexTooLarge, DegenerateSimplex, DomainError,
                         HypothesisViolated, InputError, NotApplicable)
from .fiber import fiber_dim_bounds, generate_chain_cloud, identify_all
from .filtration import DEFAULT_SIMPLEX_BUDGET, DEFAULT_TIE_TOL, FiltrationKind, build_filtered_complex
from .io import dumps, read_json, read_points, write_output
from .linalg import RANK_RTOL
from .persistence import barcode_svg, compute_barcodes, default_max_degree
from .rigidity import Framework, Graph, ggr_2d, ggr_randomized, infinitesimal_rigidity_test, laman_glr_2d

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_DOMAIN = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    filtration: str = "both"
    max_degree: int | None = None
    tol: float = DEFAULT_TIE_TOL
    rank_tol: float = RANK_RTOL
    seed: int | None = None
    trials: int = 3
    budget: int = DEFAULT_SIMPLEX_BUDGET

    def __post_init__(self):
        if not self.tol > 0 or not self.rank_tol > 0:
            raise InputError("--tol and --rank-tol must be positive")
        if self.max_degree is not None and self.max_degree < 0:
            raise InputError("--max-degree must be non-negative")
        if self.trials < 1:
            raise InputError("--trials must be at least 1")
        if self.budget < 1:
            raise InputError("--max-simplices must be positive")

    @property
    def kinds(self) -> list[str]:
        return ["vr", "cech"] if self.filtration == "both" else [self.filtration]

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(getattr(args, "filtration", "both"), getattr(args, "max_degree", None),
                   getattr(args, "tol", DEFAULT_TIE_TOL), getattr(args, "rank_tol", RANK_RTOL),
                   getattr(args, "seed", None), getattr(args, "trials", 3),
                   getattr(args, "max_simplices", DEFAULT_SIMPLEX_BUDGET))


def _analyses(P, cfg: RunConfig):
    for kind in cfg.kinds:
        md = cfg.max_degree
        if md is None:
            md = default_max_degree(kind, P.n, P.d)
        F = build_filtered_complex(P, kind, md, cfg.budget)
        yield kind, F, compute_barcodes(F, md)


def _svg_path(base: str, kind: str, several: bool) -> Path:
    p = Path(base)
    return p.with_name(f"{p.stem}.{kind}{p.suffix or '.svg'}") if several else p


def cmd_barcode(args, cfg: RunConfig, out) -> int:
    P = read_points(args.points)
    result = {"n": P.n, "d": P.d, "barcodes": {}}
    for kind, _, D in _analyses(P, cfg):
        result["barcodes"][kind] = D.to_json()
        if args.svg:
            path = _svg_path(args.svg, kind, len(cfg.kinds) > 1)
            text = barcode_svg(D, title=f"{kind} barcode, n={P.n}, d={P.d}")
            write_output(text, str(path), out)
    write_output(dumps(result), args.json, out)
    return EXIT_OK


def cmd_critical(args, cfg: RunConfig, out) -> int:
    P = read_points(args.points)
    result = {"n": P.n, "d": P.d}
    for kind in cfg.kinds:
        md = cfg.max_degree
        if md is None:
            md = default_max_degree(kind, P.n, P.d)
        if kind == "cech":
            md = max(md, min(P.d, P.n - 1) - 1)
        F = build_filtered_complex(P, kind, md, cfg.budget)
        D = compute_barcodes(F, md)
        name = "critical_graph" if kind == "vr" else "critical_hypergraph"
        result[name] = critical_structures_from(P, F, D, cfg.tol).to_json()
    write_output(dumps(result), args.json, out)
    return EXIT_OK


def cmd_identify(args, cfg: RunConfig, out) -> int:
    P = read_points(args.points)
    reports = identify_all(P, cfg.kinds, cfg.max_degree, cfg.tol, cfg.rank_tol,
                           cfg.trials, cfg.seed, cfg.budget)
    if len(reports) == 1:
        result = next(iter(reports.values())).to_json()
    else:
        result = {"reports": {k: r.to_json() for k, r in reports.items()}}
    write_output(dumps(result), args.json, out)
    return EXIT_OK


def cmd_fiber_dim(args, cfg: RunConfig, out) -> int:
    if args.points is None:
        if None in (args.n, args.d, args.k):
            raise InputError("give a point file, or all of --n, --d and --k")
        lo, up = fiber_dim_bounds(args.n, args.d, args.k)
        result = {"n": args.n, "d": args.d, "k": args.k, "fiber_dim_lower_bound": lo,
                  "fiber_dim_upper_bound": up}
    else:
        P = read_points(args.points)
        reports = identify_all(P, cfg.kinds, cfg.max_degree, cfg.tol, cfg.rank_tol,
                               cfg.trials, 0 if cfg.seed is None else cfg.seed, cfg.budget)
        result = {"n": P.n, "d": P.d, "fiber": {}}
        for kind, r in reports.items():
            result["fiber"][kind] = {"k": r.k, "fiber_dim_lower_bound": r.lower_bound,
                                     "fiber_dim_upper_bound": r.upper_bound,
                                     "local_fiber_dim": r.local_fiber_dim}
    write_output(dumps(result), args.json, out)
    return EXIT_OK


def cmd_rigidity(args, cfg: RunConfig, out) -> int:
    P = read_points(args.points)
    data = read_json(args.graph)
    if not isinstance(data, dict) or "n" not in data:
        raise InputError(f"{args.graph}: expected an object with n and edges or hyperedges")
    n = int(data["n"])
    if n != P.n:
        raise InputError(f"graph has {n} vertices but the point file has {P.n}")
    try:
        if "hyperedges" in data:
            fw = CircumsphereFramework(n, [tuple(e) for e in data["hyperedges"]], P)
            result = {"kind": "circumsphere", "verdict": circumsphere_rigidity_test(fw, cfg.rank_tol).to_json()}
        else:
            g = Graph(n, [tuple(e) for e in data.get("edges", [])])
            verdict = infinitesimal_rigidity_test(Framework(g, P), cfg.rank_tol)
            result = {"kind": "bar-joint", "verdict": verdict.to_json(),
                      "generically_globally_rigid": ggr_randomized(g, P.d, cfg.trials, cfg.seed, cfg.rank_tol)}
            if P.d == 2:
                result["laman_glr_2d"] = laman_glr_2d(g)
                result["ggr_2d"] = ggr_2d(g)
    except (TypeError, KeyError) as exc:
        raise InputError(f"{args.graph}: malformed graph ({exc})") from None
    result["seed"] = cfg.seed
    write_output(dumps(result), args.json, out)
    return EXIT_OK


def cmd_conjecture66(args, cfg: RunConfig, out) -> int:
    report = verify_conjecture_66(args.d, args.n, cfg.trials, cfg.seed, rtol=cfg.rank_tol)
    write_output(dumps(report.to_json()), args.json, out)
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def cmd_chain_gen(args, cfg: RunConfig, out) -> int:
    n = len(args.radii) + 1
    P = generate_chain_cloud(n, args.radii, args.angles)
    write_output(dumps({"points": P.coords.tolist()}), args.json, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcfiber", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, points=True, filtration=True, seed_required=False):
        if points:
            p.add_argument("points", help="CSV (no header) or JSON {\"points\": [...]}")
        if filtration:
            p.add_argument("--filtration", choices=["vr", "cech", "both"], default="both")
            p.add_argument("--max-degree", type=int, default=None)
            p.add_argument("--max-simplices", type=int, default=DEFAULT_SIMPLEX_BUDGET,
                           help="refuse complexes larger than this (exit 3)")
        p.add_argument("--tol", type=float, default=DEFAULT_TIE_TOL)
        p.add_argument("--rank-tol", type=float, default=RANK_RTOL)
        p.add_argument("--seed", type=int, required=seed_required, default=None)
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--json", default="stdout", metavar="PATH|stdout")

    p = sub.add_parser("barcode", help="full barcodes")
    common(p)
    p.add_argument("--svg", default=None, metavar="PATH")
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("critical", help="critical graph / hypergraph")
    common(p)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("identify", help="identifiability report")
    common(p, seed_required=True)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("fiber-dim", help="fiber dimension bounds")
    p.add_argument("points", nargs="?", default=None)
    common(p, points=False)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_fiber_dim)

    p = sub.add_parser("rigidity", help="rank test of a framework")
    common(p, filtration=False, seed_required=True)
    p.add_argument("--graph", required=True, help="JSON {n, edges} or {n, hyperedges}")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("conjecture66", help="rank test of complete (d+1)-uniform hypergraphs")
    common(p, points=False, filtration=False, seed_required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_conjecture66, trials=20)

    p = sub.add_parser("chain-gen", help="planar chain cloud with prescribed step radii")
    common(p, points=False, filtration=False)
    p.add_argument("--radii", type=_float_list, required=True, help="comma-separated, n-1 values")
    p.add_argument("--angles", type=_float_list, required=True, help="comma-separated radians, n-1 values")
    p.set_defaults(func=cmd_chain_gen)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg, stdout)
    except ComplexTooLarge as exc:
        print(f"pcfiber: resource cap: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (DomainError, DegenerateSimplex, NotApplicable, HypothesisViolated, AngleViolation) as exc:
        print(f"pcfiber: domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (InputError, ValueError, IndexError) as exc:
        print(f"pcfiber: input error: {exc}", file=stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
