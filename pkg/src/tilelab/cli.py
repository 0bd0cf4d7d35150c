"""Command-line front end: ``tilelab <command> ...``.

Successful commands print the command's JSON object (sorted keys, so output
is byte-stable) or a two-column table with ``--format table``. Errors print
``{"status": "error", "error": {...}}`` and exit with 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from contextlib import redirect_stderr
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import constructions, fractional, lattice, solver, thresholds
from .errors import DomainError, TilelabError
from .hypergraph import (
    Hypergraph,
    as_profile,
    complete_partite,
    khat_extension,
    min_d_degree,
    read_hg,
    write_hg,
)
from .invariants import format_fraction, realizations, structural_invariants, vertex_cover_number


@dataclass
class CommandResult:
    status: str
    data: dict = field(default_factory=dict)
    timing_ms: float = 0.0
    exit_code: int = 0
    fmt: str = "json"
    show_timing: bool = False

    def render(self) -> str:
        if self.status != "ok":
            payload = {"status": "error", "error": self.data}
            return json.dumps(payload, sort_keys=True) + "\n"
        data = dict(self.data)
        if self.show_timing:
            data["timing_ms"] = round(self.timing_ms, 3)
        if self.fmt == "table":
            return _table(data)
        return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _table(data: dict) -> str:
    width = max((len(k) for k in data), default=0)
    lines = []
    for key in sorted(data):
        value = data[key]
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key.ljust(width)}  {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _vectors(text: str) -> list[tuple[int, ...]]:
    """``"1,2;2,1"`` -> [(1, 2), (2, 1)]; the empty string is no vectors."""
    return [tuple(_ints(part)) for part in text.split(";") if part.strip()]


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}")


def _value(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else format_fraction(x)
    return x


def _hg_summary(H: Hypergraph) -> dict:
    return {"k": H.k, "n": H.n, "edges": H.num_edges}


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args) -> dict:
    F = read_hg(args.file)
    return structural_invariants(F, args.budget).to_dict()


def cmd_realizations(args) -> dict:
    F = read_hg(args.file)
    found = sorted(realizations(F, args.budget), key=lambda r: r.classes)
    return {"count": len(found), "realizations": [[list(c) for c in r.classes] for r in found]}


def cmd_tau(args) -> dict:
    return {"tau": vertex_cover_number(read_hg(args.file), args.budget)}


def cmd_frobenius(args) -> dict:
    return {"generators": args.generators, "value": thresholds.frobenius(args.generators)}


def cmd_threshold(args) -> dict:
    if args.kind == "mycroft":
        return thresholds.mycroft_threshold(read_hg(args.pattern), args.n, args.budget).to_dict()
    if args.kind == "k112":
        report = thresholds.k112_report(args.k, args.n)
        return {"value": report["value"], "divisibility": report["divisibility"]}
    if args.kind == "cycle":
        return {"value": _value(thresholds.cycle_threshold(args.k, args.s, args.n))}
    profile = as_profile(args.profile)
    k = profile.k
    if args.turan == "zero":
        turan_fn = lambda x: 0  # noqa: E731
    elif args.turan == "codegree-one":
        # every (k-1)-set in at most one edge
        turan_fn = lambda x: math.comb(x, k - 1) // k  # noqa: E731
    else:
        K = complete_partite(profile)
        turan_fn = lambda x: solver.turan_brute(x, K, budget=args.budget)  # noqa: E731
    return thresholds.degree_bound_report(profile, args.n, turan_fn).to_dict()


def _emit(H: Hypergraph, cert, out: str | None) -> dict:
    data = {"hypergraph": _hg_summary(H), "certificate": cert.to_dict()}
    data["min_codegree"] = min_d_degree(H, H.k - 1)
    if out:
        write_hg(out, H, cert.to_dict())
        data["output"] = out
    return data


def cmd_construct(args) -> dict:
    if args.kind == "space-barrier":
        H, cert = constructions.space_barrier(read_hg(args.pattern), args.n, args.budget)
    elif args.kind == "strengthened":
        H, cert = constructions.strengthened_barrier(args.profile, args.n, read_hg(args.inner))
    elif args.kind == "mubayi":
        H, cert = constructions.mubayi_graph(args.k, args.t, args.q)
    else:
        G = read_hg(args.inner)
        H = constructions.parity_construction(G, args.set)
        cert = constructions.parity_certificate(G, args.set, args.a or G.k)
    return _emit(H, cert, args.output)


def cmd_tile(args) -> dict:
    H, F = read_hg(args.host), read_hg(args.pattern)
    if args.kind == "factor":
        cert = solver.has_perfect_tiling(H, F, args.budget)
        return {"perfect": cert is not None, "certificate": cert.to_dict() if cert else None}
    if args.kind == "max":
        cert = solver.max_tiling(H, F, args.budget)
        return {"copies": len(cert.copies), "certificate": cert.to_dict()}
    return {"free": solver.is_subgraph_free(H, F, args.budget)}


def cmd_turan(args) -> dict:
    F = read_hg(args.pattern)
    result = solver.turan_search(args.n, F, args.mode, args.budget)
    if args.kind == "ex":
        value, witness = result.ex, result.ex_witness
    else:
        value, witness = result.coex, result.coex_witness
    if F.num_edges == 1 and F.n == F.k:
        value, witness = 0, Hypergraph.empty(F.k, args.n)
    return {
        "value": value,
        "witness": [list(e) for e in witness.edges],
        "classes": result.classes,
        "mode": result.mode,
    }


def cmd_steiner(args) -> dict:
    return {"steiner": solver.is_steiner_system(read_hg(args.file), args.t), "t": args.t}


def _weights_from(path: str) -> fractional.FractionalTiling:
    return fractional.FractionalTiling.from_dict(json.loads(Path(path).read_text()))


def cmd_fractional(args) -> dict:
    if args.kind == "standard":
        h = fractional.standard_weights(args.profile)
        L = complete_partite(args.profile)
    elif args.kind == "extended":
        h = fractional.extended_weights(args.profile)
        L = khat_extension(args.profile)
    elif args.kind == "validate":
        if not args.host or not args.weights:
            raise DomainError("fractional validate needs --host and --weights")
        return fractional.validate(read_hg(args.host), args.profile, _weights_from(args.weights)).to_dict()
    else:
        if not args.host:
            raise DomainError("fractional maximize needs --host")
        h, weight = fractional.maximize_small(read_hg(args.host), args.profile, args.budget)
        return {"weight": format_fraction(weight), "tiling": h.to_dict()}
    report = fractional.validate(L, args.profile, h)
    return {**report.to_dict(), "tiling": h.to_dict()}


def cmd_lattice(args) -> dict:
    if args.kind == "member":
        if args.target is None:
            raise DomainError("lattice member needs --target")
        return {"member": lattice.lattice_contains(args.generators, args.target)}
    r = args.r
    if r is None:
        lengths = {len(g) for g in args.generators}
        if len(lengths) != 1:
            raise DomainError("cannot infer r; pass --r")
        r = lengths.pop()
    return {"complete": lattice.transferral_complete(args.generators, r), "r": r}


def cmd_extremal(args) -> dict:
    H = read_hg(args.file)
    ratio = solver.extremal_deficit(H, args.sigma, args.set, args.budget)
    return {"deficit": format_fraction(ratio), "sigma": format_fraction(args.sigma)}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search-node budget")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="tilelab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (
        ("invariants", cmd_invariants, "S, D, gcd, sigma and tau of a k-graph"),
        ("realizations", cmd_realizations, "all k-partite realizations"),
        ("tau", cmd_tau, "vertex cover number"),
    ):
        add(name, func, help_).add_argument("file")

    add("frobenius", cmd_frobenius, "Frobenius number").add_argument("generators", type=_ints)

    sp = add("threshold", cmd_threshold, "closed-form codegree thresholds")
    sp.add_argument("kind", choices=("mycroft", "k112", "cycle", "bound"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--pattern")
    sp.add_argument("--profile", type=_ints)
    sp.add_argument("--turan", choices=("brute", "codegree-one", "zero"), default="brute")

    sp = add("construct", cmd_construct, "lower-bound constructions")
    sp.add_argument("kind", choices=("space-barrier", "strengthened", "mubayi", "parity"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--pattern")
    sp.add_argument("--profile", type=_ints)
    sp.add_argument("--inner", help="inner k-graph G (.hg)")
    sp.add_argument("--set", type=_ints, default=[], help="the vertex set A for parity")
    sp.add_argument("-o", "--output")

    sp = add("tile", cmd_tile, "perfect tiling, maximum tiling, freeness")
    sp.add_argument("kind", choices=("factor", "max", "free"))
    sp.add_argument("--host", required=True)
    sp.add_argument("--pattern", required=True)

    sp = add("turan", cmd_turan, "exact ex(n, F) or coex(n, F) by search")
    sp.add_argument("kind", choices=("ex", "coex"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--mode", choices=("auto", "exhaustive", "orderly"), default="auto")

    sp = add("steiner", cmd_steiner, "is every t-set in exactly one edge")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("file")

    sp = add("fractional", cmd_fractional, "fractional hom-tilings")
    sp.add_argument("kind", choices=("validate", "standard", "extended", "maximize"))
    sp.add_argument("--profile", type=_ints, required=True)
    sp.add_argument("--host")
    sp.add_argument("--weights", help="JSON file with entries and labelings")

    sp = add("lattice", cmd_lattice, "integer lattice membership")
    sp.add_argument("kind", choices=("member", "transferrals"))
    sp.add_argument("--generators", type=_vectors, required=True, help='e.g. "1,2;2,1"')
    sp.add_argument("--target", type=_ints)
    sp.add_argument("--r", type=int)

    sp = add("extremal", cmd_extremal, "edge density of the sparsest B")
    sp.add_argument("--sigma", type=_fraction, required=True)
    sp.add_argument("--set", type=_ints)
    sp.add_argument("file")
    return p


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise DomainError(f"{args.command} {getattr(args, 'kind', '')} needs {', '.join(missing)}".replace("  ", " "))


_REQUIRED = {
    ("threshold", "mycroft"): ("pattern",),
    ("threshold", "k112"): ("k",),
    ("threshold", "cycle"): ("k", "s"),
    ("threshold", "bound"): ("profile",),
    ("construct", "space-barrier"): ("pattern", "n"),
    ("construct", "strengthened"): ("profile", "n", "inner"),
    ("construct", "mubayi"): ("k", "t", "q"),
    ("construct", "parity"): ("inner",),
}


def run(argv) -> CommandResult:
    parser = build_parser()
    stderr = io.StringIO()
    try:
        with redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:  # --help already printed
            return CommandResult("ok", {}, exit_code=0)
        lines = stderr.getvalue().strip().splitlines()
        return CommandResult("error", {"code": "usage", "message": lines[-1] if lines else "usage error"}, exit_code=2)
    args.budget = getattr(args, "budget", None)
    fmt = getattr(args, "format", "json")
    show_timing = getattr(args, "timing", False)
    start = time.perf_counter()
    try:
        _require(args, *_REQUIRED.get((args.command, getattr(args, "kind", None)), ()))
        data = args.func(args)
        status, code = "ok", 0
    except TilelabError as exc:
        data, status, code = exc.to_dict(), "error", 1
    except OSError as exc:
        data, status, code = {"code": "io", "message": str(exc)}, "error", 1
    elapsed = (time.perf_counter() - start) * 1000
    return CommandResult(status, data, elapsed, code, fmt, show_timing)


def main(argv=None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    if result.exit_code == 2:
        sys.stderr.write(build_parser().format_usage())
    if result.data or result.status != "ok":
        sys.stdout.write(result.render())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
