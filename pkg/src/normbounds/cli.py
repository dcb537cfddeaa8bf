"""Command-line interface.

Exit codes: 0 success, 1 usage or validation error, 2 divergent series,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .bounds import (
    diff_lower_bound,
    diff_upper_bound,
    entropy_bracket,
    find_sigma_nontrivial,
)
from .core import SigmaParam, shannon_entropy, validate_distribution
from .exceptions import Divergent, NormBoundsError
from .experiments import (
    BOUND_COLUMNS,
    DIFF_COLUMNS,
    SAMPLERS,
    ExperimentConfig,
    record_as_dict,
    run_experiment,
    summarize,
)
from .infinite import family_bracket, family_entropy, is_in_ell_sigma, make_family
from .quantum import hermitian_eigenvalues, read_density_matrix, von_neumann_bracket, von_neumann_entropy

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENT = 2
EXIT_INVARIANT = 3


class InvariantViolation(RuntimeError):
    pass


def fmt(value) -> str:
    """Shortest round-trip decimal; empty for absent values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return repr(float(value))


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def render(rows: Sequence[dict], columns: Sequence[str], fmt_name: str) -> str:
    if fmt_name == "json":
        data = [{c: _jsonable(r.get(c)) for c in columns} for r in rows]
        return json.dumps(data if len(data) != 1 else data[0], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise NormBoundsError(f"cannot parse number list {text!r}: {exc}") from None


def read_distribution_file(path) -> list[float]:
    """One probability per line; ``#`` comments and blank lines ignored."""
    vals = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                vals.append(float(line))
            except ValueError:
                raise NormBoundsError(f"{path}:{lineno}: not a number: {line!r}") from None
    return vals


def load_distribution(inline, path, name="distribution"):
    if (inline is None) == (path is None):
        raise NormBoundsError(f"give exactly one of the inline or file form for {name}")
    raw = parse_floats(inline) if inline is not None else read_distribution_file(path)
    return validate_distribution(raw)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise InvariantViolation(what)


# -- subcommands ------------------------------------------------------------

def cmd_bounds(args) -> int:
    p = load_distribution(args.probs, args.file)
    sigma = SigmaParam(args.sigma)
    h = shannon_entropy(p)
    b = entropy_bracket(p, sigma)
    _check(b.contains(h, 1e-10 * max(1.0, h)), "entropy outside its bracket")
    row = {"sigma": sigma.sigma, "entropy": h, "lower": b.lower, "upper": b.upper,
           "gap": b.gap, "estimate": b.midpoint, "half_width": 0.5 * b.gap}
    _emit(render([row], list(row), args.format), args.out)
    return EXIT_OK


def cmd_diff(args) -> int:
    p = load_distribution(args.probs_p, args.file_p, "p")
    q = load_distribution(args.probs_q, args.file_q, "q")
    sigma = SigmaParam(args.sigma)
    hp, hq = shannon_entropy(p), shannon_entropy(q)
    row = {"sigma": sigma.sigma, "entropy_p": hp, "entropy_q": hq, "diff": hp - hq,
           "upper_bound": diff_upper_bound(p, q, sigma),
           "lower_bound": diff_lower_bound(p, q, sigma)}
    _check(row["lower_bound"] <= row["diff"] + 1e-10 * max(1.0, abs(row["diff"])),
           "difference below its lower bound")
    if hp >= hq:
        _check(row["diff"] <= row["upper_bound"] + 1e-10 * max(1.0, row["diff"]),
               "difference above its upper bound")
    if args.find_sigma is not None:
        found = find_sigma_nontrivial(p, q, parse_floats(args.find_sigma))
        row["nontrivial_sigma"] = found.sigma if found is not None else "none"
    _emit(render([row], list(row), args.format), args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        num_distributions=args.num, support_size=args.support, sigma=args.sigma,
        seed=args.seed, mode=args.mode, sampler=args.sampler, n_jobs=args.jobs)
    records = run_experiment(cfg)
    columns = BOUND_COLUMNS if cfg.mode == "bounds" else DIFF_COLUMNS
    text = render([record_as_dict(r) for r in records], columns, args.format)
    _emit(text, args.out)
    summary = summarize(records)
    # keep stdout parseable when the records themselves went to stdout
    stream = sys.stdout if args.out else sys.stderr
    stream.write(json.dumps(_jsonable(summary), indent=2) + "\n")
    return EXIT_INVARIANT if summary["violations"] else EXIT_OK


def cmd_family(args) -> int:
    fam = make_family(args.kind, args.parameter)
    sigma = SigmaParam(args.sigma)
    ok = is_in_ell_sigma(fam, sigma)
    ent = family_entropy(fam, args.abs_tol)
    row = {"family": fam.kind, "parameter": fam.parameter, "sigma": sigma.sigma,
           "in_ell_sigma": ok, "entropy": ent.value, "entropy_error": ent.error_bound}
    if not ok:
        row["status"] = "divergent"
        _emit(render([row], list(row), args.format), args.out)
        print(f"error: Divergent: {fam.kind}({fam.parameter:g}) is not in l^{sigma.sigma:g}",
              file=sys.stderr)
        return EXIT_DIVERGENT
    b = family_bracket(fam, sigma, args.abs_tol)
    _check(b.lower <= ent.lo and ent.hi <= b.upper, "entropy enclosure outside bracket")
    row.update(lower=b.lower, upper=b.upper, status="finite")
    _emit(render([row], list(row), args.format), args.out)
    return EXIT_OK


def cmd_quantum(args) -> int:
    m = read_density_matrix(args.matrix)
    sigma = SigmaParam(args.sigma)
    spectrum = hermitian_eigenvalues(m)
    h = von_neumann_entropy(m)
    b = von_neumann_bracket(m, sigma)
    _check(b.contains(h, 1e-10 * max(1.0, h)), "von Neumann entropy outside its bracket")
    row = {"dim": m.dim, "sigma": sigma.sigma,
           "spectrum": " ".join(fmt(x) for x in spectrum),
           "entropy": h, "lower": b.lower, "upper": b.upper}
    if args.format == "json":
        row["spectrum"] = [float(x) for x in spectrum]
    _emit(render([row], list(row), args.format), args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normbounds",
        description="Quasinorm brackets for Shannon and von Neumann entropy.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, sigma=0.9):
        sp.add_argument("--sigma", type=float, default=sigma, help="parameter in (0, 1)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("bounds", help="entropy bracket of one distribution")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--probs", help="comma-separated probabilities")
    g.add_argument("--file", help="file with one probability per line")
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("diff", help="bounds on S(p) - S(q)")
    gp = sp.add_mutually_exclusive_group(required=True)
    gp.add_argument("--probs-p")
    gp.add_argument("--file-p")
    gq = sp.add_mutually_exclusive_group(required=True)
    gq.add_argument("--probs-q")
    gq.add_argument("--file-q")
    sp.add_argument("--find-sigma", metavar="GRID",
                    help="ascending comma-separated sigmas; report the first with a positive lower bound")
    common(sp)
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("experiment", help="batch evaluation on random distributions")
    sp.add_argument("--mode", choices=("bounds", "difference"), default="bounds")
    sp.add_argument("--num", type=int, default=500, help="number of distributions or pairs")
    sp.add_argument("--support", type=int, default=100, help="values per distribution")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--sampler", choices=SAMPLERS, default="flat")
    sp.add_argument("--jobs", type=int, default=1, help="worker threads")
    common(sp)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("family", help="bracket for an infinite geometric or zipf distribution")
    sp.add_argument("kind", choices=("geometric", "zipf"))
    sp.add_argument("parameter", type=float, help="geometric ratio r or zipf exponent s")
    sp.add_argument("--abs-tol", type=float, default=1e-10)
    common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("quantum", help="von Neumann entropy bracket of a density matrix file")
    sp.add_argument("matrix", help="file: dim, then dim^2 lines 'row col re im'")
    common(sp)
    sp.set_defaults(func=cmd_quantum)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except Divergent as exc:
        print(f"error: Divergent: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except NormBoundsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
