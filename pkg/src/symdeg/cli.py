"""Command-line front end.

Every command accepts ``--format json`` for a machine-readable report
with a top-level ``"schema": 1`` field; identical invocations produce
byte-identical JSON.  Exit codes: 0 success, 2 bad input, 3 failed
internal consistency check.

Polynomials are passed inline or as ``@path``.  Variable names come
from ``--vars`` or are inferred: indexed names sharing one alphabetic
prefix (w0, w1, ...) imply the full range up to the largest index.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bounds as bounds_mod
from . import quadrics
from .dualvariety import dual_dimension, rank_relation_check
from .errors import InternalCheckError
from .hessian import (
    HessianForm,
    ambient_rank_certificate,
    build_hessian,
    hypersurface_rank_certificate,
    rank_at,
    stratify,
)
from .poly import MultiPoly, parse_poly


@dataclass(frozen=True)
class RunConfig:
    """Reproducibility knobs shared by all commands."""

    command: str
    seed: int
    output_format: str
    sample_budget: int


_INDEXED_NAME = re.compile(r"([A-Za-z_]+?)(\d+)\Z")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _read_inline_or_file(text: str) -> str:
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    return text


def infer_variables(text: str) -> list[str]:
    """x0..xN-style variable list from the identifiers in the text."""
    names = set(_NAME.findall(text))
    if not names:
        raise ValueError("no variables found in the polynomial; pass --vars")
    prefixes = set()
    top = -1
    for name in sorted(names):
        m = _INDEXED_NAME.fullmatch(name)
        if m is None:
            raise ValueError(
                f"cannot infer variables from {name!r}; pass --vars explicitly"
            )
        prefixes.add(m.group(1))
        top = max(top, int(m.group(2)))
    if len(prefixes) != 1:
        raise ValueError(
            "mixed variable prefixes; pass --vars explicitly"
        )
    prefix = prefixes.pop()
    return [f"{prefix}{i}" for i in range(top + 1)]


def _poly_arg(args: argparse.Namespace) -> tuple[MultiPoly, list[str]]:
    text = _read_inline_or_file(args.poly)
    if args.vars:
        var_names = [v.strip() for v in args.vars.split(",") if v.strip()]
        if not var_names:
            raise ValueError("empty --vars")
    else:
        var_names = infer_variables(text)
    return parse_poly(text, var_names), var_names


def _parse_point(text: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed point {text!r}")
    return [Fraction(p) for p in parts]


def _parse_points_arg(text: str) -> list[list[Fraction]]:
    raw = _read_inline_or_file(text)
    if text.startswith("@"):
        lines = [ln.strip() for ln in raw.splitlines()]
        chunks = [ln for ln in lines if ln and not ln.startswith("#")]
    else:
        chunks = [c.strip() for c in raw.split(";") if c.strip()]
    if not chunks:
        raise ValueError("no points supplied")
    return [_parse_point(c) for c in chunks]


def _parse_betti(text: str) -> list[int]:
    try:
        return [int(p.strip()) for p in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed Betti vector {text!r}") from None


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        seed=args.seed,
        output_format=args.format,
        sample_budget=args.sample_budget,
    )


def _emit(config: RunConfig, payload: dict, text_lines: list[str]) -> int:
    if config.output_format == "json":
        body = dict(payload)
        body["schema"] = 1
        body["command"] = config.command
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)
    return 0


# -- command handlers -----------------------------------------------------------


def _cmd_hessian(args: argparse.Namespace) -> int:
    config = _config(args)
    f, var_names = _poly_arg(args)
    h = build_hessian(f)
    matrix = [[entry.format(var_names) for entry in row] for row in h.hessian]
    lines = ["[" + ", ".join(row) + "]" for row in matrix]
    return _emit(
        config,
        {"vars": var_names, "degree": h.degree, "matrix": matrix},
        lines,
    )


def _cmd_rank_at(args: argparse.Namespace) -> int:
    config = _config(args)
    f, _ = _poly_arg(args)
    point = _parse_point(args.point)
    rank = rank_at(build_hessian(f), point)
    return _emit(
        config,
        {"point": [_frac_json(c) for c in point], "rank": rank},
        [f"rank at ({args.point}): {rank}"],
    )


def _cmd_stratify(args: argparse.Namespace) -> int:
    config = _config(args)
    f, _ = _poly_arg(args)
    points = _parse_points_arg(args.points)
    strat = stratify(build_hessian(f), points)
    lines = []
    for rank in sorted(strat.buckets):
        formatted = ["(" + ", ".join(str(c) for c in p) + ")" for p in strat.buckets[rank]]
        lines.append(f"rank {rank}: " + "; ".join(formatted))
    return _emit(config, strat.to_json_dict(), lines or ["no points"])


def _cmd_generic_rank(args: argparse.Namespace) -> int:
    config = _config(args)
    f, var_names = _poly_arg(args)
    h: HessianForm = build_hessian(f)
    if args.on_hypersurface:
        cert = hypersurface_rank_certificate(
            h, seed=config.seed, sample_budget=config.sample_budget
        )
        where = "on the hypersurface"
    else:
        cert = ambient_rank_certificate(
            h, seed=config.seed, sample_budget=config.sample_budget
        )
        where = "ambient"
    lines = [
        f"generic rank {where}: {cert.rank}",
        f"witness minor rows {list(cert.witness_rows)} cols {list(cert.witness_cols)}: "
        + cert.witness_minor.format(var_names),
    ]
    if cert.caveat:
        lines.append(f"caveat: {cert.caveat}")
    return _emit(
        config,
        {
            "rank": cert.rank,
            "on_hypersurface": cert.on_hypersurface,
            "witness_rows": list(cert.witness_rows),
            "witness_cols": list(cert.witness_cols),
            "witness_minor": cert.witness_minor.format(var_names),
            "caveat": cert.caveat,
        },
        lines,
    )


def _cmd_dual_dim(args: argparse.Namespace) -> int:
    config = _config(args)
    f, _ = _poly_arg(args)
    value = dual_dimension(f, seed=config.seed, sample_budget=config.sample_budget)
    return _emit(config, {"dual_dimension": value}, [f"dual variety dimension: {value}"])


def _cmd_check_rank_relation(args: argparse.Namespace) -> int:
    config = _config(args)
    f, _ = _poly_arg(args)
    point = _parse_point(args.point)
    report = rank_relation_check(f, point)
    lines = [
        f"rank Q: {report.rank_q}",
        f"rank A: {report.rank_a}",
        f"rank Q = rank A + 2: {'holds' if report.holds else 'FAILS'}",
    ]
    return _emit(config, report.to_json_dict(), lines)


def _cmd_quad_betti(args: argparse.Namespace) -> int:
    config = _config(args)
    r = args.r
    table = [quadrics.quadric_betti(r, i) for i in range(max(r - 1, 0))]
    return _emit(
        config,
        {"r": r, "table": table},
        [f"rank H^(2i) for i = 0..{r - 2}: {table}"],
    )


def _cmd_lh_dim(args: argparse.Namespace) -> int:
    config = _config(args)
    betti = _parse_betti(args.betti)
    if args.quadric_rank is not None:
        dim = quadrics.lh_quadric_dim(betti, args.quadric_rank, args.k)
        payload = {
            "betti": betti,
            "kind": "quadric",
            "r": args.quadric_rank,
            "k": args.k,
            "dim": dim,
        }
        lines = [f"dim H_{args.k} of the rank-{args.quadric_rank} quadric bundle: {dim}"]
    else:
        dim = quadrics.lh_projective_dim(betti, args.projective_fiber, args.k)
        payload = {
            "betti": betti,
            "kind": "projective",
            "fiber_dim": args.projective_fiber,
            "k": args.k,
            "dim": dim,
        }
        lines = [f"dim H_{args.k} of the P^{args.projective_fiber} bundle: {dim}"]
    return _emit(config, payload, lines)


def _cmd_nonsurj(args: argparse.Namespace) -> int:
    config = _config(args)
    cert = quadrics.nonsurjectivity_certificate(_parse_betti(args.betti), args.r, args.d)
    lines = [
        f"source dim (degree {cert.degree_source}): {cert.dim_source}",
        f"target dim (degree {cert.degree_target}): {cert.dim_target}",
        "surjection impossible" if cert.surjection_impossible else "dimensions permit surjection",
    ]
    return _emit(config, cert.to_json_dict(), lines)


def _cmd_torsion(args: argparse.Namespace) -> int:
    config = _config(args)
    cert = quadrics.torsion_certificate(_parse_betti(args.betti), args.r, args.d)
    lines = [
        f"quotient by the Gysin image: {cert.quotient}",
        f"exhibited element order: {cert.element_order}",
    ]
    if cert.relation:
        lines.append(f"fiber relation: {cert.relation}")
    return _emit(config, cert.to_json_dict(), lines)


def _cmd_bounds_replay(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.betti is None:
        betti = [0] * (2 * args.d) + [1]
    else:
        betti = _parse_betti(args.betti)
    report = bounds_mod.replay_main_theorem(args.N, args.r, args.d, betti)
    lines = []
    for k, step in enumerate(report.steps, start=1):
        mark = "ok" if step.ok else "FAIL"
        lines.append(f"step {k} [{mark}] {step.statement} ({step.lhs} vs {step.rhs})")
    lines.append(f"verdict: {report.verdict}")
    return _emit(config, report.to_json_dict(), lines)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symdeg",
        description="Exact toolkit for symmetric degeneracy loci: Hessian rank "
        "stratification, dual-variety dimension, quadric-bundle homology "
        "certificates and dimension bounds.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    common.add_argument(
        "--sample-budget",
        type=int,
        default=8,
        help="random evaluation points for generic-rank guessing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, **kwargs)
        p.set_defaults(handler=handler, command=name)
        return p

    p = add("hessian", _cmd_hessian, "print the symbolic Hessian matrix")
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("--vars", help="comma-separated variable names")

    p = add("rank-at", _cmd_rank_at, "Hessian rank at a point")
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("point", help="comma-separated rational coordinates")
    p.add_argument("--vars", help="comma-separated variable names")

    p = add("stratify", _cmd_stratify, "bucket points by Hessian rank")
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("points", help="semicolon-separated points, or @file with one per line")
    p.add_argument("--vars", help="comma-separated variable names")

    p = add("generic-rank", _cmd_generic_rank, "certified generic Hessian rank")
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("--vars", help="comma-separated variable names")
    p.add_argument(
        "--on-hypersurface",
        action="store_true",
        help="rank on the hypersurface f = 0 instead of the ambient space",
    )

    p = add("dual-dim", _cmd_dual_dim, "dual-variety dimension")
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("--vars", help="comma-separated variable names")

    p = add(
        "check-rank-relation",
        _cmd_check_rank_relation,
        "verify rank Q = rank A + 2 at a smooth point",
    )
    p.add_argument("poly", help="polynomial text or @file")
    p.add_argument("point", help="comma-separated rational coordinates")
    p.add_argument("--vars", help="comma-separated variable names")

    p = add("quad-betti", _cmd_quad_betti, "rank table of a smooth quadric")
    p.add_argument("r", type=int, help="rank of the quadratic form")

    p = add("lh-dim", _cmd_lh_dim, "bundle homology dimension by product formula")
    p.add_argument("--betti", required=True, help="comma-separated base Betti numbers")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--quadric-rank", type=int, help="quadric-bundle fiber rank")
    group.add_argument("--projective-fiber", type=int, help="projective-bundle fiber dimension")
    p.add_argument("k", type=int, help="homological degree")

    p = add("nonsurj", _cmd_nonsurj, "even-rank Gysin nonsurjectivity certificate")
    p.add_argument("--betti", required=True, help="comma-separated base Betti numbers")
    p.add_argument("--r", type=int, required=True, help="even fiber rank")
    p.add_argument("--d", type=int, required=True, help="base dimension")

    p = add("torsion", _cmd_torsion, "odd-rank 2-torsion certificate")
    p.add_argument("--betti", required=True, help="comma-separated base Betti numbers")
    p.add_argument("--r", type=int, required=True, help="odd fiber rank")
    p.add_argument("--d", type=int, required=True, help="base dimension")

    p_bounds = sub.add_parser("bounds", help="dimension-bound arithmetic")
    bounds_sub = p_bounds.add_subparsers(dest="bounds_command", required=True)
    p = bounds_sub.add_parser(
        "replay", parents=[common], help="step-by-step replay of the main bound"
    )
    p.set_defaults(handler=_cmd_bounds_replay, command="bounds replay")
    p.add_argument("N", type=int)
    p.add_argument("r", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--betti", help="comma-separated Betti numbers (default: 0,...,0,1)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
