"""Command-line surface.

Every command prints exact values only (integers and p/q rationals) and is
deterministic for a fixed argument vector.  Exit codes: 0 on success, 1 on
a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import counting as cnt
from . import nodal, splitting, stability, variety
from .errors import DomainError
from .modelio import fixture_path, load_model_file

__all__ = ["run", "script"]


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _class_vector(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ValueError("empty class vector")
    return tuple(int(p) for p in parts)


def _alignment_token(text: str):
    if text in ("dual", "identity"):
        return text
    if text.startswith("perm:"):
        return _class_vector(text[len("perm:") :])
    raise ValueError(f"bad alignment {text!r}; use dual, identity or perm:i1,i2,...")


def _build_alignment(token, rank: int) -> nodal.Alignment:
    if token == "dual":
        return nodal.Alignment.dual(rank)
    if token == "identity":
        return nodal.Alignment.identity(rank)
    return nodal.Alignment.from_one_based(token)


def _resolve_model(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(path)
    if bundled.exists():
        return bundled
    raise DomainError(f"model file not found: {path}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _counting_config(args) -> tuple[variety.VarietyModel, cnt.CountingConfig]:
    loaded = load_model_file(_resolve_model(args.model))
    cfg = loaded.counting
    if cfg is None:
        raise DomainError(f"model file {args.model} has no counting block")
    if args.q is not None or args.delta is not None:
        cfg = cnt.CountingConfig(
            q=args.q if args.q is not None else cfg.q,
            br=cfg.br,
            m_cap=cfg.m_cap,
            beta=cfg.beta,
            outside_xi=cfg.outside_xi,
            eps=cfg.eps,
            delta=args.delta if args.delta is not None else cfg.delta,
        )
    return loaded.model, cfg


def _cmd_sp(args) -> str:
    panel = splitting.slope_panel(args.type)
    try:
        ratio = str(splitting.minimal_slope_ratio(args.type))
    except DomainError:
        ratio = "n/a"
    return f"panel: {panel}  min_ratio: {ratio}\n"


def _cmd_degbd(args) -> str:
    return f"{nodal.degbd(args.nodal, args.m)}\n"


def _cmd_smooth(args) -> str:
    types = nodal.admissible_smoothings(args.nodal, require_sequential=args.sequential)
    return "".join(f"{t}\n" for t in types)


def _cmd_glue(args) -> str:
    types = args.type
    if len(types) == 1:
        t1 = t2 = types[0]
    elif len(types) == 2:
        t1, t2 = types
    else:
        raise ValueError("glue takes one or two --type arguments")
    align = _build_alignment(args.align, t1.rank)
    return f"{nodal.glue(t1, t2, align)}\n"


def _cmd_balance(args) -> str:
    trace = stability.balance(
        args.type,
        max_steps=args.max_steps,
        policy=args.policy,
        sequential=args.sequential,
    )
    lines = [f"state {i}: {t}" for i, t in enumerate(trace.states)]
    lines.append(f"steps: {trace.steps}")
    lines.append(f"copies: {trace.copies}")
    lines.append(f"converged: {'true' if trace.converged else 'false'}")
    return "".join(f"{line}\n" for line in lines)


def _cmd_esp(args) -> str:
    loaded = load_model_file(_resolve_model(args.model))
    panel = variety.esp(loaded.model, args.cls)
    bound = variety.liberated_lower_bound(loaded.model, args.cls)
    deg = loaded.model.degree(args.cls)
    return (
        f"esp: {panel}\n"
        f"min_entry: {panel.min_entry}\n"
        f"degree: {deg}\n"
        f"liberated_bound: {bound}\n"
    )


def _cmd_count(args) -> str:
    model, cfg = _counting_config(args)
    report = cnt.ratio_check(model, cfg, range(1, args.dmax + 1))
    return report.render_tsv()


def _cmd_check(args) -> str:
    model, cfg = _counting_config(args)
    report = cnt.ratio_check(model, cfg, range(1, args.dmax + 1))
    d0 = "none" if report.d0 is None else str(report.d0)
    return report.render_tsv() + f"# d0: {d0}\n"


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freecurves",
        description="Exact splitting-type calculus for rational curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = []

    def add_parser(name: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        subparsers.append(p)
        return p

    p = add_parser("sp", help="slope panel and minimal slope ratio")
    p.add_argument("--type", type=splitting.parse_splitting_type, required=True)
    p.set_defaults(func=_cmd_sp)

    p = add_parser("degbd", help="degree bound for rank-m quotients")
    p.add_argument("--nodal", type=nodal.parse_nodal_type, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_degbd)

    p = add_parser("smooth", help="admissible smoothings of a nodal type")
    p.add_argument("--nodal", type=nodal.parse_nodal_type, required=True)
    p.add_argument("--sequential", action="store_true")
    p.set_defaults(func=_cmd_smooth)

    p = add_parser("glue", help="glue splitting types into a nodal type")
    p.add_argument(
        "--type",
        type=splitting.parse_splitting_type,
        action="append",
        required=True,
        help="give once to glue a type to itself, twice for two types",
    )
    p.add_argument("--align", type=_alignment_token, default="dual")
    p.set_defaults(func=_cmd_glue)

    p = add_parser("balance", help="iterate worst-case glue-and-smooth steps")
    p.add_argument("--type", type=splitting.parse_splitting_type, required=True)
    p.add_argument("--max-steps", type=int, default=8)
    p.add_argument("--policy", choices=("worst", "best"), default="worst")
    p.add_argument(
        "--sequential", action=argparse.BooleanOptionalAction, default=True
    )
    p.set_defaults(func=_cmd_balance)

    p = add_parser("esp", help="expected slope panel of a curve class")
    p.add_argument("--model", required=True)
    p.add_argument("--class", dest="cls", type=_class_vector, required=True)
    p.set_defaults(func=_cmd_esp)

    tally_commands = (
        ("count", _cmd_count, "tabulate per-degree counting sums"),
        ("check", _cmd_check, "tabulate sums and locate the delta threshold"),
    )
    for name, func, text in tally_commands:
        p = add_parser(name, help=text)
        p.add_argument("--model", required=True)
        p.add_argument("--dmax", type=int, required=True)
        p.add_argument("--q", type=_fraction, default=None)
        p.add_argument("--delta", type=_fraction, default=None)
        p.set_defaults(func=func)

    for p in subparsers:
        p.add_argument("--out", default=None, help="write output to a file")
    return parser


def run(argv=None) -> int:
    """Parse arguments, dispatch, and return the process exit code."""
    args = _parser().parse_args(argv)
    try:
        text = args.func(args)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def script() -> None:
    sys.exit(run())
