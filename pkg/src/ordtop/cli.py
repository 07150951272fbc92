"""Command line interface.

Every verb prints stable ``key: value`` lines (or a JSON / DOT document for
the export verbs) so runs can be diffed.  Exit codes: 0 when the requested
checks pass, 1 when a verification fails, 2 when the input is unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptySet,
    ForeignSet,
    FormatError,
    InvalidModel,
    NotAnIdeal,
    NotAProductTopology,
    NotCoveringMax,
    TooLarge,
    UnknownLabel,
    VerificationFailed,
)
from .factorization import factor_model, lower_set_model, model_from_json
from .ideals import idl_poset
from .poset import find_order_isomorphism, label_text, load_poset, poset_to_json, to_dot
from .symbolic import (
    MODE_L,
    MODE_LHAT,
    Selector,
    diagonal_witness,
    family_from_json,
    gdelta_certificate_lhat,
    truncate_domain,
)
from .topology import (
    DEFAULT_MAX_ELEMENTS,
    compact_elements,
    is_algebraic,
    is_bounded_complete,
    is_continuous,
    is_ideal_domain,
    relative_topology,
    scott_opens,
)

INPUT_ERRORS = (
    FormatError,
    DuplicateLabel,
    UnknownLabel,
    CycleDetected,
    ForeignSet,
    EmptySet,
    TooLarge,
    InvalidModel,
    OSError,
)
VERIFICATION_ERRORS = (
    VerificationFailed,
    NotAnIdeal,
    NotCoveringMax,
    NotAProductTopology,
)


def _yn(value: bool) -> str:
    return "yes" if value else "no"


def _render_set(labels: Iterable, order: Sequence) -> str:
    position = {e: i for i, e in enumerate(order)}
    inner = ",".join(label_text(e) for e in sorted(labels, key=position.__getitem__))
    return "{" + inner + "}"


def _load_json(path: str):
    with open(path, encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _witness_text(selector: Selector) -> str:
    if not selector.exceptions:
        return "(default everywhere)"
    return " ".join(f"{i}:{v}" for i, v in selector.exceptions)


def cmd_check(args: argparse.Namespace) -> int:
    p = load_poset(args.input)
    print(f"elements: {len(p)}")
    print(f"dcpo: {_yn(p.is_dcpo())}")
    print(f"continuous: {_yn(is_continuous(p))}")
    print(f"algebraic: {_yn(is_algebraic(p))}")
    print(f"ideal-domain: {_yn(is_ideal_domain(p))}")
    print(f"bounded-complete: {_yn(is_bounded_complete(p, args.max_elements))}")
    print(f"compact-count: {len(compact_elements(p))}")
    maximal = p.maximal_elements()
    print(f"max-count: {len(maximal)}")
    print(f"maximal: {_render_set(maximal, p.elements)}")
    return 0


def cmd_topology(args: argparse.Namespace) -> int:
    p = load_poset(args.input)
    topology = scott_opens(p, args.max_elements)
    print(f"elements: {len(p)}")
    print(f"open-count: {len(topology.opens)}")
    for u in topology.sorted_opens():
        print(f"open: {_render_set(u, topology.space)}")
    return 0


def cmd_maxspace(args: argparse.Namespace) -> int:
    p = load_poset(args.input)
    maximal = p.maximal_elements()
    rel = relative_topology(p, maximal, args.max_elements)
    print(f"max-count: {len(rel.space)}")
    print(f"open-count: {len(rel.opens)}")
    print(f"discrete: {_yn(rel.is_discrete)}")
    for u in rel.sorted_opens():
        print(f"open: {_render_set(u, rel.space)}")
    return 0


def cmd_idl(args: argparse.Namespace) -> int:
    p = load_poset(args.input)
    completion, embedding = idl_poset(p, args.max_elements)
    print(f"base-elements: {len(p)}")
    print(f"ideal-count: {len(completion)}")
    print(f"isomorphic-to-base: {_yn(find_order_isomorphism(p, completion) is not None)}")
    for e in p.elements:
        print(f"principal {label_text(e)}: {_render_set(embedding[e], p.elements)}")
    return 0


def cmd_factor(args: argparse.Namespace) -> int:
    model = model_from_json(_load_json(args.input), max_elements=args.max_elements)
    completion, point_map, report = factor_model(model, max_elements=args.max_elements)
    print(report.render())
    for x in model.label_x:
        print(f"ideal-size {label_text(x)}: {len(point_map[x])}")
    print(f"completion-elements: {len(completion)}")
    print(f"verified: {_yn(report.ok)}")
    return 0 if report.ok else 1


def cmd_lower_model(args: argparse.Namespace) -> int:
    model = model_from_json(_load_json(args.input), max_elements=args.max_elements)
    fiber = model.y0 if args.y0 is None else args.y0
    sub, report = lower_set_model(model, fiber, max_elements=args.max_elements)
    print(report.render())
    print(f"verified: {_yn(report.ok)}")
    return 0 if report.ok else 1


def cmd_diagonal(args: argparse.Namespace) -> int:
    family = family_from_json(_load_json(args.input))
    witness, report = diagonal_witness(family, offsets=args.offset)
    print(report.render())
    print(f"witness: {_witness_text(witness)}")
    print(f"witness-default: {witness.default}")
    print(f"verified: {_yn(report.ok)}")
    return 0 if report.ok else 1


def cmd_lhat_cert(args: argparse.Namespace) -> int:
    report = gdelta_certificate_lhat(args.eval_bound)
    print(report.render())
    print(f"verified: {_yn(report.ok)}")
    return 0 if report.ok else 1


def cmd_truncate(args: argparse.Namespace) -> int:
    p, _ = truncate_domain(args.width, args.depth, args.mode,
                           max_elements=args.max_elements)
    print(json.dumps(poset_to_json(p), indent=2))
    return 0


def cmd_hasse(args: argparse.Namespace) -> int:
    p = load_poset(args.input)
    text = to_dot(p)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"written: {args.dot}")
    else:
        print(text, end="")
    return 0


def _add_input(sub: argparse.ArgumentParser, what: str) -> None:
    sub.add_argument("--input", required=True, help=f"path to a {what} file")


def _add_bound(sub: argparse.ArgumentParser, default: int = DEFAULT_MAX_ELEMENTS) -> None:
    sub.add_argument("--max-elements", type=int, default=default,
                     help=f"size guard for exhaustive passes (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordtop",
        description="order-theoretic domain checks, factorizations, and certificates",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("check", help="structural properties of a finite poset")
    _add_input(sub, "poset JSON")
    _add_bound(sub)
    sub.set_defaults(func=cmd_check)

    sub = commands.add_parser("topology", help="all Scott open sets of a finite poset")
    _add_input(sub, "poset JSON")
    _add_bound(sub)
    sub.set_defaults(func=cmd_topology)

    sub = commands.add_parser("maxspace", help="relative topology on the maximal elements")
    _add_input(sub, "poset JSON")
    _add_bound(sub)
    sub.set_defaults(func=cmd_maxspace)

    sub = commands.add_parser("idl", help="ideal completion of a finite poset")
    _add_input(sub, "poset JSON")
    _add_bound(sub)
    sub.set_defaults(func=cmd_idl)

    sub = commands.add_parser("factor", help="factor model construction with verification")
    _add_input(sub, "product model JSON")
    _add_bound(sub)
    sub.set_defaults(func=cmd_factor)

    sub = commands.add_parser("lower-model", help="down set of one fiber of a product model")
    _add_input(sub, "product model JSON")
    sub.add_argument("--y0", help="fiber label on the second factor (default: the model's base point)")
    _add_bound(sub)
    sub.set_defaults(func=cmd_lower_model)

    sub = commands.add_parser("diagonal", help="diagonal witness against a covering family")
    _add_input(sub, "open family JSON")
    sub.add_argument("--offset", type=int, default=0,
                     help="lift every witness position this far above its threshold")
    sub.set_defaults(func=cmd_diagonal)

    sub = commands.add_parser("lhat-cert", help="countable-intersection certificate for the pruned domain")
    sub.add_argument("--eval-bound", type=int, default=50,
                     help="check chain points and cutoffs up to this index (default 50)")
    sub.set_defaults(func=cmd_lhat_cert)

    sub = commands.add_parser("truncate-l", help="finite prefix of the chain-bundle domain as poset JSON")
    sub.add_argument("--width", type=int, required=True, help="number of chains kept")
    sub.add_argument("--depth", type=int, required=True, help="finite positions kept per chain")
    sub.add_argument("--mode", choices=(MODE_L, MODE_LHAT), default=MODE_L)
    _add_bound(sub, default=5000)
    sub.set_defaults(func=cmd_truncate)

    sub = commands.add_parser("hasse", help="DOT rendering of the cover relation")
    _add_input(sub, "poset JSON")
    sub.add_argument("--dot", help="write the DOT text here instead of stdout")
    sub.set_defaults(func=cmd_hasse)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VERIFICATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
