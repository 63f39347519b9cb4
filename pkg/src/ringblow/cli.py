"""Command-line front end for the counting workbench.

Subcommands cover the full chain: exact counting (`count`), the
crossing-elimination reduction onto ring blowups (`reduce`), recovery of
signed counts through an unweighted oracle (`strip-weights`), the
round-trip check tying those together (`pipeline`), plus the evidence
tools: `gadget verify`, `minor`, `certify-simple-ring` and
`make-simple`.

Everything is deterministic: the perturbation schedule behind `reduce`
starts from the environment variable RB_SEED (default 1), ties are
broken by fixed orders throughout, and exact values print as integers
when integral, else as p/q.  Identical invocations produce byte
identical output.  FILE arguments accept "-" for standard input.

Exit status: 0 on success, 1 when the operation ran but a check failed
(a FAIL verdict, a non-planar input to the FKT engine, an exhausted
search budget), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from itertools import combinations

from .core import (
    GraphFormatError,
    complete_graph,
    format_rational,
    parse_graph,
)
from .count import NonPlanarInput, count_pm_exact, count_pm_fkt, planar_embed
from .gadgets import (
    ATTACHMENT_LABELS,
    SIGN_CROSSING_SIGNATURE,
    compute_signature,
    load_shipped_gadget,
)
from .minors import BudgetExceeded, has_minor, parse_minor_model, serialize_minor_model
from .reduce import (
    OraclePrecondition,
    WeightedInput,
    build_ring_blowup,
    extern_oracle,
    parse_ring_blowup,
    serialize_ring_blowup,
    strip_weights,
    verify_ring_blowup,
)
from .rings import (
    certify_simple_ring_blowup,
    make_simple,
    parse_simple_ring,
    serialize_certificate,
)
from .svg import render_ring_blowup


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _seed() -> int:
    return int(os.environ.get("RB_SEED", "1"))


def cmd_count(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.file))
    engine = args.engine
    if engine == "auto":
        nonneg = all(w >= 0 for w in g.weights.values())
        engine = "fkt" if nonneg and planar_embed(g) is not None else "brute"
    value = count_pm_fkt(g) if engine == "fkt" else count_pm_exact(g)
    print(format_rational(value))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.file))
    if not g.is_unweighted():
        raise WeightedInput("reduce expects an unweighted graph")
    r = build_ring_blowup(g, seed=_seed())
    check = verify_ring_blowup(r)
    if not check:
        print(f"output failed verification: {check.why}", file=sys.stderr)
        return 1
    _write_text(args.out, serialize_ring_blowup(r))
    if args.svg is not None:
        _write_text(args.svg, render_ring_blowup(r))
    return 0


def _oracle_from_arg(spec: str):
    if spec == "exact":
        return None
    if spec.startswith("extern:"):
        return extern_oracle(spec[len("extern:"):])
    raise GraphFormatError(f"unknown oracle {spec!r}; use exact or extern:CMD")


def cmd_strip_weights(args: argparse.Namespace) -> int:
    r = parse_ring_blowup(_read_text(args.file))
    value = strip_weights(r, oracle=_oracle_from_arg(args.oracle), jobs=args.jobs)
    print(format_rational(value))
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.file))
    if not g.is_unweighted():
        raise WeightedInput("pipeline expects an unweighted graph")
    if g.n % 2 == 1:
        raise GraphFormatError("pipeline expects an even vertex count")
    r = build_ring_blowup(g, seed=_seed())
    direct = count_pm_exact(g)
    stripped = strip_weights(r, jobs=args.jobs)
    print(f"direct {format_rational(direct)}")
    print(f"stripped {format_rational(stripped)}")
    ok = stripped == direct
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_gadget_verify(args: argparse.Namespace) -> int:
    gadget = load_shipped_gadget()
    sig = compute_signature(gadget.graph, gadget.attachments)
    mismatched = False
    for r in range(5):
        for t in combinations(ATTACHMENT_LABELS, r):
            key = frozenset(t)
            want = SIGN_CROSSING_SIGNATURE[key]
            got = sig[key]
            if got == 0 and want == 0:
                continue
            name = "{" + ",".join(t) + "}"
            line = f"{name} {format_rational(got)}"
            if got != want:
                line += f" (expected {format_rational(want)})"
                mismatched = True
            print(line)
    if mismatched:
        print("MISMATCH")
        return 1
    print("signature ok")
    return 0


def cmd_minor(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.file))
    model = has_minor(g, complete_graph(args.clique))
    if model is None:
        print("absent")
    else:
        sys.stdout.write(serialize_minor_model(model))
    return 0


def cmd_certify_simple_ring(args: argparse.Namespace) -> int:
    q = parse_simple_ring(_read_text(args.file))
    cert = certify_simple_ring_blowup(q)
    sys.stdout.write(serialize_certificate(cert))
    return 0


def cmd_make_simple(args: argparse.Namespace) -> int:
    r = parse_ring_blowup(_read_text(args.file))
    model = parse_minor_model(_read_text(args.model))
    q, carried = make_simple(r, model)
    _write_text(args.out, serialize_ring_blowup(q))
    _write_text(args.out_model, serialize_minor_model(carried))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringblow",
        description="Exact perfect-matching counting over ring blowups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print the exact perfect-matching count")
    p.add_argument("file", help="graph file, or - for stdin")
    p.add_argument(
        "--engine",
        choices=("brute", "fkt", "auto"),
        default="auto",
        help="auto picks fkt for planar nonnegative inputs, brute otherwise",
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "reduce", help="rewrite a graph as a count-preserving ring blowup"
    )
    p.add_argument("file", help="unweighted graph file, or - for stdin")
    p.add_argument("-o", "--out", default=None, help="ring blowup output path")
    p.add_argument("--svg", default=None, help="also write a diagnostic drawing")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser(
        "strip-weights",
        help="evaluate a +-1-weighted ring blowup through an unweighted oracle",
    )
    p.add_argument("file", help="ring blowup file, or - for stdin")
    p.add_argument(
        "--oracle",
        default="exact",
        help="exact (internal) or extern:CMD reading a graph on stdin",
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel oracle calls")
    p.set_defaults(func=cmd_strip_weights)

    p = sub.add_parser(
        "pipeline",
        help="reduce, strip weights, and compare against the direct count",
    )
    p.add_argument("file", help="unweighted graph file, or - for stdin")
    p.add_argument("--jobs", type=int, default=1, help="parallel oracle calls")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("gadget", help="gadget tools")
    gsub = p.add_subparsers(dest="gadget_command", required=True)
    gv = gsub.add_parser(
        "verify", help="re-derive the shipped crossing gadget's signature"
    )
    gv.set_defaults(func=cmd_gadget_verify)

    p = sub.add_parser("minor", help="search for a complete-graph minor")
    p.add_argument("file", help="graph file, or - for stdin")
    p.add_argument(
        "--clique", type=int, required=True, metavar="K", help="order of the clique"
    )
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser(
        "certify-simple-ring",
        help="emit a clique-sum certificate that a simple ring's blowup has no K8 minor",
    )
    p.add_argument("file", help="simple ring file, or - for stdin")
    p.set_defaults(func=cmd_certify_simple_ring)

    p = sub.add_parser(
        "make-simple",
        help="quotient a ring blowup with a clique minor model to a simple one",
    )
    p.add_argument("file", help="ring blowup file, or - for stdin")
    p.add_argument("--model", required=True, help="minor model file")
    p.add_argument("-o", "--out", default=None, help="simple ring blowup output path")
    p.add_argument("--out-model", default=None, help="carried model output path")
    p.set_defaults(func=cmd_make_simple)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        NonPlanarInput,
        WeightedInput,
        OraclePrecondition,
        BudgetExceeded,
        ValueError,
        RuntimeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
