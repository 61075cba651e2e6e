"""Command-line front door.

Subcommands: embed, cont, baire, verify, split, tree.  Reports are plain
text, one fact per line, so runs diff cleanly against snapshots.  Exit
codes: 0 all checks ok, 1 any FAIL, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import lazyset
from .baire import EmbeddingFamily, verify_chain_monotone
from .certs import (InvalidCertificateError, OrderCertificate, SplitChain,
                    default_certificate, default_interval, embed_ordinal,
                    parse_certificate, tree_child_certs, tree_node,
                    verify_certificate)
from .lazyset import ResourceLimitError, SetParseError, parse_set
from .metric import (MetricAxiomError, SpaceParseError, build_chain,
                     format_eval, load_space)
from .ordinal import (Ordinal, OrdinalParseError, format_ordinal,
                      parse_ordinal)
from .sampling import sample_comparable_pairs

USAGE_ERROR = 2


def _split_interval_arg(text: str):
    """Split 'setA,setB' at the top-level comma."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return text[:i], text[i + 1:]
    raise SetParseError("interval needs two comma-separated set expressions")


def _interval_cert(arg: Optional[str], bound: int) -> OrderCertificate:
    if arg is None:
        return default_interval()
    lo, hi = _split_interval_arg(arg)
    return default_certificate(parse_set(lo), parse_set(hi), bound)


def _label(a: Ordinal) -> str:
    return format_ordinal(a, compact=True)


def cmd_embed(args) -> int:
    xi = parse_ordinal(args.ordinal)
    cert = _interval_cert(args.interval, args.bound)
    embedding = embed_ordinal(xi, cert)
    pairs = sample_comparable_pairs(xi, args.pairs, random.Random(args.seed)) \
        if not xi.is_zero() else []
    failed = 0
    for a, b in pairs:
        r = verify_certificate(embedding.cert(a, b), args.depth)
        if r.ok:
            print(f"PAIR {_label(a)} {_label(b)} OK")
        else:
            print(f"PAIR {_label(a)} {_label(b)} FAIL {r.message}")
            failed += 1
    print(f"CHECKED {len(pairs)} FAILED {failed}")
    return 0 if failed == 0 else 1


def cmd_baire(args) -> int:
    xi = parse_ordinal(args.ordinal)
    embedding = embed_ordinal(xi, default_interval())
    pairs = sample_comparable_pairs(xi, args.pairs, random.Random(args.seed)) \
        if not xi.is_zero() else []
    indices = sorted({a for p in pairs for a in p})
    family = EmbeddingFamily(embedding, indices)
    report = verify_chain_monotone(family, pairs, args.depth,
                                   sample_points=indices[:5])
    print(report.text)
    return 0 if report.ok else 1


def cmd_cont(args) -> int:
    space = load_space(args.space)
    chain = build_chain(space)
    if args.eval is not None:
        d_str, x_str = args.eval.split(",")
        d, x = int(d_str), int(x_str)
        if not (0 <= d < space.n and 0 <= x < space.n):
            raise SpaceParseError("eval indices out of range")
        value, tail = chain.eval(d, x, truncate=args.truncate)
        print(format_eval(d, x, value, tail))
    if args.check_all:
        table = chain.value_table()
        failed = checked = 0
        for pd in range(space.n):
            for pe in range(pd + 1, space.n):
                d, e = space.order[pd], space.order[pe]
                checked += 1
                if any(table[d][x] > table[e][x] for x in range(space.n)):
                    print(f"PAIR {d} {e} FAIL monotonicity")
                    failed += 1
                elif not table[d][d] < table[e][d]:
                    print(f"PAIR {d} {e} FAIL strictness")
                    failed += 1
                else:
                    print(f"PAIR {d} {e} OK")
        print(f"CHECKED {checked} FAILED {failed}")
        if failed:
            return 1
    return 0


def cmd_verify(args) -> int:
    if args.depth < 1:
        print("verify: --depth must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    with open(args.cert, encoding="utf-8") as fh:
        cert = parse_certificate(fh.read())
    r = verify_certificate(cert, args.depth)
    print("OK" if r.ok else f"FAIL {r.message}")
    return 0 if r.ok else 1


def cmd_split(args) -> int:
    cert = _interval_cert(args.interval, args.bound)
    chain = SplitChain(cert)
    failed = 0
    for k in range(1, args.count + 1):
        print(f"Z {k} {chain.z(k).expr}")
    checks = [("x", "z1", chain.cert_lower(1))]
    checks += [(f"z{k}", f"z{k + 1}", chain.cert_step(k))
               for k in range(1, args.count)]
    checks.append((f"z{args.count}", "y", chain.cert_upper(args.count)))
    for lo, hi, c in checks:
        r = verify_certificate(c, args.depth)
        if r.ok:
            print(f"PAIR {lo} {hi} OK")
        else:
            print(f"PAIR {lo} {hi} FAIL {r.message}")
            failed += 1
    print(f"CHECKED {len(checks)} FAILED {failed}")
    return 0 if failed == 0 else 1


def cmd_tree(args) -> int:
    try:
        address = tuple(int(f) for f in args.address.split(","))
    except ValueError as exc:
        raise SetParseError(f"bad address: {exc}") from exc
    if not 0 < args.a < args.b:
        print("tree: need 0 < a < b", file=sys.stderr)
        return USAGE_ERROR
    node = tree_node(address)
    print(f"NODE {node.expr}")
    zero_ext = tree_node(address + (0,))
    print(f"EXTEND0 {'OK' if zero_ext.expr == node.expr else 'FAIL'}")
    labels = [("s", f"s~{args.a}"), (f"s~{args.a}", f"s~{args.b}"),
              (f"s~{args.b}", "s+")]
    failed = 0 if zero_ext.expr == node.expr else 1
    for (lo, hi), c in zip(labels, tree_child_certs(address, args.a, args.b)):
        r = verify_certificate(c, args.depth)
        if r.ok:
            print(f"PAIR {lo} {hi} OK")
        else:
            print(f"PAIR {lo} {hi} FAIL {r.message}")
            failed += 1
    print(f"CHECKED {len(labels) + 1} FAILED {failed}")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordchain",
        description="Construct and verify certified mod-finite chains, "
                    "ordinal embeddings and continuous-function chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed an ordinal into an interval")
    p.add_argument("--ordinal", required=True)
    p.add_argument("--interval", default=None,
                   help="lower,upper set expressions (default rows(0),rows(1))")
    p.add_argument("--bound", type=int, default=0,
                   help="exception bound for the interval certificate")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--depth", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("cont", help="continuous chains on a metric space file")
    p.add_argument("--space", required=True)
    p.add_argument("--eval", default=None, metavar="D,X")
    p.add_argument("--truncate", type=int, default=None)
    p.add_argument("--check-all", action="store_true")
    p.set_defaults(func=cmd_cont)

    p = sub.add_parser("baire", help="verify the indicator chain of an embedding")
    p.add_argument("--ordinal", required=True)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--depth", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_baire)

    p = sub.add_parser("verify", help="check a serialized certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--depth", type=int, default=32)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("split", help="split an interval into an omega-chain")
    p.add_argument("--interval", default=None)
    p.add_argument("--bound", type=int, default=0)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--depth", type=int, default=16)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("tree", help="materialize and check a tree address")
    p.add_argument("--address", required=True, metavar="N,N,...")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--depth", type=int, default=32)
    p.set_defaults(func=cmd_tree)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    cap = os.environ.get("TC_DEPTH_CAP")
    if cap is not None:
        try:
            lazyset.set_depth_cap(int(cap))
        except ValueError:
            print(f"bad TC_DEPTH_CAP: {cap!r}", file=sys.stderr)
            return USAGE_ERROR
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OrdinalParseError, SetParseError, SpaceParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR
    except MetricAxiomError as exc:
        print(f"FAIL {exc}")
        return 1
    except (InvalidCertificateError, ResourceLimitError) as exc:
        print(f"FAIL {exc}")
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
