#!/usr/bin/env python3
"""
Command-line front end for the tropical factorization toolkit.

Verdict verbs print YES or NO on the first line and exit 0 / 1; any
error exits 2 with a message on stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

try:
    from .counterexamples import gen_cnu, gen_family, minor_rank_le4_check
    from .oracle import factor_rank_exact
    from .rank3 import DecisionTrace, decide_factor_rank_le3
    from .reductions import (
        GADGET_RANK,
        InadmissibleInstanceError,
        build_gadget,
        eliminate_infinity,
        gadget_for_k,
        gadget_witness_for_k,
        read_instance,
        restore_infinity,
        ssref_answer,
        witness_from_splitting,
    )
    from .trop_core import (
        INF,
        Factorization,
        TropError,
        TropMatrix,
        format_matrix,
        format_value,
        read_matrix,
        scale_normalize,
        trop_mat_mul,
        tropical_permanent,
        tropical_rank,
        verify_product,
        write_matrix,
    )
except ImportError:
    from counterexamples import gen_cnu, gen_family, minor_rank_le4_check
    from oracle import factor_rank_exact
    from rank3 import DecisionTrace, decide_factor_rank_le3
    from reductions import (
        GADGET_RANK,
        InadmissibleInstanceError,
        build_gadget,
        eliminate_infinity,
        gadget_for_k,
        gadget_witness_for_k,
        read_instance,
        restore_infinity,
        ssref_answer,
        witness_from_splitting,
    )
    from trop_core import (
        INF,
        Factorization,
        TropError,
        TropMatrix,
        format_matrix,
        format_value,
        read_matrix,
        scale_normalize,
        trop_mat_mul,
        tropical_permanent,
        tropical_rank,
        verify_product,
        write_matrix,
    )

__version__ = "1.0.0"

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _save(a: TropMatrix, path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    saved = write_matrix(a, path)
    print(f"📁 Saved {saved}")


def _emit(a: TropMatrix, path: Optional[str]) -> None:
    if path:
        _save(a, path)
    else:
        print(format_matrix(a), end="")


def _emit_witness(f: Factorization, left_path: Optional[str], right_path: Optional[str]) -> None:
    if left_path or right_path:
        if left_path:
            _save(f.left, left_path)
        if right_path:
            _save(f.right, right_path)
    else:
        print(f)


def _rank3_any(a: TropMatrix, trace: DecisionTrace, budget: Optional[int]) -> Optional[Factorization]:
    """Run the rank-3 decider, removing INF entries first when there are any"""
    if a.is_finite():
        return decide_factor_rank_le3(a, trace, budget)
    normalized, scaling = scale_normalize(a)
    f = decide_factor_rank_le3(eliminate_infinity(normalized), trace, budget)
    if f is None:
        return None
    return scaling.inverse().transport(restore_infinity(normalized, f))


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def cmd_mul(args) -> int:
    print(format_matrix(trop_mat_mul(read_matrix(args.a), read_matrix(args.b))), end="")
    return EXIT_YES


def cmd_troprank(args) -> int:
    print(tropical_rank(read_matrix(args.a), cap=args.cap))
    return EXIT_YES


def cmd_perm(args) -> int:
    value, twice = tropical_permanent(read_matrix(args.a), cap=args.cap)
    print(format_value(value))
    print("singular" if twice or value is INF else "nonsingular")
    return EXIT_YES


def cmd_rank3(args) -> int:
    a = read_matrix(args.a)
    trace = DecisionTrace()
    f = _rank3_any(a, trace, args.budget)
    logging.getLogger(__name__).debug(
        "placements=%d systems=%s certificate=%s", trace.placements, trace.systems, trace.certificate
    )
    if f is None:
        print("NO")
        print(f"factor rank of the {a.rows}x{a.cols} matrix exceeds 3")
        if trace.certificate is not None:
            kind, line, other = trace.certificate
            print(f"zero {kind} {line + 1} with line {other + 1} gives a rank-4 certificate")
        return EXIT_NO
    print("YES")
    if args.witness:
        _save(f.left, f"{args.witness}.B")
        _save(f.right, f"{args.witness}.C")
    else:
        print(f)
    return EXIT_YES


def cmd_factor_rank(args) -> int:
    print(factor_rank_exact(read_matrix(args.a), args.budget))
    return EXIT_YES


def cmd_verify(args) -> int:
    target = read_matrix(args.a)
    f = Factorization(read_matrix(args.b), read_matrix(args.c))
    if verify_product(target, f):
        print("YES")
        print(f"B (x) C reproduces the {target.rows}x{target.cols} target")
        return EXIT_YES
    print("NO")
    print("B (x) C differs from the target")
    return EXIT_NO


def cmd_reduce_ss(args) -> int:
    inst = read_instance(args.instance, args.format)
    try:
        a = build_gadget(inst) if args.k == GADGET_RANK else gadget_for_k(inst, args.k)
    except InadmissibleInstanceError as e:
        print("NO")
        print(e)
        return EXIT_NO
    print("YES")
    shape = "raw, with inf" if args.k == GADGET_RANK else "bordered, normalized, finite"
    print(f"gadget for k={args.k}: {a.rows}x{a.cols} ({shape})")
    _emit(a, args.out)
    return EXIT_YES


def cmd_witness_ss(args) -> int:
    inst = read_instance(args.instance, args.format)
    w = ssref_answer(inst)
    if w is None:
        print("NO")
        print("instance does not split; no witness exists")
        return EXIT_NO
    if args.k == GADGET_RANK:
        f = witness_from_splitting(inst, w)
    else:
        f = gadget_witness_for_k(inst, w, args.k)
    print("YES")
    print(f"split {sorted(w.phi1)} | {sorted(w.phi2)}")
    _emit_witness(f, args.out_b, args.out_c)
    return EXIT_YES


def cmd_gen_cnu(args) -> int:
    a = gen_cnu(args.nu) if args.k is None else gen_family(args.k, args.nu)
    _emit(a, args.out)
    return EXIT_YES


def cmd_check_cnu(args) -> int:
    report = minor_rank_le4_check(args.nu, samples=args.samples, seed=args.seed)
    print("YES" if report.passed else "NO")
    for line in report.lines():
        print(line)
    return EXIT_YES if report.passed else EXIT_NO


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troprank",
        description="Exact tropical (min-plus) matrix factorization toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s mul A.txt B.txt              # Min-plus product
  %(prog)s troprank A.txt               # Tropical rank
  %(prog)s perm A.txt                   # Tropical permanent and singularity
  %(prog)s rank3 A.txt --witness out/a  # Decide factor rank <= 3, save out/a.B, out/a.C
  %(prog)s factor-rank A.txt --budget 1000000  # Exact factor rank by exhaustive search
  %(prog)s verify A.txt B.txt C.txt     # Check B (x) C = A
  %(prog)s reduce-ss split.txt --k 9    # Gadget matrix for a SET SPLITTING instance
  %(prog)s witness-ss split.txt --out-b B.txt --out-c C.txt
  %(prog)s gen-cnu --nu 3 --out C3.txt  # Counterexample matrix C(3)
  %(prog)s check-cnu --nu 4 --samples 50 --seed 1

Exit codes: 0 yes/done, 1 no, 2 error.
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument(
        "--cap", type=int, default=None,
        help="Largest permutation size enumerated by perm/troprank (default: 9)",
    )
    verbs = parser.add_subparsers(dest="verb", metavar="VERB")
    verbs.required = True

    p = verbs.add_parser("mul", help="Min-plus product of two matrix files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_mul)

    p = verbs.add_parser("troprank", help="Tropical rank")
    p.add_argument("a")
    p.set_defaults(handler=cmd_troprank)

    p = verbs.add_parser("perm", help="Tropical permanent of a square matrix")
    p.add_argument("a")
    p.set_defaults(handler=cmd_perm)

    p = verbs.add_parser("rank3", help="Decide factor rank <= 3")
    p.add_argument("a")
    p.add_argument("--witness", metavar="PREFIX", help="Write PREFIX.B and PREFIX.C")
    p.add_argument("--budget", type=int, default=None, help="Pattern budget for the rank-2 fallback")
    p.set_defaults(handler=cmd_rank3)

    p = verbs.add_parser("factor-rank", help="Exact factor rank by winner-pattern search")
    p.add_argument("a")
    p.add_argument(
        "--budget", type=int, default=None,
        help="Largest pattern count k^(mn) searched (default: $TROPRANK_BUDGET or 10^7)",
    )
    p.set_defaults(handler=cmd_factor_rank)

    p = verbs.add_parser("verify", help="Check B (x) C = A")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.set_defaults(handler=cmd_verify)

    for name, handler, text in (
        ("reduce-ss", cmd_reduce_ss, "Gadget matrix for a splitting instance"),
        ("witness-ss", cmd_witness_ss, "Gadget factorization from a split"),
    ):
        p = verbs.add_parser(name, help=text)
        p.add_argument("instance")
        p.add_argument(
            "--k", type=int, default=GADGET_RANK,
            help="Target rank (default: 8, the raw gadget with inf; k > 8 gives the "
            "bordered, normalized, finite matrix)",
        )
        p.add_argument(
            "--format", choices=["split", "ssref"], default="split",
            help="Instance file format (default: split)",
        )
        if name == "reduce-ss":
            p.add_argument("--out", help="Write the matrix here instead of stdout")
        else:
            p.add_argument("--out-b", help="Write B here")
            p.add_argument("--out-c", help="Write C here")
        p.set_defaults(handler=handler)

    p = verbs.add_parser("gen-cnu", help="Counterexample matrix C(nu), or the rank-k family")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="Bordered family member for k > 4")
    p.add_argument("--out", help="Write the matrix here instead of stdout")
    p.set_defaults(handler=cmd_gen_cnu)

    p = verbs.add_parser("check-cnu", help="Verify the rank-4 minor witnesses of C(nu)")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--samples", type=int, default=0, help="Random nu x nu minors to test")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_check_cnu)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (TropError, ValueError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
