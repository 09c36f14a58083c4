"""Command-line entry point.

Exit codes: 0 success, 2 input error, 3 size guard, 4 verification failure.
Reports are ``key: value`` lines on standard output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import hardness_reduction as hr
from .cover_solvers import (READ_PAIR_GUARD, Objective, SolverOptions, solve_bruteforce,
                            solve_relaxed_dp)
from .diploid import DIPLOID_GUARD
from .errors import DipalignError, InputError, InstanceTooLarge, VerificationFailure
from .formats import parse_alignment_file, parse_scheme, parse_string_file
from .labeled_dag import encode_diploid, parse_dag
from .strings_core import (ScoringScheme, edit_distance, global_alignment, global_alignment_score,
                           is_subsequence, lcs_multi)

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_VERIFY = 0, 2, 3, 4
DEFAULT_SIZE_CAP = 1_000_000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _fmt(v) -> str:
    if isinstance(v, float):
        return "-inf" if v < 0 else "inf"
    return str(v)


def cmd_align(args, out) -> int:
    alpha_a, a = parse_string_file(_read(args.a))
    alpha_b, b = parse_string_file(_read(args.b))
    if args.scheme == "unit":
        scheme = ScoringScheme.unit(alpha_a)
    elif args.scheme == "corollary":
        scheme = hr.corollary_scheme(args.D)
    else:
        scheme = parse_scheme(_read(args.scheme))
    for s in (a, b):
        scheme.alphabet.validate(s)
    out.write(f"distance: {edit_distance(a, b)}\n")
    out.write(f"score: {_fmt(global_alignment_score(a, b, scheme))}\n")
    if args.witness:
        _, ra, rb = global_alignment(a, b, scheme)
        out.write(f"row_a: {ra}\nrow_b: {rb}\n")
    return EXIT_OK


def cmd_cover_align(args, out) -> int:
    d1 = parse_dag(_read(args.d1))
    d2 = parse_dag(_read(args.d2))
    opts = SolverOptions(Objective.parse(args.objective), args.disjoint1, args.disjoint2,
                         args.source_sink, not args.no_cover_d2)
    if args.engine == "dp":
        if opts.require_cover_d2:
            raise InputError("--engine dp requires --no-cover-d2")
        sol = solve_relaxed_dp(d1, d2, opts)
    else:
        sol = solve_bruteforce(d1, d2, opts, args.guard)
    out.write(sol.format())
    return EXIT_OK


def cmd_encode_diploid(args, out) -> int:
    _, alignments = parse_alignment_file(_read(args.alignment))
    if len(alignments) != 1:
        raise InputError("encode-diploid takes a file holding exactly one alignment")
    out.write(encode_diploid(alignments[0]).to_text())
    return EXIT_OK


def _summary(params, out):
    for ln in params.lines():
        out.write(ln.replace(" ", ": ", 1) + "\n")


def cmd_reduce(args, out) -> int:
    inst = hr.LcsInstance.parse(_read(args.lcs))
    params = hr.default_params(inst, args.scale, args.seed, args.N, args.tab_length, args.tab_k)
    _summary(params, out)
    out.flush()
    hr.guard_size(params, args.max_size)
    ri = hr.build_instance(inst, params)
    hr.write_bundle(ri, Path(args.out))
    out.write(f"tab: {ri.tab}\n")
    out.write(f"tab_verified: {'yes' if ri.tab_verified else 'no'}\n")
    out.write(f"tab_adequate: {'yes' if hr.tab_adequate(ri) else 'no'}\n")
    out.write(f"nodes_a: {len(ri.dag_a)}\nnodes_b: {len(ri.dag_b)}\n")
    return EXIT_OK


def _verify_lemma1(ri, out) -> bool:
    s = lcs_multi(ri.lcs.strings)
    w = hr.lemma1_witness(ri, s)
    d_red, d_green = hr.witness_costs(ri, w)
    ok = d_red == 0 and d_green == 2 * w.delta
    out.write(f"lemma1: {'PASS' if ok else 'FAIL'}\n")
    out.write(f"lemma1.lcs: {s!r}\nlemma1.delta: {w.delta}\n")
    out.write(f"lemma1.d_red: {d_red}\nlemma1.d_green: {d_green}\n")
    return ok


def _verify_lemma2(ri, out, guard) -> bool:
    sol = hr.solve_cover(ri, guard=guard)
    target = 2 * (ri.lcs.ell - len(lcs_multi(ri.lcs.strings)))
    out.write(f"lemma2.value: {sol.value}\n")
    out.write(f"lemma2.optimum_matches_lcs: {'yes' if sol.value == target else 'no'} (reported)\n")
    try:
        s = hr.lemma2_extract(ri, sol)
    except VerificationFailure as e:
        out.write(f"lemma2: FAIL\nlemma2.reason: {e}\n")
        return False
    common = all(is_subsequence(s, x) for x in ri.lcs.strings)
    bound = 2 * (ri.lcs.ell - len(s)) <= sol.value
    ok = common and bound
    out.write(f"lemma2: {'PASS' if ok else 'FAIL'}\n")
    out.write(f"lemma2.extracted: {s!r}\n")
    out.write(f"lemma2.bound: {ri.lcs.ell - len(s)} <= {sol.value}/2 {'holds' if bound else 'violated'}\n")
    return ok


def _verify_corollary(ri, out, guard, diploid_guard) -> bool:
    rep = hr.corollary_verify(ri, diploid_guard=diploid_guard, guard=guard)
    ok = rep.upper_bound_holds
    out.write(f"corollary: {'PASS' if ok else 'FAIL'}\n")
    out.write(f"corollary.diploid_score: {_fmt(rep.diploid_score)}\n")
    out.write(f"corollary.v1: {_fmt(rep.v1)}\ncorollary.v2: {rep.v2}\n")
    out.write(f"corollary.equal: {'yes' if rep.equal else 'no'} (reported)\n")
    out.write(f"corollary.bound: {rep.v2} <= {rep.bound}\n")
    return ok


def cmd_verify(args, out) -> int:
    ri = hr.read_bundle(Path(args.bundle))
    out.write(f"tab_verified: {'yes' if ri.tab_verified else 'no'}\n")
    out.write(f"tab_adequate: {'yes' if hr.tab_adequate(ri) else 'no'}\n")
    modes = ["lemma1", "lemma2", "corollary"] if args.mode == "full" else [args.mode]
    failed = guarded = False
    for mode in modes:
        try:
            if mode == "lemma1":
                ok = _verify_lemma1(ri, out)
            elif mode == "lemma2":
                ok = _verify_lemma2(ri, out, args.guard)
            else:
                ok = _verify_corollary(ri, out, args.guard, args.diploid_guard)
        except InstanceTooLarge as e:
            out.write(f"{mode}: SKIPPED\n{mode}.reason: {e}\n")
            guarded = True
            continue
        failed |= not ok
    if failed:
        return EXIT_VERIFY
    return EXIT_GUARD if guarded else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dipalign", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("align", help="edit distance and scored global alignment of two strings")
    a.add_argument("--a", required=True)
    a.add_argument("--b", required=True)
    a.add_argument("--scheme", default="unit", help="unit, corollary, or a scheme file")
    a.add_argument("--D", type=int, default=5, help="separator weight for the corollary scheme")
    a.add_argument("--witness", action="store_true")
    a.set_defaults(func=cmd_align)

    c = sub.add_parser("cover-align", help="two-path covering alignment of two DAGs")
    c.add_argument("--d1", required=True)
    c.add_argument("--d2", required=True)
    c.add_argument("--objective", default="sum")
    c.add_argument("--disjoint1", action="store_true")
    c.add_argument("--disjoint2", action="store_true")
    c.add_argument("--no-cover-d2", action="store_true")
    c.add_argument("--source-sink", action="store_true")
    c.add_argument("--engine", choices=("brute", "dp"), default="brute")
    c.add_argument("--guard", type=int, default=READ_PAIR_GUARD)
    c.set_defaults(func=cmd_cover_align)

    e = sub.add_parser("encode-diploid", help="encode a pairwise alignment as a DAG")
    e.add_argument("--alignment", required=True)
    e.set_defaults(func=cmd_encode_diploid)

    r = sub.add_parser("reduce", help="build an LCS reduction bundle")
    r.add_argument("--lcs", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--scale", choices=(hr.PAPER, hr.DESK), default=hr.DESK)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--N", type=int)
    r.add_argument("--tab-length", type=int)
    r.add_argument("--tab-k", type=int)
    r.add_argument("--max-size", type=int, default=DEFAULT_SIZE_CAP,
                   help="cap on total label characters of both DAGs")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="check a reduction bundle")
    v.add_argument("--bundle", required=True)
    v.add_argument("--mode", choices=("lemma1", "lemma2", "corollary", "full"), default="full")
    v.add_argument("--guard", type=int, default=hr.REDUCTION_GUARD)
    v.add_argument("--diploid-guard", type=int, default=2 * DIPLOID_GUARD)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InstanceTooLarge as e:
        print(f"guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except VerificationFailure as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except DipalignError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
