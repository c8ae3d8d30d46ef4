"""Command line interface.

Results go to stdout as JSON (one object, or for enumerate one object per
line followed by a summary).  Exit codes: 0 for success, 1 for a verified
negative result (a partition that is not equitable, a construction whose
input fails its balance gate, an unclassified partition), 2 for usage or
document format errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path
from typing import Any

from .constructions import (
    AlphabetBlocks,
    LiftBlocks,
    eight_cycle_partition,
    is_induced_cycle,
    lift_two_partition,
    lifted_cycle_pair,
    permutation_switching,
)
from .documents import (
    DocumentError,
    blocks_to_text,
    function_from_doc,
    load_json,
    parse_blocks,
    partition_from_doc,
    partition_to_doc,
)
from .eigenfunctions import (
    AllZero,
    Constant,
    NotEigen,
    NotMember,
    QuasiCross,
    QuasiString,
    classify_lambda1,
    classify_top_two,
    in_top_two_eigenspaces,
)
from .hamming import GraphParams, eigenvalue
from .partitions import (
    NotEquitable,
    QuotientMatrix,
    TwoPartition,
    equitable_check,
    essential_coordinates,
    orthogonal_array_check,
    quotient_eigenvalue_indices,
    reduce as reduce_partition,
    spectral_check,
)
from .search import (
    EnumConstraints,
    CyclePairLifting,
    SmallBase,
    SwitchingConstruction,
    Unclassified,
    backtracking_enumerate,
    brute_force_enumerate,
    classify_reduced_lambda2,
    enumerate_ternary_census,
)


def _print_json(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_doc(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return load_json(text)


def _second_index(s: QuotientMatrix, params: GraphParams) -> int:
    indices = quotient_eigenvalue_indices(s, params)
    return max(indices)


def _construction_result(p: TwoPartition) -> dict[str, Any]:
    s = equitable_check(p)
    assert isinstance(s, QuotientMatrix)
    return {
        "partition": partition_to_doc(p),
        "quotient": [list(row) for row in s.rows],
        "eigenvalue_index": _second_index(s, p.params),
        "essential_coordinates": sorted(essential_coordinates(p)),
    }


def _form_doc(form: Any) -> dict[str, Any]:
    if isinstance(form, Constant):
        return {"kind": "constant", "value": form.value}
    if isinstance(form, QuasiString):
        return {
            "kind": "quasi_string",
            "plus": sorted(form.plus),
            "minus": sorted(form.minus),
            "coordinate": form.coordinate,
        }
    if isinstance(form, QuasiCross):
        return {
            "kind": "quasi_cross",
            "plus": sorted(form.plus),
            "minus": sorted(form.minus),
            "coordinate_i": form.coordinate_i,
            "coordinate_j": form.coordinate_j,
        }
    if isinstance(form, NotMember):
        return {"kind": "not_member"}
    if isinstance(form, AllZero):
        return {"kind": "all_zero"}
    assert isinstance(form, NotEigen)
    return {"kind": "not_eigen"}


def _cmd_verify(args: argparse.Namespace) -> int:
    p = partition_from_doc(_read_doc(args.input))
    params = p.params
    cert: dict[str, Any] = {
        "partition": partition_to_doc(p),
        "size": p.size,
    }
    s = equitable_check(p)
    if isinstance(s, NotEquitable):
        cert["equitable"] = False
        cert["witness"] = {
            "cell": s.cell,
            "vertices": list(s.vertices),
            "target_cell": s.target_cell,
            "counts": list(s.counts),
        }
        _print_json(cert)
        return 1
    lam = s.rows[0][0] - s.rows[1][0]
    if spectral_check(p, lam) is not None:
        raise AssertionError("equitability checks disagree")
    cert["equitable"] = True
    cert["quotient"] = [list(row) for row in s.rows]
    cert["eigenvalues"] = [params.degree, lam]
    cert["eigenvalue_index"] = _second_index(s, params)
    cert["spectral_check"] = True
    ess = sorted(essential_coordinates(p))
    cert["essential_coordinates"] = ess
    cert["reduced"] = len(ess) == params.n
    applicable = params.n >= 2 and lam == eigenvalue(params, 2)
    oa: dict[str, Any] = {"applicable": applicable}
    if applicable:
        mismatch = orthogonal_array_check(p, s)
        oa["balanced"] = mismatch is None
        if mismatch is not None:
            oa["mismatch"] = {
                "coordinate": mismatch.coordinate,
                "symbol": mismatch.symbol,
                "count": mismatch.count,
                "expected": str(mismatch.expected),
            }
    cert["orthogonal_array"] = oa
    cert["induced_cycle_lengths"] = {
        "cell": is_induced_cycle(params, p.vertices()),
        "complement": is_induced_cycle(params, p.complement().vertices()),
    }
    _print_json(cert)
    return 0


def _cmd_construct_a(args: argparse.Namespace) -> int:
    try:
        blocks = AlphabetBlocks(parse_blocks(args.blocks))
    except ValueError as exc:
        raise DocumentError(f"invalid --blocks: {exc}") from None
    base = partition_from_doc(_read_doc(args.base))
    try:
        switched = permutation_switching(blocks, base)
    except ValueError as exc:
        _print_json({"error": str(exc)})
        return 1
    result = _construction_result(switched)
    result["blocks"] = blocks_to_text(blocks.blocks)
    _print_json(result)
    return 0


def _cmd_construct_b(args: argparse.Namespace) -> int:
    q = args.q
    split_blocks = parse_blocks(args.split)
    if len(split_blocks) != 1:
        raise DocumentError("--split must be a single comma-separated symbol list")
    split = split_blocks[0]
    if q < 2 or q % 2:
        raise DocumentError("--q must be even and >= 2")
    if any(not 0 <= x < q for x in split) or len(split) != q // 2:
        raise DocumentError(f"--split must name q/2 = {q // 2} symbols from 0..{q - 1}")
    cycle_pair = None
    if args.cycle_pair is not None:
        cycle_pair = partition_from_doc(_read_doc(args.cycle_pair))
    try:
        lifted = lifted_cycle_pair(q, split, cycle_pair)
    except ValueError as exc:
        _print_json({"error": str(exc)})
        return 1
    result = _construction_result(lifted)
    result["split"] = sorted(split)
    _print_json(result)
    return 0


def _cmd_lift(args: argparse.Namespace) -> int:
    try:
        blocks = LiftBlocks(parse_blocks(args.blocks))
    except ValueError as exc:
        raise DocumentError(f"invalid --blocks: {exc}") from None
    p = partition_from_doc(_read_doc(args.input))
    try:
        lifted = lift_two_partition(p, blocks)
    except ValueError as exc:
        _print_json({"error": str(exc)})
        return 1
    result = _construction_result(lifted)
    result["blocks"] = blocks_to_text(blocks.blocks)
    _print_json(result)
    return 0


def _cmd_eight_cycle(args: argparse.Namespace) -> int:
    _print_json(_construction_result(eight_cycle_partition()))
    return 0


def _cmd_classify_fn(args: argparse.Namespace) -> int:
    f = function_from_doc(_read_doc(args.input))
    if not f.is_ternary():
        raise DocumentError("classification applies to ternary functions only")
    return_doc = {
        "member": in_top_two_eigenspaces(f),
        "top_two_form": _form_doc(classify_top_two(f)),
        "lambda1_form": _form_doc(classify_lambda1(f)),
    }
    _print_json(return_doc)
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    p = partition_from_doc(_read_doc(args.input))
    reduced, removed = reduce_partition(p)
    _print_json({
        "partition": partition_to_doc(reduced),
        "removed_coordinates": list(removed),
    })
    return 0


def _parse_quotient(text: str) -> QuotientMatrix:
    rows = []
    for part in text.split(";"):
        try:
            rows.append(tuple(int(x.strip()) for x in part.split(",")))
        except ValueError:
            raise DocumentError(
                f"invalid --quotient row {part!r}; expected comma-separated integers"
            ) from None
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise DocumentError('--quotient must look like "s11,s12;s21,s22"')
    try:
        return QuotientMatrix(tuple(rows))
    except ValueError as exc:
        raise DocumentError(f"invalid --quotient: {exc}") from None


def _cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        params = GraphParams(args.n, args.q)
        constraints = EnumConstraints(
            quotient=_parse_quotient(args.quotient) if args.quotient else None,
            eigenvalue_index=args.eig_index,
            reduced_only=args.reduced_only,
            up_to_iso=args.up_to_iso,
        )
        if constraints.quotient is None and constraints.eigenvalue_index is None:
            raise ValueError("give one of --eig-index and --quotient")
        if constraints.eigenvalue_index is not None:
            eigenvalue(params, constraints.eigenvalue_index)
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        if args.brute_force:
            found = brute_force_enumerate(params, constraints)
        else:
            found = backtracking_enumerate(params, constraints, threads=args.threads)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    by_quotient: dict[tuple[tuple[int, ...], ...], int] = {}
    for p in found:
        _print_json(partition_to_doc(p))
        s = equitable_check(p)
        assert isinstance(s, QuotientMatrix)
        by_quotient[s.rows] = by_quotient.get(s.rows, 0) + 1
    _print_json({
        "count": len(found),
        "quotients": [
            {"matrix": [list(r) for r in rows], "count": cnt}
            for rows, cnt in sorted(by_quotient.items())
        ],
    })
    return 0


def _tag_doc(tag: Any) -> dict[str, Any]:
    if isinstance(tag, SmallBase):
        return {"kind": "small_base", "secondary_switching": tag.secondary_switching}
    if isinstance(tag, CyclePairLifting):
        return {
            "kind": "cycle_pair_lifting",
            "split": sorted(tag.split),
            "cycle_pair": partition_to_doc(tag.cycle_pair),
        }
    if isinstance(tag, SwitchingConstruction):
        return {
            "kind": "switching_construction",
            "blocks": blocks_to_text(tag.blocks.blocks),
            "base": partition_to_doc(tag.base),
        }
    assert isinstance(tag, Unclassified)
    return {"kind": "unclassified"}


def _cmd_classify_t5(args: argparse.Namespace) -> int:
    p = partition_from_doc(_read_doc(args.input))
    try:
        tag = classify_reduced_lambda2(p, check_secondary=args.check_secondary)
    except ValueError as exc:
        _print_json({"error": str(exc)})
        return 1
    _print_json({"tag": _tag_doc(tag)})
    return 1 if isinstance(tag, Unclassified) else 0


def _cmd_sweep_ternary(args: argparse.Namespace) -> int:
    try:
        census = enumerate_ternary_census(GraphParams(args.n, args.q))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    _print_json({
        "constants": census.constants,
        "quasi_strings": census.quasi_strings,
        "quasi_crosses": census.quasi_crosses,
        "not_member": census.not_member,
        "members": census.members,
        "total": census.total,
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqpart",
        description="equitable 2-partitions and eigenfunctions of Hamming graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="certify a partition document")
    s.add_argument("input", help="partition document path, or - for stdin")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("construct-a", help="permutation switching of a balanced base")
    s.add_argument("--blocks", required=True, help='alphabet blocks, e.g. "0,1|2,3"')
    s.add_argument("--base", required=True, help="base partition document of H(2, q)")
    s.set_defaults(func=_cmd_construct_a)

    s = sub.add_parser("construct-b", help="alphabet-lifted induced-8-cycle pair")
    s.add_argument("--q", type=int, required=True, help="even target alphabet size")
    s.add_argument("--split", required=True, help='symbols lifting 0, e.g. "0,1"')
    s.add_argument("--cycle-pair", help="optional 8-cycle pair document for H(4, 2)")
    s.set_defaults(func=_cmd_construct_b)

    s = sub.add_parser("lift", help="blow up each symbol to an alphabet block")
    s.add_argument("--blocks", required=True, help='equal-size blocks, e.g. "0,1|2,3"')
    s.add_argument("--input", required=True, help="partition document to lift")
    s.set_defaults(func=_cmd_lift)

    s = sub.add_parser("eight-cycle", help="the induced-8-cycle pair of H(4, 2)")
    s.set_defaults(func=_cmd_eight_cycle)

    s = sub.add_parser("classify-fn", help="classify a ternary function document")
    s.add_argument("input", help="function document path, or - for stdin")
    s.set_defaults(func=_cmd_classify_fn)

    s = sub.add_parser("reduce", help="delete nonessential coordinates")
    s.add_argument("input", help="partition document path, or - for stdin")
    s.set_defaults(func=_cmd_reduce)

    s = sub.add_parser("enumerate", help="enumerate equitable 2-partitions")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--eig-index", type=int, help="second quotient eigenvalue index")
    g.add_argument("--quotient", help='explicit quotient matrix "s11,s12;s21,s22"')
    s.add_argument("--reduced-only", action="store_true")
    s.add_argument("--up-to-iso", action="store_true")
    r = s.add_mutually_exclusive_group()
    r.add_argument("--brute-force", action="store_true", help="sweep all cells")
    r.add_argument("--backtrack", action="store_true", help="pruned search (default)")
    s.add_argument("--threads", type=int, default=1, help="worker processes for --backtrack")
    s.set_defaults(func=_cmd_enumerate)

    s = sub.add_parser("classify-t5", help="tag a reduced second-eigenvalue partition")
    s.add_argument("input", help="partition document path, or - for stdin")
    s.add_argument("--check-secondary", action="store_true",
                   help="also test small bases against the switching construction")
    s.set_defaults(func=_cmd_classify_t5)

    s = sub.add_parser("sweep-ternary", help="classify every ternary function")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=_cmd_sweep_ternary)

    return parser


def run_command(argv: list[str], stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:
            code = exc.code
            return code if isinstance(code, int) else 2
        try:
            return args.func(args)
        except DocumentError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
