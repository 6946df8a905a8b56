"""Command line interface.

Exit status: 0 on an answer, 1 on a negative answer (incompatible input for
``solve``, any non-unique verdict for ``unique``), 2 on input errors, 3 when
``--oracle`` disagrees with the solver.
"""
from __future__ import annotations

import argparse
import sys
import time

from pmc_phylo import oracle
from pmc_phylo.characters import CharacterError, CharacterSet, build_pig, indicator_weight, induced_fill_weight
from pmc_phylo.dp import global_result, minimum_fill_dp, solve_min_fill
from pmc_phylo.formats import (
    FormatError,
    emit_dot,
    emit_matrix,
    emit_newick,
    parse_matrix,
    parse_weights,
)
from pmc_phylo.generate import generate_matrix
from pmc_phylo.graph import from_mask
from pmc_phylo.pmc import pmc_bound, pmc_bound_holds, pmc_masks
from pmc_phylo.separators import separator_masks
from pmc_phylo.solvers import Verdict, solve_max_compat_two_state, solve_perfect_phylogeny, solve_unique_pp


class OracleMismatch(RuntimeError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args) -> CharacterSet:
    matrix = parse_matrix(_read(args.matrix))
    weights = None
    if getattr(args, "weights", None):
        weights = parse_weights(_read(args.weights), matrix.names)
    return matrix.to_character_set(weights)


def _oracle_check(ok: bool, what: str) -> None:
    if not ok:
        raise OracleMismatch(f"oracle disagrees: {what}")


def cmd_solve(args, out) -> int:
    cs = _load(args)
    tree = solve_perfect_phylogeny(cs)
    if args.oracle:
        _oracle_check(oracle.brute_compatible(cs) == (tree is not None), "compatibility")
    if tree is None:
        print("INCOMPATIBLE", file=out)
        return 1
    print(emit_newick(tree), file=out)
    return 0


def cmd_maxcompat(args, out) -> int:
    cs = _load(args)
    res = solve_max_compat_two_state(cs)
    if args.oracle:
        best, _ = oracle.brute_max_compat(cs.with_weights(cs.weights or [1] * len(cs)))
        _oracle_check(best == res.weight, f"optimal weight {best} vs {res.weight}")
    print("characters: " + " ".join(cs.names[i] for i in res.characters), file=out)
    print(f"weight: {res.weight}", file=out)
    print(emit_newick(res.tree), file=out)
    return 0


def cmd_unique(args, out) -> int:
    cs = _load(args)
    res = solve_unique_pp(cs)
    if args.oracle:
        if res.unique_triangulation is not None:
            count = len(oracle.proper_minimal_triangulations(cs))
            _oracle_check((count == 1) == res.unique_triangulation, f"{count} proper minimal triangulations")
        if len(cs.taxa) <= oracle.OracleCaps.from_env().max_taxa:
            trees = len(oracle.brute_perfect_phylogenies(cs))
            _oracle_check((trees == 1) == (res.verdict is Verdict.UNIQUE), f"{trees} perfect phylogenies")
    print(res.verdict.value, file=out)
    if res.verdict is Verdict.UNIQUE:
        print(emit_newick(res.tree), file=out)
        return 0
    return 1


def cmd_stats(args, out) -> int:
    cs = _load(args)
    start = time.perf_counter()
    cg = build_pig(cs)
    g = cg.graph
    seps = [from_mask(s) for s in separator_masks(g.nbr, g.full_mask)]
    pmcs = [from_mask(k) for k in pmc_masks(g.nbr, g.full_mask)]
    holds = pmc_bound_holds(g, seps, pmcs)
    ic = indicator_weight(cg)
    table = minimum_fill_dp(g, ic, seps, pmcs)
    mfi_ic = global_result(g, ic, table).value
    rows = [
        ("taxa", len(cs.taxa)),
        ("characters", len(cs)),
        ("vertices", g.n),
        ("edges", g.m),
        ("separators", len(seps)),
        ("pmcs", len(pmcs)),
        ("pmc_bound", pmc_bound(g.n, len(seps))),
        ("pmc_bound_holds", "yes" if holds else "NO"),
        ("mfi_indicator", mfi_ic),
    ]
    if cs.weights is not None:
        fw = induced_fill_weight(cs, cg)
        rows.append(("mfi_weighted", global_result(g, fw, minimum_fill_dp(g, fw, seps, pmcs)).value))
    rows.append(("seconds", f"{time.perf_counter() - start:.3f}"))
    if args.oracle:
        rows.append(("oracle_separators", len(oracle.brute_minimal_separators(g))))
        rows.append(("oracle_pmcs", len(oracle.brute_pmcs(g))))
        rows.append(("oracle_mfi_indicator", oracle.brute_mfi(g, ic)))
    for key, value in rows:
        print(f"{key}: {value}", file=out)
    return 0 if holds else 3


def cmd_gen(args, out) -> int:
    matrix = generate_matrix(args.taxa, args.chars, args.states, args.missing, args.seed, args.model)
    text = emit_matrix(matrix)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_pig(args, out) -> int:
    cs = _load(args)
    cg = build_pig(cs)
    fa = None
    if args.fill:
        fa = solve_min_fill(cg.graph, indicator_weight(cg)).witness
    out.write(emit_dot(cg, fa, cs.names))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmc-phylo",
        description="Exact perfect phylogeny solvers via potential maximal cliques.",
    )
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check against brute force (small inputs only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="perfect phylogeny: Newick tree or INCOMPATIBLE")
    p.add_argument("matrix", help="CSV character matrix ('-' for stdin)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("maxcompat", help="two-state (weighted) maximum compatibility")
    p.add_argument("matrix")
    p.add_argument("--weights", metavar="FILE", help="lines of 'character-name value'")
    p.set_defaults(func=cmd_maxcompat)

    p = sub.add_parser("unique", help="unique perfect phylogeny verdict")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_unique)

    p = sub.add_parser("stats", help="graph, separator and PMC statistics")
    p.add_argument("matrix")
    p.add_argument("--weights", metavar="FILE")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="reproducible random character matrix")
    p.add_argument("--taxa", type=int, required=True)
    p.add_argument("--chars", type=int, required=True)
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--missing", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=("uniform", "tree"), default="uniform")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pig", help="emit the partition intersection graph")
    p.add_argument("matrix")
    p.add_argument("--dot", action="store_true", required=True, help="DOT output (the only format)")
    p.add_argument("--fill", action="store_true", help="add a minimum-fill witness as dashed edges")
    p.set_defaults(func=cmd_pig)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (FormatError, CharacterError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
