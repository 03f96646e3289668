"""Command-line interface: ``hstar <command> FILE [options]``.

Exit codes: 0 when every check passes, 1 on a verification failure or a
numerical breakdown, 2 on usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Sequence

import numpy as np

from . import __version__, core, hyperstar, partition, reduction, spectral
from .errors import HstarError, NoConvergence, ParseError
from .report import Check, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = 1e-8
ORACLE_TOL = 1e-12
MATRICES = ("adjacency", "laplacian", "normalized", "transition")


class UsageError(HstarError):
    pass


def default_tol() -> float:
    raw = os.environ.get("HSTAR_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"HSTAR_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise UsageError(f"HSTAR_TOL must be positive, got {raw!r}")
    return tol


def _positive_float(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return val


def _id_list(text: str) -> tuple[int, ...]:
    try:
        ids = tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None
    if not ids:
        raise argparse.ArgumentTypeError("empty vertex list")
    return ids


def parse_plan(text: str) -> tuple[str, tuple[int, ...], int]:
    """``MODE:V1,V2[@STAR]`` to (mode, removed leaves, 1-based star index)."""
    mode, sep, rest = text.partition(":")
    if not sep or mode not in (reduction.Q, reduction.Q_STAR):
        raise UsageError(f"plan must look like q:3 or q_star:2,3@1, got {text!r}")
    leaves, at, star = rest.partition("@")
    try:
        removed = _id_list(leaves)
        idx = int(star) if at else 1
    except (argparse.ArgumentTypeError, ValueError) as exc:
        raise UsageError(f"bad plan {text!r}: {exc}") from None
    return mode, removed, idx


# --- shared helpers ---------------------------------------------------------

def _load(path: str) -> core.WeightedHypergraph:
    try:
        return core.load_hypergraph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _stars(h: core.WeightedHypergraph, stars_path: str | None, tol: float) -> list[hyperstar.HyperstarWitness]:
    if stars_path is None:
        return hyperstar.detect_hyperstars(h, tol)
    try:
        with open(stars_path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {stars_path}: {exc.strerror}") from None
    return hyperstar.parse_witnesses(text, h)


def _pick_star(stars, idx: int) -> hyperstar.HyperstarWitness:
    if not stars:
        raise UsageError("no hyperstar available; pass --stars or use a hypergraph that contains one")
    if not 1 <= idx <= len(stars):
        raise UsageError(f"star index {idx} outside 1..{len(stars)}")
    return stars[idx - 1]


def _fmt_value(v: float) -> str:
    return f"{v:#.12g}"


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _finish(args, report: VerificationReport) -> int:
    _emit(args, report.to_text(), report.to_dict())
    return EXIT_OK if report.ok else EXIT_FAIL


def _eig_tol(args) -> float:
    # eigenvalue clustering never gets looser than the residual tolerance
    return min(spectral.EIG_TOL, args.tol)


# --- commands ---------------------------------------------------------------

def cmd_info(args) -> int:
    h = _load(args.file)
    rank, anti = core.rank_antirank(h)
    comps = core.connected_components(h)
    deg = core.degrees(h)
    uniform = core.is_uniform(h)
    head = f"N={h.n_vertices} M={h.n_edges}"
    head += f" uniform p={rank}" if uniform else " non-uniform"
    head += " connected" if len(comps) == 1 else f" components={len(comps)}"
    lines = [
        head,
        f"rank={rank} antirank={anti}",
        "components: " + " | ".join(" ".join(map(str, c)) for c in comps),
        "vertex degrees: " + " ".join(f"{x:.12g}" for x in deg.vertex),
        "adjacency degrees: " + " ".join(f"{x:.12g}" for x in deg.adjacency),
    ]
    payload = {
        "n_vertices": h.n_vertices,
        "n_edges": h.n_edges,
        "rank": rank,
        "antirank": anti,
        "uniform": uniform,
        "components": comps,
        "vertex_degrees": deg.vertex.tolist(),
        "adjacency_degrees": deg.adjacency.tolist(),
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    h = _load(args.file)
    spec = hyperstar.matrix_spectrum(h, args.matrix)
    gap = args.tol * max(1.0, spec.radius)
    rows = []
    for c in spectral.eigenvalue_clusters(spec, args.tol):
        value = 0.0 if abs(c.value) <= gap else c.value
        rows.append((value, c.multiplicity))
    text = "\n".join(f"{_fmt_value(v)} ×{mult}" for v, mult in rows)
    payload = {"matrix": args.matrix, "tolerance": args.tol,
               "clusters": [{"value": v, "multiplicity": mult} for v, mult in rows]}
    _emit(args, text, payload)
    return EXIT_OK


def cmd_detect(args) -> int:
    h = _load(args.file)
    stars = hyperstar.detect_hyperstars(h, _eig_tol(args))
    lines, payload = [], []
    for w in stars:
        s = hyperstar.star_summary(h, w, _eig_tol(args))
        lines.append(hyperstar.format_witness(w))
        lines.append(f"  degree={s.degree} weight={s.weight:.12g}")
        payload.append({"kind": w.label, "v1": list(w.v1), "v2": list(w.v2), "edges": list(w.star_edges),
                        "degree": s.degree, "weight": s.weight})
    if not stars:
        lines.append("no hyperstar found")
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def _oracle_check(h: core.WeightedHypergraph) -> Check:
    diff = np.abs(core.adjacency_matrix(h) - core.adjacency_by_edges(h)).max(initial=0.0)
    return Check.bound("adjacency product formula matches edge iteration", "adjacency definition", diff, ORACLE_TOL)


def _reduction_checks(pair: reduction.ReducedPair, tol: float) -> list[Check]:
    return [
        *reduction.verify_adjacency_reduction(pair, tol),
        *reduction.verify_laplacian_reduction(pair, tol),
        *partition.sign_correspondence(pair, tol),
        partition.fiedler_correspondence(pair, tol),
    ]


def cmd_verify(args) -> int:
    h = _load(args.file)
    tol, eig_tol = args.tol, _eig_tol(args)
    plan_spec = parse_plan(args.reduce_plan) if args.reduce_plan else None
    report = VerificationReport(tol)
    report.add(_oracle_check(h))
    if np.all(core.degrees(h).adjacency > 0):
        report.extend(spectral.verify_s_relations(h, tol))
    else:
        report.add(Check.skip("S.1-S.4", "transition / normalized-Laplacian equivalences",
                              "some vertex has zero adjacency degree"))

    stars = _stars(h, args.stars, eig_tol)
    valid = []
    for w in stars:
        res = hyperstar.validate_witness(h, w, eig_tol)
        name = f"star {w.label} leaves [{' '.join(map(str, w.v1))}] is valid"
        detail = "" if res else f"{res.bullet}: {res.detail}"
        report.add(Check.truth(name, "hyperstar definition", res.ok, note=detail))
        if res:
            valid.append(w)
            report.extend(hyperstar.star_kernel_checks(h, w, tol))
    if not stars:
        report.add(Check.skip("hyperstar claims", hyperstar.LEMMA_ADJ, "no hyperstar found"))
    report.extend(hyperstar.check_claims(h, hyperstar.claims_from_stars(h, valid, eig_tol), tol))

    if plan_spec:
        mode, removed, idx = plan_spec
        wit = _pick_star(stars, idx)
        try:
            pair = reduction.reduce(h, reduction.ReductionPlan(wit, removed, mode), eig_tol)
        except reduction.InvalidPlan as exc:
            report.add(Check.truth("reduction plan applies", reduction.THM_ADJ[mode], False, note=str(exc)))
        else:
            report.extend(_reduction_checks(pair, tol))
    return _finish(args, report)


def _plan_from_args(args, h, eig_tol) -> reduction.ReductionPlan:
    stars = _stars(h, args.stars, eig_tol)
    wit = _pick_star(stars, args.star)
    return reduction.ReductionPlan(wit, args.remove, args.mode)


def cmd_reduce(args) -> int:
    h = _load(args.file)
    tol, eig_tol = args.tol, _eig_tol(args)
    pair = reduction.reduce(h, _plan_from_args(args, h, eig_tol), eig_tol)
    text = reduction.format_reduced(pair)
    report = VerificationReport(tol)
    report.extend(reduction.verify_adjacency_reduction(pair, tol))
    report.extend(reduction.verify_laplacian_reduction(pair, tol))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return _finish(args, report)
    sys.stdout.write(text)
    print(report.to_json() if args.format == "json" else report.to_text(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_partition(args) -> int:
    h = _load(args.file)
    part = partition.fiedler_partition(h, _eig_tol(args))
    text = f"fiedler value {part.fiedler_value:.12g}{' (repeated)' if part.degenerate else ''}\n" + part.format()
    payload = {"fiedler_value": part.fiedler_value, "degenerate": part.degenerate,
               "positive": list(part.positive_side), "negative": list(part.negative_side)}
    _emit(args, text, payload)
    return EXIT_OK


def cmd_compare(args) -> int:
    h = _load(args.original)
    given = _load(args.reduced)
    tol, eig_tol = args.tol, _eig_tol(args)
    mode, removed, idx = parse_plan(args.plan)
    wit = _pick_star(_stars(h, args.stars, eig_tol), idx)
    pair = reduction.reduce(h, reduction.ReductionPlan(wit, removed, mode), eig_tol)
    report = VerificationReport(tol)
    expected = pair.reduced
    same_shape = expected.n_vertices == given.n_vertices and expected.n_edges == given.n_edges
    worst = 0.0
    if same_shape:
        for (vs_a, w_a), (vs_b, w_b) in zip(expected.edges, given.edges):
            worst = max(worst, float("inf") if vs_a != vs_b else abs(w_a - w_b))
    report.add(Check.truth("reduced file matches the planned reduction", reduction.THM_ADJ[mode],
                           same_shape and worst <= tol * max(1.0, max((e.weight for e in h.edges), default=1.0)),
                           note="" if same_shape else
                           f"expected N={expected.n_vertices} M={expected.n_edges}, "
                           f"got N={given.n_vertices} M={given.n_edges}",
                           residual=worst if same_shape else None))
    report.extend(partition.sign_correspondence(pair, tol, eig_tol))
    report.add(partition.fiedler_correspondence(pair, tol, eig_tol))
    return _finish(args, report)


# --- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=_positive_float, default=None,
                        help=f"tolerance (default {DEFAULT_TOL:g}, or $HSTAR_TOL)")

    parser = argparse.ArgumentParser(prog="hstar", description="Spectral analysis of weighted hypergraphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="size, uniformity, components and degrees")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("spectrum", parents=[common], help="clustered eigenvalues of one matrix")
    p.add_argument("file")
    p.add_argument("--matrix", choices=MATRICES, default="laplacian")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("detect", parents=[common], help="find hyperstars")
    p.add_argument("file")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("verify", parents=[common], help="check every applicable theorem")
    p.add_argument("file")
    p.add_argument("--stars", metavar="FILE", help="declared star witnesses instead of detection")
    p.add_argument("--reduce-plan", metavar="MODE:V[,V..][@STAR]", help="also verify this reduction")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="q- or q*-reduce around a star")
    p.add_argument("file")
    p.add_argument("--mode", choices=(reduction.Q, reduction.Q_STAR), default=reduction.Q)
    p.add_argument("--star", type=int, default=1, help="1-based star index (default 1)")
    p.add_argument("--stars", metavar="FILE", help="declared star witnesses instead of detection")
    p.add_argument("--remove", type=_id_list, required=True, help="comma-separated leaves to remove")
    p.add_argument("-o", "--output", help="write the reduced hypergraph here instead of stdout")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("partition", parents=[common], help="Fiedler bipartition")
    p.add_argument("file")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("compare", parents=[common], help="sign correspondence between a hypergraph and its reduction")
    p.add_argument("original")
    p.add_argument("reduced")
    p.add_argument("--plan", required=True, metavar="MODE:V[,V..][@STAR]")
    p.add_argument("--stars", metavar="FILE", help="declared star witnesses instead of detection")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.tol is None:
            args.tol = default_tol()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return code
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HstarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
