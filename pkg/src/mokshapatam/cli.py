"""Command-line interface: ``mokshapatam <subcommand> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import enumeration
from .board import BoardError, format_name, normalize, parse_board, read_board_file
from .census import census
from .classify import NotUltimatelyWinnable, classify_board, expected_game_length, game_length_distribution
from .markov import build_matrix, dump_matrix, permute_matrix, render_heatmap
from .rng import Xoshiro256
from .simulate import CDF_POINTS, Infeasible, SimConfig, random_board, simulate
from .structural import flowchart_classify


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _board(args):
    if args.board_file is not None:
        board = read_board_file(args.board_file)
    else:
        board = parse_board(args.board or "")
    return board


def _order(args, board):
    if not getattr(args, "rearranged", False):
        return None
    cert = classify_board(board).certificate
    if cert is None:
        raise BoardError("board is ultimately winnable; no rearranged block form exists")
    return cert.permutation


def cmd_validate(args):
    raw = _board(args)
    board = normalize(raw)
    payload = {
        "valid": True,
        "name": format_name(raw),
        "normalized": format_name(board),
        "components": len(board),
        "shared_exits": board.has_shared_exits,
    }
    text = f"valid: {payload['name']}"
    if board != raw:
        text += f"\nnormalized: {payload['normalized']}"
    _emit(args, payload, text)


def cmd_name(args):
    board = _board(args)
    name = format_name(normalize(board) if args.normalize else board)
    _emit(args, {"name": name}, name)


def cmd_classify(args):
    c = classify_board(_board(args))
    lines = [c.verdict.value, f"win_probability: {c.win_probability!r}"]
    lines += [f"closed_class: {sorted(cl)}" for cl in c.closed_classes]
    _emit(args, c.to_dict(), "\n".join(lines))


def cmd_structural(args):
    r = flowchart_classify(_board(args))
    d = r.to_dict()
    lines = [f"flowchart: {d['flowchart_verdict']} (step {d['decided_at']})", f"ground truth: {d['ground_truth']}"]
    for t in d["trap_regions"]:
        b = t["barrier"]
        kind = "merged barrier" if b["merged"] else "barrier"
        lines.append(
            f"{kind} {b['first_entrance']}..{b['first_entrance'] + b['length'] - 1}: region "
            f"{t['cells'][0]}..{t['cells'][1]} m-sequence {t['m_sequence']} escape {t['escape_ladders']}"
        )
    lines.append(f"ladder passes: {d['ladder_passes']}")
    lines.append(f"ladder bridges: {d['ladder_bridges']}")
    lines.append(f"agrees with ground truth: {d['agrees_with_ground_truth']}")
    _emit(args, d, "\n".join(lines))


def cmd_matrix(args):
    board = normalize(_board(args))
    text = dump_matrix(build_matrix(board), _order(args, board))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_heatmap(args):
    board = normalize(_board(args))
    m = build_matrix(board)
    order = _order(args, board)
    arr = permute_matrix(m, order) if order else m.p
    render_heatmap(arr, args.output)
    _emit(args, {"output": str(args.output), "rearranged": bool(order)}, f"wrote {args.output}")


def cmd_stats(args):
    board = normalize(_board(args))
    c = classify_board(board)
    try:
        mean = expected_game_length(board)
    except NotUltimatelyWinnable:
        mean = None
    points = sorted(set(args.n or CDF_POINTS))
    cdf = game_length_distribution(board, max(points))
    payload = {
        "verdict": c.verdict.value,
        "win_probability": c.win_probability,
        "expected_length": mean,
        "length_cdf": {str(n): float(cdf[n - 1]) for n in points},
    }
    lines = [
        f"verdict: {payload['verdict']}",
        f"win_probability: {payload['win_probability']!r}",
        f"expected_length: {'infinite' if mean is None else repr(mean)}",
    ] + [f"P(won within {n}): {v!r}" for n, v in payload["length_cdf"].items()]
    _emit(args, payload, "\n".join(lines))


def cmd_count(args):
    rows = []
    for n in range(enumeration.MAX_STRICT_N + 1):
        bc = enumeration.count_boards(n)
        rows.append({"quantity": f"count_boards({n})", "exact": str(bc.value), "approx": bc.decimal_approx})
    t = enumeration.total_boards()
    rows.append({"quantity": "total_boards", "exact": str(t.value), "approx": t.decimal_approx})
    _emit(args, rows, "\n".join(f"{r['quantity']:<20} {r['approx']:<18} {r['exact']}" for r in rows))


def cmd_bounds(args):
    rows = enumeration.summary()
    _emit(args, rows, "\n".join(f"{r['quantity']:<34} {r['approx']:<18} {r['exact']}" for r in rows))


def cmd_random(args):
    board = random_board(args.n, args.shared_exits, Xoshiro256(args.seed))
    payload = {"board": board.to_string(), "name": board.name}
    _emit(args, payload, f"{payload['board']}\n{payload['name']}")


def cmd_simulate(args):
    cfg = SimConfig(seed=args.seed, games=args.games, max_moves=args.max_moves, shortcircuit=not args.no_shortcircuit)
    r = simulate(_board(args), cfg, workers=args.workers)
    d = r.to_dict()
    lines = [
        f"estimate: {d['estimate']!r}",
        f"standard_error: {d['standard_error']!r}",
        "outcomes: " + ", ".join(f"{k}={v}" for k, v in d["outcomes"].items()),
    ] + [f"P(won within {n}): {v!r}" for n, v in d["length_cdf"].items()]
    _emit(args, d, "\n".join(lines))


def cmd_census(args):
    rep = census(range(args.n_min, args.n_max + 1), args.samples, args.seed, args.workers)
    lines = []
    for st in rep["strata"] + [dict(rep["aggregate"], n="all")]:
        props = " ".join(f"{k}={v:.6f}" for k, v in st["proportions"].items())
        lines.append(
            f"N={st['n']}: {props} barrier={st['barrier_proportion']:.6f} "
            f"flowchart_agreement={st['flowchart_agreement']:.6f}"
        )
    _emit(args, rep, "\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mokshapatam", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, board=True):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        if board:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--board", help="components as 'e1>x1,e2>x2,...' (empty for the 0 Board)")
            g.add_argument("--board-file", type=Path, help="file with one 'entrance exit' pair per line")
        return sp

    add("validate", cmd_validate, "check a board and show its normalized form")
    add("name", cmd_name, "print the N(X) name").add_argument("--normalize", action="store_true")
    add("classify", cmd_classify, "winnability verdict")
    add("structural", cmd_structural, "barriers, trap regions and the structural verdict")
    sp = add("matrix", cmd_matrix, "dump the transition matrix in sixths")
    sp.add_argument("--rearranged", action="store_true", help="order states by the block certificate")
    sp.add_argument("--output", type=Path)
    sp = add("heatmap", cmd_heatmap, "write the transition matrix as a PGM image")
    sp.add_argument("--rearranged", action="store_true")
    sp.add_argument("--output", type=Path, required=True)
    add("stats", cmd_stats, "win probability and game-length statistics").add_argument(
        "--n", type=int, action="append", help="move counts for the length CDF (repeatable)"
    )
    add("count", cmd_count, "exact number of boards per component count", board=False)
    add("bounds", cmd_bounds, "counting bounds and winnable fractions", board=False)
    sp = add("random", cmd_random, "sample a random board", board=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--shared-exits", action="store_true")
    sp = add("simulate", cmd_simulate, "Monte-Carlo play")
    sp.add_argument("--games", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-moves", type=int, default=10_000)
    sp.add_argument("--no-shortcircuit", action="store_true", help="play on inside closed sets")
    sp.add_argument("--workers", type=int, default=1)
    sp = add("census", cmd_census, "winnability proportions over random boards", board=False)
    sp.add_argument("--n-min", type=int, default=0)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("games", "samples", "max_moves", "workers"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be at least 1")
    try:
        args.func(args)
    except (BoardError, Infeasible) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
