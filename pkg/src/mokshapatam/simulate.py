"""Seeded Monte-Carlo play, used as an independent check on the chain
computations, and uniform sampling of random boards."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .board import FINISH, N_CELLS, START, USABLE_CELLS, Board, landing_table, normalize
from .classify import closed_classes
from .rng import Xoshiro256

CHUNK = 1 << 16
CDF_POINTS = (10, 17, 20, 25, 30, 40, 50, 75, 100, 150, 200, 300, 500, 1000)


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    games: int = 10_000
    max_moves: int = 10_000
    shortcircuit: bool = True

    def __post_init__(self):
        if self.games < 1:
            raise ValueError("games must be positive")
        if self.max_moves < 1:
            raise ValueError("max_moves must be positive")


@dataclass(frozen=True)
class Outcome:
    kind: str  # "Won", "Cutoff" or "TrappedInClosedSet"
    value: int  # moves for Won/Cutoff, closed-class index when trapped

    def __str__(self) -> str:
        return f"{self.kind}({self.value})"


@dataclass(frozen=True)
class GameTrace:
    resting_cells: tuple[int, ...]
    faces: tuple[int, ...]
    outcome: Outcome

    @property
    def moves(self) -> int:
        return len(self.faces)


def trap_mask(board: Board) -> np.ndarray:
    """``mask[c]`` is 1 when cell ``c`` lies in a closed class other than ``{100}``."""
    mask = np.zeros(N_CELLS + 1, dtype=np.uint8)
    for c in closed_classes(board):
        if FINISH not in c:
            mask[sorted(c)] = 1
    return mask


def play_game(
    board: Board,
    rng: Xoshiro256,
    max_moves: int = 10_000,
    shortcircuit: bool = True,
) -> GameTrace:
    board = normalize(board)
    land = landing_table(board)
    classes = [c for c in closed_classes(board) if FINISH not in c] if shortcircuit else []
    class_of = {cell: k for k, c in enumerate(classes) for cell in c}
    pos = START
    cells = [pos]
    faces = []
    while True:
        if pos == FINISH:
            outcome = Outcome("Won", len(faces))
            break
        if pos in class_of:
            outcome = Outcome("TrappedInClosedSet", class_of[pos])
            break
        if len(faces) >= max_moves:
            outcome = Outcome("Cutoff", len(faces))
            break
        d = rng.die()
        faces.append(d)
        if pos + d <= N_CELLS:
            pos = land[pos + d]
        cells.append(pos)
    return GameTrace(tuple(cells), tuple(faces), outcome)


@dataclass
class SimulationResult:
    board: Board
    config: SimConfig
    wins: int
    histogram: dict[str, int]
    won_lengths: np.ndarray = field(repr=False)
    backend: str = kernels.BACKEND

    @property
    def estimate(self) -> float:
        return self.wins / self.config.games

    @property
    def standard_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.config.games)

    def length_cdf(self, n: int) -> float:
        """Fraction of all games won within ``n`` moves."""
        return int(np.count_nonzero(self.won_lengths <= n)) / self.config.games

    def verdict(self) -> str:
        """Monte-Carlo reading of winnability: no wins, some wins, or all wins."""
        from .classify import Verdict

        if self.wins == 0:
            return Verdict.UNWINNABLE
        if self.wins == self.config.games:
            return Verdict.ULTIMATELY_WINNABLE
        return Verdict.OCCASIONALLY_WINNABLE

    def to_dict(self) -> dict:
        return {
            "board": self.board.name,
            "seed": self.config.seed,
            "games": self.config.games,
            "max_moves": self.config.max_moves,
            "shortcircuit": self.config.shortcircuit,
            "estimate": self.estimate,
            "standard_error": self.standard_error,
            "outcomes": self.histogram,
            "length_cdf": {str(n): self.length_cdf(n) for n in CDF_POINTS},
        }


def _run_chunk(args):
    land, mask, seed, first, n, max_moves, pure = args
    fn = kernels.python_simulate_batch if pure else kernels.simulate_batch
    outcome, moves, _ = fn(land, mask, seed, first, n, max_moves)
    won = outcome == kernels.WON
    counts = np.bincount(outcome, minlength=3)
    return counts, moves[won]


def simulate(
    board: Board,
    config: SimConfig,
    workers: int = 1,
    pure_python: bool = False,
) -> SimulationResult:
    """Play ``config.games`` games; game ``k`` uses random stream ``k`` of ``config.seed``.

    Results do not depend on ``workers``.
    """
    board = normalize(board)
    land = np.asarray(landing_table(board), dtype=np.int64)
    mask = trap_mask(board) if config.shortcircuit else np.zeros(N_CELLS + 1, dtype=np.uint8)
    seed = config.seed & ((1 << 64) - 1)
    jobs = [
        (land, mask, seed, first, min(CHUNK, config.games - first), config.max_moves, pure_python)
        for first in range(0, config.games, CHUNK)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    counts = sum(p[0] for p in parts)
    lengths = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    hist = {
        "Won": int(counts[kernels.WON]),
        "Cutoff": int(counts[kernels.CUTOFF]),
        "TrappedInClosedSet": int(counts[kernels.TRAPPED]),
    }
    return SimulationResult(
        board, config, hist["Won"], hist, np.sort(lengths),
        backend="python" if pure_python else kernels.BACKEND,
    )


def estimate_win_probability(board: Board, config: SimConfig, workers: int = 1) -> tuple[float, float]:
    r = simulate(board, config, workers)
    return r.estimate, r.standard_error


def random_board(n: int, shared_exits: bool = False, rng: Optional[Xoshiro256] = None) -> Board:
    """Sample a board with ``n`` components.

    Without shared exits every one of the ``count_boards(n)`` boards is
    equally likely: an ordered sample of ``2n`` distinct cells is drawn and
    paired off as (entrance, exit).  With shared exits, entrances are drawn
    the same way and each exit is uniform over the non-entrance cells; that
    family is not sampled uniformly.
    """
    rng = rng or Xoshiro256(0)
    cells = list(USABLE_CELLS)
    if n < 0:
        raise Infeasible("n must be non-negative")
    if not shared_exits:
        if 2 * n > len(cells):
            raise Infeasible(f"{n} components need {2 * n} distinct cells; only {len(cells)} available")
        pick = rng.shuffle_prefix(cells, 2 * n)
        return Board.from_pairs(zip(pick[:n], pick[n:]))
    if n > len(cells) - 1:
        raise Infeasible(f"{n} entrances leave no cell for an exit")
    entrances = rng.shuffle_prefix(cells, n)
    ent = set(entrances)
    free = [c for c in cells if c not in ent]
    return Board.from_pairs((e, free[rng.below(len(free))]) for e in entrances)
