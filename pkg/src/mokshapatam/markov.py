"""One-step transition matrix of a board, state reordering, and matrix output
(binary PGM heatmaps and an ASCII dump in sixths)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .board import FINISH, N_CELLS, Board, landing_table, normalize

DIE_FACES = 6


class InvalidPermutation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic matrix over cells 1..100, stored as integer sixths.

    ``sixths[i - 1, j - 1]`` is six times the probability of moving from
    cell ``i`` to cell ``j`` in one move.
    """

    sixths: np.ndarray
    board: Board = field(repr=False)

    @property
    def p(self) -> np.ndarray:
        return self.sixths / DIE_FACES

    def prob(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.sixths[i - 1, j - 1]), DIE_FACES)

    def row(self, i: int) -> dict[int, Fraction]:
        """Nonzero entries of row ``i`` keyed by destination cell."""
        (cols,) = np.nonzero(self.sixths[i - 1])
        return {int(j) + 1: Fraction(int(self.sixths[i - 1, j]), DIE_FACES) for j in cols}

    def successors(self, i: int) -> list[int]:
        return [int(j) + 1 for j in np.nonzero(self.sixths[i - 1])[0]]

    def adjacency(self) -> np.ndarray:
        return self.sixths > 0


def build_matrix(board: Board, entrance_rows: str = "jump") -> TransitionMatrix:
    """Build the one-step matrix.

    Non-entrance cells move by a fair die; a roll past 100 leaves the piece
    where it is, and landing on an entrance resolves to its exit.  Entrance
    cells are never rested on; with ``entrance_rows="jump"`` their row is a
    certain jump to the exit, with ``"roll"`` they are given die-roll rows
    like any other cell (used to check that nothing depends on the choice).
    """
    if entrance_rows not in ("jump", "roll"):
        raise ValueError(f"entrance_rows must be 'jump' or 'roll', not {entrance_rows!r}")
    board = normalize(board)
    land = landing_table(board)
    jumps = board.jumps()
    m = np.zeros((N_CELLS, N_CELLS), dtype=np.int64)
    for i in range(1, N_CELLS + 1):
        if i == FINISH:
            m[i - 1, i - 1] = DIE_FACES
        elif i in jumps and entrance_rows == "jump":
            m[i - 1, jumps[i] - 1] = DIE_FACES
        else:
            for d in range(1, DIE_FACES + 1):
                t = i + d
                dest = i if t > N_CELLS else land[t]
                m[i - 1, dest - 1] += 1
    m.setflags(write=False)
    return TransitionMatrix(m, board)


def check_permutation(perm: Sequence[int]) -> list[int]:
    order = [int(c) for c in perm]
    if sorted(order) != list(range(1, N_CELLS + 1)):
        raise InvalidPermutation("permutation must list each cell 1..100 exactly once")
    return order


def permute_matrix(m: TransitionMatrix | np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Reorder rows and columns together: ``out[a, b] = p[perm[a], perm[b]]``."""
    order = np.asarray(check_permutation(perm)) - 1
    arr = m.p if isinstance(m, TransitionMatrix) else np.asarray(m)
    return arr[np.ix_(order, order)]


def heatmap_pixels(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 2:
        raise ValueError("heatmap needs a 2-d array")
    if p.size and (p.min() < 0 or p.max() > 1):
        raise ValueError("heatmap entries must lie in [0, 1]")
    # half-up rounding: odd multiples of 1/6 sit exactly on .5
    return np.floor(255.0 * (1.0 - p) + 0.5).astype(np.uint8)


def render_heatmap(m: TransitionMatrix | np.ndarray, path: str | Path) -> Path:
    """Write a binary (P5) PGM: white for probability 0, black for 1."""
    arr = m.p if isinstance(m, TransitionMatrix) else m
    px = heatmap_pixels(arr)
    h, w = px.shape
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(px.tobytes())
    return path


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if len(parts) < 4 or parts[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    w, h = (int(v) for v in parts[1].split())
    if int(parts[2]) != 255:
        raise ValueError(f"{path}: unsupported maxval {parts[2]!r}")
    return np.frombuffer(parts[3], dtype=np.uint8, count=w * h).reshape(h, w)


def dump_matrix(m: TransitionMatrix, order: Sequence[int] | None = None) -> str:
    """ASCII dump, one line per row, entries written as ``k/6``."""
    s = m.sixths
    if order is not None:
        idx = np.asarray(check_permutation(order)) - 1
        s = s[np.ix_(idx, idx)]
    return "\n".join(" ".join(f"{int(v)}/6" for v in row) for row in s) + "\n"


def load_matrix_dump(text: str) -> np.ndarray:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            num, _, den = tok.partition("/")
            if den != "6":
                raise ValueError(f"entry {tok!r} is not in sixths")
            row.append(int(num))
        rows.append(row)
    return np.array(rows, dtype=np.int64)
