"""Winnability of a board from the structure of its Markov chain.

The verdict is decided on the integer move graph: whether 100 is reachable
from cell 1 and whether a closed class other than ``{100}`` is.  Absorption
probabilities, game-length statistics and stationary distributions are
computed on top of that.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .board import FINISH, N_CELLS, START, Board, normalize
from .linsolve import SingularSystem, solve_exact, solve_float
from .markov import DIE_FACES, TransitionMatrix, build_matrix, permute_matrix

WIN_TOL = 1e-9
SUPPORT_TOL = 1e-12


class Verdict(str, enum.Enum):
    UNWINNABLE = "Unwinnable"
    OCCASIONALLY_WINNABLE = "OccasionallyWinnable"
    ULTIMATELY_WINNABLE = "UltimatelyWinnable"

    def __str__(self) -> str:
        return self.value


class CertificateForm(str, enum.Enum):
    UNWINNABLE = "UnwinnableForm"
    OCCASIONALLY = "OccasionallyForm"

    def __str__(self) -> str:
        return self.value


class NotUltimatelyWinnable(ValueError):
    pass


@dataclass(frozen=True)
class BlockCertificate:
    """A state ordering exposing a zero off-diagonal block.

    With ``UnwinnableForm`` the block from the first ``split`` states to the
    rest is zero (the first block is closed and holds cell 1).  With
    ``OccasionallyForm`` the block from the rest back to the first states is
    zero (the second block is closed and avoids cells 1 and 100).
    """

    permutation: tuple[int, ...]
    split: int
    form: CertificateForm

    @property
    def first_block(self) -> tuple[int, ...]:
        return self.permutation[: self.split]

    @property
    def second_block(self) -> tuple[int, ...]:
        return self.permutation[self.split:]

    def zero_block(self, m: TransitionMatrix) -> np.ndarray:
        r = permute_matrix(m, self.permutation)
        k = self.split
        return r[:k, k:] if self.form is CertificateForm.UNWINNABLE else r[k:, :k]

    def to_dict(self) -> dict:
        return {"form": self.form.value, "split": self.split, "permutation": list(self.permutation)}


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reachable_from_start: frozenset[int]
    closed_classes: tuple[frozenset[int], ...]
    win_probability: float
    certificate: Optional[BlockCertificate] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "win_probability": self.win_probability,
            "closed_classes": [sorted(c) for c in self.closed_classes],
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "reachable": sorted(self.reachable_from_start),
        }


@dataclass(frozen=True)
class StationaryDistribution:
    pi: np.ndarray
    support: frozenset[int]


class _Chain:
    """Cached graph view of a board's matrix."""

    def __init__(self, board: Board, entrance_rows: str = "jump"):
        self.board = normalize(board)
        self.matrix = build_matrix(self.board, entrance_rows)
        self.succ = [[]] + [self.matrix.successors(i) for i in range(1, N_CELLS + 1)]
        self._classes = None

    def reachable(self, start: int) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in self.succ[i]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen

    def closed_classes(self) -> list[frozenset[int]]:
        if self._classes is None:
            adj = csr_matrix(self.matrix.adjacency())
            _, labels = connected_components(adj, directed=True, connection="strong")
            groups: dict[int, set[int]] = {}
            for idx, lab in enumerate(labels):
                groups.setdefault(int(lab), set()).add(idx + 1)
            label_of = {idx + 1: int(lab) for idx, lab in enumerate(labels)}
            closed = []
            for lab, cells in groups.items():
                if all(label_of[j] == lab for i in cells for j in self.succ[i]):
                    closed.append(frozenset(cells))
            self._classes = sorted(closed, key=min)
        return self._classes

    def absorption(self, targets: set[int], exact: bool = False) -> dict[int, float | Fraction]:
        """Probability of hitting ``targets`` from every cell.

        States in closed classes disjoint from ``targets`` score 0; everything
        outside the closed classes and the targets is transient and solved for.
        """
        h: dict[int, float | Fraction] = {}
        dead: set[int] = set()
        for c in self.closed_classes():
            if not c & targets:
                dead |= c
        for t in targets:
            h[t] = 1
        for d in dead:
            h[d] = 0
        transient = [i for i in range(1, N_CELLS + 1) if i not in targets and i not in dead]
        pos = {c: k for k, c in enumerate(transient)}
        s = self.matrix.sixths
        if exact:
            rows, rhs = [], []
            for i in transient:
                row = {pos[i]: DIE_FACES}
                acc = 0
                for j in self.succ[i]:
                    w = int(s[i - 1, j - 1])
                    if j in pos:
                        row[pos[j]] = row.get(pos[j], 0) - w
                    elif j in targets:
                        acc += w
                rows.append(row)
                rhs.append(acc)
            x = solve_exact(rows, rhs)
            h.update({c: Fraction(h[c]) for c in list(h)})
        else:
            idx = np.array(transient, dtype=int) - 1
            tgt = np.array(sorted(targets), dtype=int) - 1
            p = self.matrix.p
            a = np.eye(len(idx)) - p[np.ix_(idx, idx)]
            b = p[np.ix_(idx, tgt)].sum(axis=1)
            x = solve_float(a, b)
        for c, v in zip(transient, x):
            h[c] = v
        return h


def _chain(board: Board) -> _Chain:
    return board if isinstance(board, _Chain) else _Chain(board)


def reachable_set(board: Board, start: int = START) -> frozenset[int]:
    """Cells reachable from ``start`` along positive-probability moves (``start`` included)."""
    return frozenset(_chain(board).reachable(start))


def closed_classes(board: Board) -> list[frozenset[int]]:
    """Closed communicating classes, sorted by smallest member; ``{100}`` is always one."""
    return list(_chain(board).closed_classes())


def absorption_probability(board: Board, start: int = START, exact: bool = False) -> float | Fraction:
    """Probability of eventually reaching 100 from ``start``."""
    return _chain(board).absorption({FINISH}, exact=exact)[start]


def classify_board(board: Board, exact: bool = False) -> Classification:
    ch = _chain(board)
    reach = frozenset(ch.reachable(START))
    classes = tuple(ch.closed_classes())
    if FINISH not in reach:
        verdict = Verdict.UNWINNABLE
    elif any(c != {FINISH} and c & reach for c in classes):
        verdict = Verdict.OCCASIONALLY_WINNABLE
    else:
        verdict = Verdict.ULTIMATELY_WINNABLE
    if verdict is Verdict.UNWINNABLE:
        win = 0.0
    else:
        win = ch.absorption({FINISH}, exact=exact)[START]
        win = float(win)
        if verdict is Verdict.ULTIMATELY_WINNABLE and abs(win - 1.0) <= WIN_TOL:
            win = 1.0
    return Classification(verdict, reach, classes, win, _certificate(ch, verdict, reach))


def game_length_distribution(board: Board, n_max: int) -> np.ndarray:
    """``F[n-1] = P(at 100 within n moves)`` starting from cell 1, for ``n = 1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    p = _chain(board).matrix.p
    v = np.zeros(N_CELLS)
    v[START - 1] = 1.0
    out = np.empty(n_max)
    for n in range(n_max):
        v = v @ p
        out[n] = v[FINISH - 1]
    return out


def expected_game_length(board: Board, exact: bool = False) -> float | Fraction:
    """Mean number of moves from cell 1 to 100; finite only for ultimately winnable boards."""
    ch = _chain(board)
    reach = ch.reachable(START)
    if FINISH not in reach or any(c != {FINISH} and c & reach for c in ch.closed_classes()):
        raise NotUltimatelyWinnable("expected game length is infinite for this board")
    states = sorted(reach - {FINISH})
    pos = {c: k for k, c in enumerate(states)}
    s = ch.matrix.sixths
    if exact:
        rows = []
        for i in states:
            row = {pos[i]: DIE_FACES}
            for j in ch.succ[i]:
                if j in pos:
                    row[pos[j]] = row.get(pos[j], 0) - int(s[i - 1, j - 1])
            rows.append(row)
        return solve_exact(rows, [DIE_FACES] * len(states))[pos[START]]
    idx = np.array(states) - 1
    a = np.eye(len(idx)) - ch.matrix.p[np.ix_(idx, idx)]
    return float(solve_float(a, np.ones(len(idx)))[pos[START]])


def stationary_distributions(board: Board) -> list[StationaryDistribution]:
    """One extreme stationary distribution per closed class.

    Restricted to a closed class the chain is irreducible, so ``pi P = pi``
    with ``sum(pi) = 1`` has a unique solution there; every stationary
    distribution of the board is a convex combination of these.
    """
    ch = _chain(board)
    p = ch.matrix.p
    out = []
    for c in ch.closed_classes():
        idx = np.array(sorted(c)) - 1
        k = len(idx)
        sub = p[np.ix_(idx, idx)]
        # pi (sub - I) = 0, one equation swapped for normalisation
        a = (sub - np.eye(k)).T
        a[-1, :] = 1.0
        b = np.zeros(k)
        b[-1] = 1.0
        x = solve_float(a, b)
        pi = np.zeros(N_CELLS)
        pi[idx] = x
        support = frozenset(int(i) + 1 for i in np.nonzero(pi > SUPPORT_TOL)[0])
        out.append(StationaryDistribution(pi, support))
    return out


def _certificate(ch: _Chain, verdict: Verdict, reach: frozenset[int]) -> Optional[BlockCertificate]:
    cells = range(1, N_CELLS + 1)
    if verdict is Verdict.UNWINNABLE:
        first = sorted(reach)
        second = [c for c in cells if c not in reach]
        return BlockCertificate(tuple(first + second), len(first), CertificateForm.UNWINNABLE)
    if verdict is Verdict.OCCASIONALLY_WINNABLE:
        trapped: set[int] = set()
        for c in ch.closed_classes():
            if c != {FINISH} and c & reach:
                trapped |= ch.reachable(min(c))
        first = [c for c in cells if c not in trapped]
        second = sorted(trapped)
        return BlockCertificate(tuple(first + second), len(first), CertificateForm.OCCASIONALLY)
    return None


def block_certificate(board: Board) -> Optional[BlockCertificate]:
    return classify_board(board).certificate
