"""Pure-Python (numpy) batch game simulator.

Advances every game in lockstep with one vectorised xoshiro256** state per
game.  Produces exactly the same results as the compiled kernel.
"""
from __future__ import annotations

import numpy as np

from .rng import GOLDEN, MASK64

WON, CUTOFF, TRAPPED = 0, 1, 2

_U = np.uint64


def _rotl(x: np.ndarray, k: int) -> np.ndarray:
    return (x << _U(k)) | (x >> _U(64 - k))


def _fmix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return z ^ (z >> _U(31))


def _seed_states(seed: int, first_game: int, n: int) -> np.ndarray:
    k = (np.arange(n, dtype=np.uint64) + _U(first_game & MASK64)) + _U(GOLDEN)
    st = _fmix(_U(seed & MASK64) ^ _fmix(k))
    s = np.empty((4, n), dtype=np.uint64)
    for j in range(4):
        st = st + _U(GOLDEN)
        s[j] = _fmix(st)
    return s


def _next(s: np.ndarray) -> np.ndarray:
    result = _rotl(s[1] * _U(5), 7) * _U(9)
    t = s[1] << _U(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


def _dice(s: np.ndarray) -> np.ndarray:
    faces = np.zeros(s.shape[1], dtype=np.int64)
    pending = np.arange(s.shape[1])
    while pending.size:
        sub = s[:, pending]
        v = (_next(sub) >> _U(61)).astype(np.int64)
        s[:, pending] = sub
        ok = v < 6
        faces[pending[ok]] = v[ok] + 1
        pending = pending[~ok]
    return faces


def simulate_batch(landing, trap, seed: int, first_game: int, n_games: int, max_moves: int):
    landing = np.asarray(landing, dtype=np.int64)
    trap = np.asarray(trap, dtype=bool)
    outcome = np.full(n_games, -1, dtype=np.int8)
    moves = np.zeros(n_games, dtype=np.int64)
    pos = np.ones(n_games, dtype=np.int64)
    with np.errstate(over="ignore"):
        state = _seed_states(seed, first_game, n_games)
        live = np.arange(n_games)
        m = 0
        while live.size:
            p = pos[live]
            won = p == 100
            trapped = ~won & trap[p]
            outcome[live[won]] = WON
            outcome[live[trapped]] = TRAPPED
            keep = ~(won | trapped)
            if m >= max_moves:
                outcome[live[keep]] = CUTOFF
                break
            live = live[keep]
            if not live.size:
                break
            sub = state[:, live]
            t = pos[live] + _dice(sub)
            state[:, live] = sub
            inside = t <= 100
            pos[live[inside]] = landing[t[inside]]
            m += 1
            moves[live] = m
    return outcome, moves, pos.astype(np.int16)

