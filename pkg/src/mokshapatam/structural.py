"""Reading winnability off the board layout.

A chute-barrier is a run of six or more consecutive chute entrances; no die
roll can carry a piece across it.  Below each barrier sits a candidate trap
region found by following the lowest chute exits downwards, which is closed
exactly when no ladder inside it jumps clear of the barrier.  Ladders that
vault a closed region from below are passes (1 to 5 in a row) or bridges
(6 or more).  :func:`flowchart_classify` chains these checks into a verdict
and compares it with :func:`mokshapatam.classify.classify_board`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .board import Board, Component, normalize
from .classify import Verdict, _Chain, classify_board

log = logging.getLogger(__name__)

BARRIER_MIN = 6
TRAPPER_TOL = 1e-12


class RegionNotClosed(ValueError):
    pass


@dataclass(frozen=True)
class ChuteBarrier:
    first_entrance: int
    length: int
    chutes: tuple[Component, ...]
    merged: bool = False

    @property
    def last_entrance(self) -> int:
        return self.first_entrance + self.length - 1

    @property
    def entrances(self) -> range:
        return range(self.first_entrance, self.last_entrance + 1)

    def to_dict(self) -> dict:
        return {
            "first_entrance": self.first_entrance,
            "length": self.length,
            "chutes": [str(c) for c in self.chutes],
            "merged": self.merged,
        }


@dataclass(frozen=True)
class TrapRegion:
    barrier: ChuteBarrier
    m: int
    m_sequence: tuple[int, ...]
    escape_ladders: tuple[Component, ...]

    @property
    def top(self) -> int:
        return self.barrier.first_entrance - 1

    @property
    def cells(self) -> range:
        return range(self.m, self.top + 1)

    @property
    def is_closed(self) -> bool:
        return not self.escape_ladders

    def to_dict(self) -> dict:
        return {
            "barrier": self.barrier.to_dict(),
            "cells": [self.m, self.top],
            "m_sequence": list(self.m_sequence),
            "escape_ladders": [str(c) for c in self.escape_ladders],
            "closed": self.is_closed,
        }


@dataclass
class StructuralReport:
    board: Board
    barriers: list[ChuteBarrier] = field(default_factory=list)
    trap_regions: list[TrapRegion] = field(default_factory=list)
    closed_regions: list[TrapRegion] = field(default_factory=list)
    ladder_passes: list[list[Component]] = field(default_factory=list)
    ladder_bridges: list[list[Component]] = field(default_factory=list)
    functional_bridges: list[list[Component]] = field(default_factory=list)
    trappers: dict[tuple[int, int], list[Component]] = field(default_factory=dict)
    flowchart_verdict: Verdict | None = None
    decided_at: int = 0
    ground_truth: Verdict | None = None

    @property
    def agrees_with_ground_truth(self) -> bool:
        return self.flowchart_verdict == self.ground_truth

    def to_dict(self) -> dict:
        return {
            "board": self.board.name,
            "barriers": [b.to_dict() for b in self.barriers],
            "trap_regions": [r.to_dict() for r in self.trap_regions],
            "escape_ladders": sorted({str(c) for r in self.trap_regions for c in r.escape_ladders}),
            "ladder_passes": [[str(c) for c in run] for run in self.ladder_passes],
            "ladder_bridges": [[str(c) for c in run] for run in self.ladder_bridges],
            "functional_bridges": [[str(c) for c in run] for run in self.functional_bridges],
            "trappers": {f"{lo}..{hi}": [str(c) for c in comps] for (lo, hi), comps in self.trappers.items()},
            "flowchart_verdict": self.flowchart_verdict.value if self.flowchart_verdict else None,
            "decided_at": self.decided_at,
            "ground_truth": self.ground_truth.value if self.ground_truth else None,
            "agrees_with_ground_truth": self.agrees_with_ground_truth,
        }


def _runs(cells: list[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for c in sorted(cells):
        if runs and runs[-1][-1] == c - 1:
            runs[-1].append(c)
        else:
            runs.append([c])
    return runs


def find_chute_barriers(board: Board, merge: bool = True) -> list[ChuteBarrier]:
    """Maximal runs of at least six consecutive chute entrances.

    With ``merge``, neighbouring barriers that have no component exit between
    them are also reported joined end to end as one ``merged`` barrier.
    """
    board = normalize(board)
    jumps = board.jumps()
    chute_cells = [c.entrance for c in board.chutes]
    barriers = [
        ChuteBarrier(run[0], len(run), tuple(Component(e, jumps[e]) for e in run))
        for run in _runs(chute_cells)
        if len(run) >= BARRIER_MIN
    ]
    if not merge or len(barriers) < 2:
        return barriers
    exits = set(board.exits)
    merged = []
    group = [barriers[0]]
    for b in barriers[1:]:
        gap = range(group[-1].last_entrance + 1, b.first_entrance)
        if any(x in exits for x in gap):
            if len(group) > 1:
                merged.append(_merge(group, jumps))
            group = [b]
        else:
            group.append(b)
    if len(group) > 1:
        merged.append(_merge(group, jumps))
    return sorted(barriers + merged, key=lambda b: (b.first_entrance, b.length))


def _merge(group: list[ChuteBarrier], jumps: dict[int, int]) -> ChuteBarrier:
    lo, hi = group[0].first_entrance, group[-1].last_entrance
    chutes = tuple(Component(e, jumps[e]) for e in range(lo, hi + 1) if e in jumps and jumps[e] < e)
    return ChuteBarrier(lo, hi - lo + 1, chutes, merged=True)


def trap_region(board: Board, barrier: ChuteBarrier) -> TrapRegion:
    """Follow lowest chute exits down from the barrier.

    The first value is the barrier's first entrance, the second the lowest
    exit of the barrier's chutes, and each next one the lowest exit among
    chutes entering strictly between the last two values.  The descent stops
    as soon as it fails to go lower; the region is ``m..first_entrance-1``.
    """
    board = normalize(board)
    top = barrier.first_entrance - 1
    seq = [barrier.first_entrance]
    nxt = min(c.exit for c in barrier.chutes)
    chutes = board.chutes
    while nxt < seq[-1]:
        seq.append(nxt)
        hi, lo = seq[-2], seq[-1]
        window = [c.exit for c in chutes if lo < c.entrance < hi]
        if not window:
            break
        nxt = min(window)
    m = seq[-1]
    escape = tuple(c for c in board.ladders if m <= c.entrance <= top and c.exit > barrier.last_entrance)
    return TrapRegion(barrier, m, tuple(seq), escape)


def _vaulting_runs(board: Board, region: TrapRegion) -> list[list[Component]]:
    if not region.is_closed:
        raise RegionNotClosed(f"region {region.m}..{region.top} has escape ladders")
    lo, hi = region.m, region.top
    by_entrance = {c.entrance: c for c in board.ladders if c.entrance < lo and c.exit > hi}
    return [[by_entrance[e] for e in run] for run in _runs(list(by_entrance))]


def find_ladder_bridges(board: Board, region: TrapRegion) -> list[list[Component]]:
    """Runs of six or more consecutive ladders from below ``region`` to above it."""
    return [r for r in _vaulting_runs(normalize(board), region) if len(r) >= BARRIER_MIN]


def find_ladder_passes(board: Board, region: TrapRegion) -> list[list[Component]]:
    """Runs of one to five consecutive ladders from below ``region`` to above it."""
    return [r for r in _vaulting_runs(normalize(board), region) if len(r) < BARRIER_MIN]


def find_trappers(board: Board, region: TrapRegion, chain: _Chain | None = None) -> list[Component]:
    """Components entering outside ``region`` whose exit reaches it with probability 1."""
    if not region.is_closed:
        raise RegionNotClosed(f"region {region.m}..{region.top} has escape ladders")
    board = normalize(board)
    chain = chain or _Chain(board)
    h = chain.absorption(set(region.cells))
    return [c for c in board if c.entrance not in region.cells and h[c.exit] >= 1 - TRAPPER_TOL]


def is_functional(bridge: list[Component], region: TrapRegion, trappers: list[Component]) -> bool:
    """A bridge works unless a trapper enters below its lowest entrance or above its lowest exit."""
    lo = min(c.entrance for c in bridge)
    hi = min(c.exit for c in bridge)
    return all(lo <= t.entrance <= hi for t in trappers)


def flowchart_classify(board: Board) -> StructuralReport:
    """Run the structural decision procedure and compare with ground truth.

    Steps: (1) no chute-barrier means ultimately winnable; (2) likewise when
    every barrier has an escape ladder; (3) collect the closed trap regions;
    (4) ultimately winnable if each has a functional ladder-bridge;
    (5) occasionally winnable if each region lacking one has a ladder-pass;
    (6) otherwise unwinnable.  The procedure is advisory: disagreements with
    :func:`classify_board` are logged, never raised.
    """
    board = normalize(board)
    chain = _Chain(board)
    report = StructuralReport(board)
    report.ground_truth = classify_board(chain).verdict
    report.barriers = find_chute_barriers(board)

    def decide(verdict: Verdict, step: int) -> StructuralReport:
        report.flowchart_verdict = verdict
        report.decided_at = step
        if not report.agrees_with_ground_truth:
            log.info("flowchart disagrees with ground truth: %s", report.to_dict())
        return report

    if not report.barriers:
        return decide(Verdict.ULTIMATELY_WINNABLE, 1)
    report.trap_regions = [trap_region(board, b) for b in report.barriers]
    if all(not r.is_closed for r in report.trap_regions if not r.barrier.merged):
        return decide(Verdict.ULTIMATELY_WINNABLE, 2)

    seen = set()
    for r in report.trap_regions:
        key = (r.m, r.top)
        if r.is_closed and key not in seen:
            seen.add(key)
            report.closed_regions.append(r)

    lacking_flb = []
    for r in report.closed_regions:
        key = (r.m, r.top)
        bridges = find_ladder_bridges(board, r)
        passes = find_ladder_passes(board, r)
        trappers = find_trappers(board, r, chain)
        report.trappers[key] = trappers
        report.ladder_bridges.extend(bridges)
        report.ladder_passes.extend(passes)
        functional = [b for b in bridges if is_functional(b, r, trappers)]
        report.functional_bridges.extend(functional)
        if not functional:
            lacking_flb.append((r, passes))

    if not lacking_flb:
        return decide(Verdict.ULTIMATELY_WINNABLE, 4)
    if all(passes for _, passes in lacking_flb):
        return decide(Verdict.OCCASIONALLY_WINNABLE, 5)
    return decide(Verdict.UNWINNABLE, 6)
