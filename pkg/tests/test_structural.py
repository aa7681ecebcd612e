import json
import logging

import pytest

from mokshapatam import fixtures
from mokshapatam.board import EMPTY_BOARD, Component, parse_board
from mokshapatam.classify import Verdict, classify_board
from mokshapatam.rng import Xoshiro256
from mokshapatam.simulate import random_board
from mokshapatam.structural import (
    ChuteBarrier,
    RegionNotClosed,
    TrapRegion,
    find_chute_barriers,
    find_ladder_bridges,
    find_ladder_passes,
    find_trappers,
    flowchart_classify,
    is_functional,
    trap_region,
)

from oracles import is_closed_set, planted_barrier_board

UW, OW, UN = Verdict.ULTIMATELY_WINNABLE, Verdict.OCCASIONALLY_WINNABLE, Verdict.UNWINNABLE

DELTA_CHUTES = "54>50,55>32,56>27,57>23,58>39,59>41"
BRIDGE = ",".join(f"{e}>{e + 50}" for e in range(10, 16))


def _span(barrier):
    return (barrier.first_entrance, barrier.length)


@pytest.mark.parametrize(
    "board,spans",
    [
        (EMPTY_BOARD, []),
        (fixtures.ALPHA, []),
        (fixtures.U, [(94, 6)]),
        (fixtures.DELTA, [(54, 6)]),
        (fixtures.XI, [(51, 6)]),
        (fixtures.G0, [(34, 6), (74, 6)]),
    ],
)
def test_barriers(board, spans):
    assert [_span(b) for b in find_chute_barriers(board)] == spans


def test_five_chutes_are_not_a_barrier():
    assert find_chute_barriers(parse_board("54>50,55>32,56>27,57>23,58>39")) == []


def test_gap_with_ladder_breaks_barrier():
    assert find_chute_barriers(parse_board("54>50,55>32,56>80,57>23,58>39,59>41,60>2")) == []


def test_adjacent_barriers_merge_without_exit_between():
    b = parse_board("20>5,21>6,22>7,23>8,24>9,25>11,27>12,28>13,29>14,30>15,31>16,32>17")
    bars = find_chute_barriers(b)
    assert [(_span(x), x.merged) for x in bars] == [((20, 6), False), ((20, 13), True), ((27, 6), False)]
    assert find_chute_barriers(b, merge=False) == [x for x in bars if not x.merged]


def test_exit_in_gap_prevents_merge():
    b = parse_board("20>5,21>6,22>7,23>8,24>9,25>11,27>12,28>13,29>14,30>15,31>16,32>17,3>26")
    assert not any(x.merged for x in find_chute_barriers(b))


@pytest.mark.parametrize(
    "board,cells,seq,escape",
    [
        (fixtures.XI, (32, 50), (51, 32), ["43>98"]),
        (fixtures.DELTA, (23, 53), (54, 23), []),
        (fixtures.U, (42, 93), (94, 42), []),
        (fixtures.FIFTY_TRAP, (50, 50), (51, 50), []),
    ],
)
def test_trap_region(board, cells, seq, escape):
    (bar,) = find_chute_barriers(board)
    r = trap_region(board, bar)
    assert (r.m, r.top) == cells
    assert r.m_sequence == seq
    assert [str(c) for c in r.escape_ladders] == escape


def test_trap_region_multi_step_descent():
    # the lowest barrier exit 40 opens a window containing the chute 45>20
    b = parse_board("60>40,61>55,62>56,63>57,64>58,65>59,45>20,30>10")
    r = trap_region(b, find_chute_barriers(b)[0])
    assert r.m_sequence == (60, 40, 20, 10)
    assert r.m == 10 and r.is_closed


def test_g0_regions():
    regions = [trap_region(fixtures.G0, b) for b in find_chute_barriers(fixtures.G0)]
    assert [(r.m, r.top, r.is_closed) for r in regions] == [(3, 33, False), (52, 73, True)]
    assert [str(c) for c in regions[0].escape_ladders] == ["10>71"]


def test_passes_and_bridges():
    (bar,) = find_chute_barriers(fixtures.DELTA)
    r = trap_region(fixtures.DELTA, bar)
    assert find_ladder_passes(fixtures.DELTA, r) == [[Component(2, 99)]]
    assert find_ladder_bridges(fixtures.DELTA, r) == []

    b = parse_board(DELTA_CHUTES + "," + BRIDGE + ",2>70,3>71")
    r = trap_region(b, find_chute_barriers(b)[0])
    assert [[str(c) for c in run] for run in find_ladder_bridges(b, r)] == [BRIDGE.split(",")]
    assert [[str(c) for c in run] for run in find_ladder_passes(b, r)] == [["2>70", "3>71"]]


def test_ladder_landing_inside_region_does_not_vault():
    b = parse_board(DELTA_CHUTES + ",2>40")
    r = trap_region(b, find_chute_barriers(b)[0])
    assert find_ladder_passes(b, r) == []


def test_open_region_rejects_bridge_and_trapper_queries():
    r = trap_region(fixtures.XI, find_chute_barriers(fixtures.XI)[0])
    with pytest.raises(RegionNotClosed):
        find_ladder_bridges(fixtures.XI, r)
    with pytest.raises(RegionNotClosed):
        find_trappers(fixtures.XI, r)


def test_trappers_g0():
    r = trap_region(fixtures.G0, find_chute_barriers(fixtures.G0)[1])
    names = {str(c) for c in find_trappers(fixtures.G0, r)}
    assert "10>71" in names
    assert "41>81" not in names
    assert {f"{e}>{x}" for e, x in zip(range(74, 80), (70, 52, 54, 56, 58, 60))} <= names


def test_trappers_delta_are_barrier_chutes():
    r = trap_region(fixtures.DELTA, find_chute_barriers(fixtures.DELTA)[0])
    assert find_trappers(fixtures.DELTA, r) == list(find_chute_barriers(fixtures.DELTA)[0].chutes)


def _bridge():
    return [Component(e, e + 50) for e in range(10, 16)]


def _dummy_region():
    bar = ChuteBarrier(54, 6, tuple(Component(e, 30) for e in range(54, 60)))
    return TrapRegion(bar, 23, (54, 23), ())


@pytest.mark.parametrize(
    "trappers,expected",
    [
        ([], True),
        ([Component(8, 30)], False),
        ([Component(12, 30)], True),
        ([Component(60, 30)], True),
        ([Component(61, 30)], False),
    ],
)
def test_is_functional(trappers, expected):
    assert is_functional(_bridge(), _dummy_region(), trappers) is expected


@pytest.mark.parametrize(
    "board,verdict,step",
    [
        (EMPTY_BOARD, UW, 1),
        (fixtures.ALPHA, UW, 1),
        (fixtures.XI, UW, 2),
        (fixtures.DELTA, OW, 5),
        (fixtures.U, UN, 6),
        (fixtures.FIFTY_TRAP, UN, 6),
    ],
)
def test_flowchart_examples(board, verdict, step):
    rep = flowchart_classify(board)
    assert (rep.flowchart_verdict, rep.decided_at) == (verdict, step)
    assert rep.agrees_with_ground_truth


def test_flowchart_functional_bridge():
    rep = flowchart_classify(parse_board(DELTA_CHUTES + "," + BRIDGE))
    assert (rep.flowchart_verdict, rep.decided_at) == (UW, 4)
    assert rep.agrees_with_ground_truth


def test_flowchart_reports_g0_disagreement(caplog):
    with caplog.at_level(logging.INFO, logger="mokshapatam.structural"):
        rep = flowchart_classify(fixtures.G0)
    assert (rep.flowchart_verdict, rep.decided_at) == (OW, 5)
    assert rep.ground_truth is UN and not rep.agrees_with_ground_truth
    assert "disagrees" in caplog.text


def test_escape_ladder_into_inner_closed_set():
    # 57>10 drags the region down to 10..50, whose ladder 12>99 escapes; but the
    # chutes 51..56 exit into 45..50, which is closed on its own
    b = parse_board("51>45,52>46,53>47,54>48,55>49,56>50,57>10,12>99")
    rep = flowchart_classify(b)
    assert (rep.flowchart_verdict, rep.decided_at) == (UW, 2)
    assert rep.ground_truth is OW
    assert is_closed_set(b, range(45, 51))


def test_non_functional_bridge_reaches_step_six():
    rep = flowchart_classify(parse_board(DELTA_CHUTES + "," + BRIDGE + ",5>25"))
    assert rep.functional_bridges == [] and rep.decided_at == 6
    assert rep.ground_truth is OW


def test_report_json_keys():
    d = flowchart_classify(fixtures.DELTA).to_dict()
    json.dumps(d)
    for key in ("barriers", "trap_regions", "escape_ladders", "ladder_passes", "ladder_bridges",
                "trappers", "flowchart_verdict", "agrees_with_ground_truth"):
        assert key in d
    assert d["trap_regions"][0]["m_sequence"] == [54, 23]


def _random_boards(count, seed):
    rng = Xoshiro256(seed)
    for k in range(count):
        yield planted_barrier_board(rng, k % 15) if k % 3 == 0 else random_board(k % 31, rng=rng)


def test_region_closed_iff_no_escape_ladder():
    for b in _random_boards(300, 12):
        for bar in find_chute_barriers(b):
            r = trap_region(b, bar)
            assert is_closed_set(b, r.cells) == r.is_closed, (b.name, bar)


def test_m_sequence_terminates_and_decreases():
    for b in _random_boards(300, 13):
        for bar in find_chute_barriers(b):
            seq = trap_region(b, bar).m_sequence
            assert len(seq) <= 98
            assert all(x > y for x, y in zip(seq, seq[1:]))


def test_barrier_necessity_and_sufficiency():
    for b in _random_boards(300, 14):
        v = classify_board(b).verdict
        has_barrier = bool(find_chute_barriers(b))
        if not has_barrier:
            assert v is UW, b.name
        if v is not UW:
            assert has_barrier, b.name
