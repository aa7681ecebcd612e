"""One test group per acceptance criterion; the terminal summary prints a
PASS/FAIL line for each."""
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from mokshapatam import fixtures
from mokshapatam.board import EMPTY_BOARD
from mokshapatam.classify import (
    CertificateForm,
    Verdict,
    absorption_probability,
    block_certificate,
    classify_board,
    closed_classes,
    stationary_distributions,
)
from mokshapatam.enumeration import (
    barrier_placements,
    chute_barrier_upper_bound,
    count_boards,
    scientific,
    shared_exit_bounds,
    total_boards,
    winnable_lower_bound,
)
from mokshapatam.markov import build_matrix, permute_matrix, read_pgm, render_heatmap
from mokshapatam.rng import Xoshiro256, stream_seed
from mokshapatam.simulate import SimConfig, random_board, simulate
from mokshapatam.structural import find_chute_barriers, flowchart_classify, trap_region

from conftest import note
from oracles import closed_classes_bruteforce, is_closed_set, one_move, planted_barrier_board

UW, OW, UN = Verdict.ULTIMATELY_WINNABLE, Verdict.OCCASIONALLY_WINNABLE, Verdict.UNWINNABLE

FIXTURE_VERDICTS = [
    ("0", EMPTY_BOARD, UW),
    ("8(Xi)", fixtures.XI, UW),
    ("6(U)", fixtures.U, UN),
    ("10(alpha)", fixtures.ALPHA, UW),
    ("7(Delta)", fixtures.DELTA, OW),
    ("14(G0)", fixtures.G0, UN),
    ("6(fifty)", fixtures.FIFTY_TRAP, UN),
]


def _rel(value, printed):
    return abs(float(Fraction(value) / Fraction(printed)) - 1)


def _stratified(count, n_max, seed):
    """``count`` uniform random boards, cycling N over 0..n_max."""
    for k in range(count):
        n = k % (n_max + 1)
        yield random_board(n, rng=Xoshiro256.for_stream(stream_seed(seed, n), k))


# criterion 1 ---------------------------------------------------------------

@pytest.mark.acceptance(1)
@pytest.mark.parametrize("name,board,verdict", FIXTURE_VERDICTS, ids=[f[0] for f in FIXTURE_VERDICTS])
def test_c1_fixture_verdict(name, board, verdict):
    assert classify_board(board).verdict is verdict


@pytest.mark.acceptance(1)
def test_c1_fifty_trap_closed_classes():
    assert closed_classes(fixtures.FIFTY_TRAP) == [{50}, {100}]


@pytest.mark.acceptance(1)
def test_c1_runtime():
    t0 = time.perf_counter()
    for _, board, _ in FIXTURE_VERDICTS:
        classify_board(board)
    assert time.perf_counter() - t0 < 1.0


# criterion 2 ---------------------------------------------------------------

@pytest.mark.acceptance(2)
def test_c2_delta_linear_solve():
    assert abs(absorption_probability(fixtures.DELTA, 1) - 1 / 6) < 1e-12
    assert absorption_probability(fixtures.DELTA, 1, exact=True) == Fraction(1, 6)


@pytest.mark.acceptance(2)
def test_c2_delta_monte_carlo():
    r = simulate(fixtures.DELTA, SimConfig(seed=1, games=10**6))
    note(2, f"Monte Carlo 10^6 games: {r.estimate:.6f} +/- {r.standard_error:.6f}")
    assert abs(r.estimate - 1 / 6) <= 4 * r.standard_error


# criterion 3 ---------------------------------------------------------------

PRINTED_11 = [
    ("total_boards", lambda: total_boards(), "7.6432896116e93"),
    ("barrier_placements", lambda: barrier_placements(), "6.8210081597e12"),
    ("chute_barrier_upper_bound", lambda: chute_barrier_upper_bound(), "8.6769698734e92"),
    ("winnable_lower_bound", lambda: winnable_lower_bound()[0], "6.7755926243e93"),
    ("shared_exit_lower", lambda: shared_exit_bounds()[0], "1.3135349305e127"),
    ("shared_exit_upper", lambda: shared_exit_bounds()[1], "1.2801985919e134"),
]


@pytest.mark.acceptance(3)
def test_c3_small_counts_exact():
    assert count_boards(1) == 9506
    assert count_boards(2) == 43_347_360


@pytest.mark.acceptance(3)
@pytest.mark.parametrize("name,compute,printed", PRINTED_11, ids=[p[0] for p in PRINTED_11])
def test_c3_printed_values(name, compute, printed):
    value = compute().value
    rel = _rel(value, printed)
    if rel >= 5e-11:
        factor = scientific(Fraction(printed) / Fraction(value), 3)
        note(3, f"{name}: computed {scientific(value)}, printed {printed}, printed/computed = {factor}")
    assert rel < 5e-11


@pytest.mark.acceptance(3)
def test_c3_twenty_component_values():
    assert _rel(total_boards(20).value, "1.7e57") < 5e-2
    assert _rel(chute_barrier_upper_bound(20).value, "8.1e53") < 5e-2


@pytest.mark.acceptance(3)
def test_c3_fractions():
    assert winnable_lower_bound()[1] > Fraction("0.886")
    assert winnable_lower_bound(20)[1] > Fraction("0.9995")


@pytest.mark.acceptance(3)
def test_c3_runtime():
    from mokshapatam.enumeration import factorial, binomial

    factorial.cache_clear()
    binomial.cache_clear()
    t0 = time.perf_counter()
    total_boards(), barrier_placements(), chute_barrier_upper_bound(), winnable_lower_bound()
    shared_exit_bounds(), total_boards(20), chute_barrier_upper_bound(20), winnable_lower_bound(20)
    assert time.perf_counter() - t0 < 1.0


# criterion 4 ---------------------------------------------------------------

@pytest.mark.acceptance(4)
def test_c4_g0_upper_right_block(tmp_path):
    cert = block_certificate(fixtures.G0)
    assert cert.form is CertificateForm.UNWINNABLE
    k = cert.split
    arr = permute_matrix(build_matrix(fixtures.G0), cert.permutation)
    assert (arr[:k, k:] == 0).all()
    img = read_pgm(render_heatmap(arr, tmp_path / "g0.pgm"))
    assert (img[:k, k:] == 255).all()


@pytest.mark.acceptance(4)
def test_c4_delta_lower_left_block():
    cert = block_certificate(fixtures.DELTA)
    assert cert.form is CertificateForm.OCCASIONALLY
    k = cert.split
    arr = permute_matrix(build_matrix(fixtures.DELTA), cert.permutation)
    assert (arr[k:, :k] == 0).all()
    assert {1, 100} <= set(cert.first_block)


# criterion 5 ---------------------------------------------------------------

def _c5_boards():
    yield from _stratified(31 * 323, 30, seed=5)
    rng = Xoshiro256(55)
    for k in range(2000):
        yield planted_barrier_board(rng, k % 25)


@pytest.fixture(scope="module")
def c5_results():
    tallies = {"boards": 0, "barrier_free": 0, "not_uw": 0, "regions": 0}
    bad = {"a": [], "b": [], "c": []}
    for b in _c5_boards():
        tallies["boards"] += 1
        verdict = classify_board(b).verdict
        barriers = find_chute_barriers(b)
        if not barriers:
            tallies["barrier_free"] += 1
            if verdict is not UW:
                bad["a"].append(b.name)
        if verdict is not UW:
            tallies["not_uw"] += 1
            if not barriers:
                bad["b"].append(b.name)
        for bar in barriers:
            tallies["regions"] += 1
            r = trap_region(b, bar)
            if is_closed_set(b, r.cells) != r.is_closed:
                bad["c"].append((b.name, bar.first_entrance))
    note(5, "boards {boards}, barrier-free {barrier_free}, not ultimately winnable {not_uw}, "
            "trap regions checked {regions}".format(**tallies))
    return tallies, bad


@pytest.mark.acceptance(5)
def test_c5a_no_barrier_implies_ultimately_winnable(c5_results):
    tallies, bad = c5_results
    assert tallies["boards"] >= 10**4
    assert bad["a"] == []


@pytest.mark.acceptance(5)
def test_c5b_not_winnable_implies_barrier(c5_results):
    assert c5_results[1]["b"] == []


@pytest.mark.acceptance(5)
def test_c5c_region_closed_iff_no_escape(c5_results):
    tallies, bad = c5_results
    assert tallies["regions"] > 0
    assert bad["c"] == []


@pytest.mark.acceptance(5)
def test_c5d_stationary_supports_are_closed_classes():
    rng = Xoshiro256(56)
    checked = 0
    while checked < 100:
        b = planted_barrier_board(rng, rng.below(25))
        if not find_chute_barriers(b):
            continue
        checked += 1
        p = build_matrix(b).p
        ds = stationary_distributions(b)
        assert [d.support for d in ds] == closed_classes_bruteforce(b)
        for d in ds:
            assert np.max(np.abs(d.pi @ p - d.pi)) <= 1e-9


# criterion 6 ---------------------------------------------------------------

@pytest.mark.acceptance(6)
@pytest.mark.parametrize("name,board", [(f[0], f[1]) for f in FIXTURE_VERDICTS], ids=[f[0] for f in FIXTURE_VERDICTS])
def test_c6_rows_sum_to_one_exactly(name, board):
    m = build_matrix(board)
    for i in range(1, 101):
        assert sum(m.row(i).values()) == 1


@pytest.mark.acceptance(6)
def test_c6_one_move_support_matches_enumerator():
    for b in _stratified(1000, 49, seed=6):
        m = build_matrix(b)
        jumps = b.jumps()
        for i in range(1, 100):
            if i not in jumps:
                assert m.row(i) == one_move(b, i), (b.name, i)


# criterion 7 ---------------------------------------------------------------

def _triangle(board, seed):
    truth = classify_board(board).verdict
    spectral_uw = len(stationary_distributions(board)) == 1
    mc = simulate(board, SimConfig(seed=seed, games=1000)).verdict()
    return truth, spectral_uw, mc


@pytest.mark.acceptance(7)
@pytest.mark.parametrize("name,board,verdict", FIXTURE_VERDICTS, ids=[f[0] for f in FIXTURE_VERDICTS])
def test_c7_fixtures(name, board, verdict):
    truth, spectral_uw, mc = _triangle(board, 7)
    assert truth is verdict and mc is verdict
    assert spectral_uw == (verdict is UW)


@pytest.mark.acceptance(7)
def test_c7_random_boards():
    mismatches = []
    agree = total = 0
    for k, b in enumerate(_stratified(1000, 30, seed=7)):
        truth, spectral_uw, mc = _triangle(b, k)
        if mc is not truth or (spectral_uw and truth is not UW):
            mismatches.append((b.name, truth, mc))
        total += 1
        agree += flowchart_classify(b).agrees_with_ground_truth
    note(7, f"flowchart agreement on {total} random boards: {agree}/{total}")
    assert mismatches == []


# criterion 8 ---------------------------------------------------------------

def _cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "mokshapatam.cli", *argv, "--json"], capture_output=True, check=True
    ).stdout


@pytest.mark.acceptance(8)
def test_c8_simulate_json_byte_identical():
    argv = ("simulate", "--board", fixtures.DELTA.to_string(), "--games", "200000", "--seed", "42")
    first = _cli(*argv)
    assert first == _cli(*argv)
    assert first == _cli(*argv, "--workers", "2")


@pytest.mark.acceptance(8)
def test_c8_census_json_byte_identical():
    argv = ("census", "--n-min", "0", "--n-max", "12", "--samples", "100", "--seed", "42")
    assert _cli(*argv) == _cli(*argv)
