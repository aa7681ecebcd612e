"""Sampled winnability proportions over uniformly random boards."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .classify import Verdict
from .rng import Xoshiro256, stream_seed
from .simulate import random_board
from .structural import find_chute_barriers, flowchart_classify

VERDICTS = [v.value for v in Verdict]


def sample_board(seed: int, n: int, k: int):
    """Sample ``k`` of stratum ``n``; independent of how samples are scheduled."""
    return random_board(n, rng=Xoshiro256.for_stream(stream_seed(seed, n), k))


def _census_one(args):
    seed, n, k = args
    board = sample_board(seed, n, k)
    report = flowchart_classify(board)
    return (
        n,
        report.ground_truth.value,
        report.flowchart_verdict.value,
        bool(find_chute_barriers(board, merge=False)),
        board.to_string(),
    )


@dataclass
class Stratum:
    n: int
    samples: int = 0
    verdicts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(VERDICTS, 0))
    agreements: int = 0
    with_barrier: int = 0

    def to_dict(self) -> dict:
        s = self.samples
        return {
            "n": self.n,
            "samples": s,
            "verdicts": dict(self.verdicts),
            "proportions": {k: v / s for k, v in self.verdicts.items()},
            "flowchart_agreement": self.agreements / s,
            "barrier_proportion": self.with_barrier / s,
        }


def census(n_values: Iterable[int], samples: int, seed: int = 0, workers: int = 1) -> dict:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    n_values = list(n_values)
    jobs = [(seed, n, k) for n in n_values for k in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_census_one, jobs, chunksize=64))
    else:
        rows = [_census_one(j) for j in jobs]
    strata = {n: Stratum(n) for n in n_values}
    total = Stratum(-1)
    disagreements = []
    for n, truth, flow, barrier, text in rows:
        for st in (strata[n], total):
            st.samples += 1
            st.verdicts[truth] += 1
            st.agreements += truth == flow
            st.with_barrier += barrier
        if truth != flow:
            disagreements.append({"n": n, "board": text, "ground_truth": truth, "flowchart": flow})
    agg = total.to_dict()
    del agg["n"]
    return {
        "seed": seed,
        "samples_per_n": samples,
        "strata": [strata[n].to_dict() for n in n_values],
        "aggregate": agg,
        "disagreements": disagreements,
    }
