"""Impartial-culture elections and Condorcet-winner frequencies."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import Ballot, ElectionProfile, default_names

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SimulationConfig:
    candidates: int
    voters: int = 1001
    trials: int = 20000
    seed: int = 0

    def __post_init__(self):
        if self.candidates < 1:
            raise ValueError("need at least one candidate")
        if self.voters < 1 or self.voters % 2 == 0:
            raise ValueError(f"voters must be a positive odd number, got {self.voters}")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass(frozen=True)
class FrequencyEstimate:
    fraction: float
    trials: int
    hits: int

    @property
    def half_width_95(self) -> float:
        return 1.96 * math.sqrt(self.fraction * (1 - self.fraction) / self.trials)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Counter-based stream owned by one trial; depends only on (seed, trial_index)."""
    seq = np.random.SeedSequence(seed & _SEED_MASK, spawn_key=(trial_index,))
    return np.random.Generator(np.random.Philox(seq))


def _keys(config: SimulationConfig, trial_index: int) -> np.ndarray:
    # keys[v, c]: voter v ranks candidates by increasing key
    return trial_rng(config.seed, trial_index).random((config.voters, config.candidates))


def random_profile(config: SimulationConfig, trial_index: int) -> ElectionProfile:
    rankings = np.argsort(_keys(config, trial_index), axis=1, kind="stable")
    ballots = tuple(Ballot(tuple(int(c) for c in row)) for row in rankings)
    return ElectionProfile(default_names(config.candidates), ballots)


def trial_margins(config: SimulationConfig, trial_index: int) -> np.ndarray:
    """Margin matrix of trial ``trial_index`` without materialising ballots."""
    keys = _keys(config, trial_index)
    above = (keys[:, :, None] < keys[:, None, :]).sum(axis=0, dtype=np.int64)
    return above - above.T


def has_condorcet_winner(margins: np.ndarray) -> bool:
    n = margins.shape[0]
    return bool(((margins > 0).sum(axis=1) == n - 1).any())


def _count(config: SimulationConfig, start: int, stop: int) -> int:
    return sum(has_condorcet_winner(trial_margins(config, i)) for i in range(start, stop))


def condorcet_winner_frequency(config: SimulationConfig, threads: int = 1) -> FrequencyEstimate:
    """Fraction of trials that have a Condorcet winner.

    Trials are split into contiguous chunks; each trial draws from its own
    stream, so the count does not depend on ``threads``.
    """
    if config.candidates == 1:
        hits = config.trials
    elif threads <= 1:
        hits = _count(config, 0, config.trials)
    else:
        bounds = np.linspace(0, config.trials, 4 * threads + 1).astype(int)
        chunks = [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a]
        with ThreadPoolExecutor(threads) as pool:
            hits = sum(pool.map(lambda ab: _count(config, *ab), chunks))
    return FrequencyEstimate(hits / config.trials, config.trials, hits)
