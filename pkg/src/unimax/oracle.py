"""Brute-force ground truth for small tournaments.

Every labeled tournament on n players corresponds to one integer in
[0, 2^C(n,2)): bit g of the counter is the outcome of the g-th pair in the
canonical order (see :mod:`unimax.core`).  Walking the counter enumerates
all tournaments exactly once, which gives exact joint score counts with no
cleverness to get wrong.  Feasible through n = 7 (2^21 outcomes).

All probabilities returned here are exact rationals with power-of-two
denominators, so comparisons against closed forms need no tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .core import FrequencyTable, game_count, pair_order

ORACLE_PLAYER_LIMIT = 7
HUBER_PLAYER_LIMIT = 5

__all__ = [
    "ORACLE_PLAYER_LIMIT",
    "HUBER_PLAYER_LIMIT",
    "OracleLimitError",
    "HuberCheck",
    "enumerate_all",
    "joint_score_count",
    "huber_check",
]


class OracleLimitError(ValueError):
    """Full enumeration was requested beyond the feasible player count."""


def _check_limit(n: int, limit: int) -> None:
    if n < 1:
        raise ValueError(f"player count must be >= 1, got {n}")
    if n > limit:
        raise OracleLimitError(
            f"full enumeration of n={n} means 2^{game_count(n)} tournaments; "
            f"the oracle stops at n={limit}"
        )


def _score_chunk(n: int, start: int, stop: int) -> np.ndarray:
    """Score vectors (one row per counter value) for counters in [start, stop)."""
    counters = np.arange(start, stop, dtype=np.int64)
    scores = np.zeros((stop - start, n), dtype=np.uint8)
    for g, (i, j) in enumerate(pair_order(n)):
        bit = (counters >> g & 1).astype(np.uint8)
        scores[:, i] += bit
        scores[:, j] += 1 - bit
    return scores


@lru_cache(maxsize=4)
def _all_scores(n: int) -> np.ndarray:
    """Scores of every labeled tournament, indexed by counter value."""
    _check_limit(n, ORACLE_PLAYER_LIMIT)
    return _score_chunk(n, 0, 1 << game_count(n))


def enumerate_all(n: int, chunk_bits: int = 18) -> FrequencyTable:
    """Exact frequency table by iterating every game-outcome counter.

    Counters are processed in fixed-size ranges and the partial tables are
    merged by addition, so the result is independent of the chunk split
    (range splitting is also how this would be parallelized).
    """
    _check_limit(n, ORACLE_PLAYER_LIMIT)
    games = game_count(n)
    total = 1 << games
    step = 1 << min(chunk_bits, games)
    entries: dict[tuple[int, ...], int] = {}
    for start in range(0, total, step):
        scores = np.sort(_score_chunk(n, start, min(start + step, total)), axis=1)
        keys, counts = np.unique(scores, axis=0, return_counts=True)
        for row, count in zip(keys, counts):
            key = tuple(int(x) for x in row)
            entries[key] = entries.get(key, 0) + int(count)
    return FrequencyTable(n, entries)


def joint_score_count(n: int, constraints: Sequence[tuple[int, int]]) -> int:
    """Number of labeled tournaments meeting all (player, score) equalities."""
    _check_limit(n, ORACLE_PLAYER_LIMIT)
    seen = set()
    for player, score in constraints:
        if not 0 <= player < n:
            raise ValueError(f"player {player} out of range for n={n}")
        if player in seen:
            raise ValueError(f"player {player} appears twice in constraints")
        if not 0 <= score <= n - 1:
            raise ValueError(f"score {score} out of range [0, {n - 1}]")
        seen.add(player)
    scores = _all_scores(n)
    mask = np.ones(scores.shape[0], dtype=bool)
    for player, score in constraints:
        mask &= scores[:, player] == score
    return int(mask.sum())


class HuberCheck(NamedTuple):
    """Both sides of the joint lower-tail product inequality, exactly."""

    lhs: Fraction
    rhs: Fraction
    holds: bool


def huber_check(n: int, thresholds: Sequence[int], strict: bool = True) -> HuberCheck:
    """Test P(s_1 < k_1, ..., s_m < k_m) <= prod P(s_i < k_i) by enumeration.

    Scores of different players are negatively dependent, so the joint
    probability that several of them are all small never exceeds the product
    of the marginals.  ``strict=False`` uses <= in place of < throughout.
    Both sides are exact rationals computed over all 2^C(n,2) tournaments.
    """
    _check_limit(n, HUBER_PLAYER_LIMIT)
    m = len(thresholds)
    if m > n:
        raise ValueError(f"{m} thresholds for {n} players")
    if any(not 0 <= k <= n for k in thresholds):
        raise ValueError(f"thresholds must lie in [0, {n}]")
    scores = _all_scores(n)
    total = 1 << game_count(n)
    mask = np.ones(scores.shape[0], dtype=bool)
    rhs = Fraction(1)
    for i, k in enumerate(thresholds):
        hit = scores[:, i] < k if strict else scores[:, i] <= k
        mask &= hit
        rhs *= Fraction(int(hit.sum()), total)
    lhs = Fraction(int(mask.sum()), total)
    return HuberCheck(lhs, rhs, lhs <= rhs)
