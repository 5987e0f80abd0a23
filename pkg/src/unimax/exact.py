"""Exact score-multiset frequencies and the unique-maximum probability.

The generating polynomial for score sequences is the product over all pairs
(i, j) of (a_i + a_j): each monomial in the expansion is one labeled
tournament, and the exponent multiset of the monomial is its score multiset.
Expanding that product literally means walking all 2^C(n,2) outcomes, which
is hopeless beyond very small n.

This module instead grows tournaments one player at a time and keeps only
the aggregate state that matters: the score multiset of the players added so
far, with the number of labeled tournaments realizing it.  Adding player k+1
to a k-player tournament chooses the set of old players that beat the new
one; each chosen old player gains one point and the new player scores k
minus the number chosen.  Old players with equal scores are interchangeable
for this purpose, so instead of iterating the 2^k subsets we group the old
scores into classes of equal value and choose only how many winners come
from each class, weighting by the product of binomial coefficients
C(class size, chosen).  The number of live states equals the number of
realizable score multisets, which stays in the tens of thousands through
n = 13, and all counts are exact Python integers.

The same one-player step is exposed as :func:`extend`, which is how a table
for n+1 players is deduced from a table for n without touching individual
tournaments.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb

from .core import FrequencyTable, ScoreMultiset, TableIntegrityError, game_count, unique_max

DEFAULT_PLAYER_LIMIT = 13

__all__ = [
    "DEFAULT_PLAYER_LIMIT",
    "EnumerationLimitError",
    "ExactResult",
    "expand",
    "extend",
    "unique_max_count",
    "r_exact",
    "count_score_multisets",
    "decimal_string",
]


class EnumerationLimitError(ValueError):
    """Requested player count exceeds the configured enumeration limit."""


@dataclass(frozen=True)
class ExactResult:
    """Exact probability that a random tournament has a unique top scorer."""

    n: int
    unique_max_count: int
    total: int
    r: Fraction
    decimal: str

    def __post_init__(self) -> None:
        if not 0 <= self.unique_max_count <= self.total:
            raise ValueError("unique-max count out of [0, total]")
        if self.total != 1 << game_count(self.n):
            raise ValueError("total must be 2^C(n,2)")


def _runs(key: ScoreMultiset) -> list[tuple[int, int]]:
    """Group a sorted multiset into (value, multiplicity) runs."""
    runs: list[tuple[int, int]] = []
    prev = key[0]
    mult = 0
    for x in key:
        if x == prev:
            mult += 1
        else:
            runs.append((prev, mult))
            prev, mult = x, 1
    runs.append((prev, mult))
    return runs


def _extend_entries(entries: dict[ScoreMultiset, int], k: int) -> dict[ScoreMultiset, int]:
    """One growth step: k-player score counts -> (k+1)-player score counts."""
    out: dict[ScoreMultiset, int] = {}
    get = out.get
    for key, count in entries.items():
        # Per score class, every way to pick c players (out of m tied at v)
        # that beat the newcomer: they move to v+1, with weight C(m, c).
        # Concatenating the per-class pieces keeps the scores sorted because
        # v+1 never exceeds the next class's value.
        options = []
        for v, m in _runs(key):
            options.append(
                [(comb(m, c), c, (v,) * (m - c) + (v + 1,) * c) for c in range(m + 1)]
            )
        for combo in itertools.product(*options):
            weight = count
            new_score = k
            vals: ScoreMultiset = ()
            for w, c, piece in combo:
                weight *= w
                new_score -= c
                vals += piece
            i = bisect_left(vals, new_score)
            new_key = vals[:i] + (new_score,) + vals[i:]
            out[new_key] = get(new_key, 0) + weight
    return out


def extend(table: FrequencyTable) -> FrequencyTable:
    """Deduce the score-multiset frequencies for n+1 players from those for n.

    The input table is validated first; the output satisfies the same
    invariants (checked for total-count conservation before returning).
    """
    table.validate()
    entries = _extend_entries(table.entries, table.n)
    result = FrequencyTable(table.n + 1, entries)
    expected = 1 << game_count(result.n)
    got = result.total()
    if got != expected:
        raise TableIntegrityError(
            f"extension lost mass: counts sum to {got}, expected {expected}"
        )
    return result


def expand(n: int, *, limit: int = DEFAULT_PLAYER_LIMIT, force: bool = False) -> FrequencyTable:
    """Exact frequency table for n players, built by iterated extension.

    Refuses n beyond ``limit`` (default 13) unless ``force`` is set, since
    state count and runtime climb steeply; the error reports the number of
    score multisets the run would have to carry.
    """
    if n < 1:
        raise ValueError(f"player count must be >= 1, got {n}")
    if n > limit and not force:
        raise EnumerationLimitError(
            f"n={n} exceeds the limit of {limit}: the final table alone has "
            f"{count_score_multisets(n):,} score multisets; pass force=True "
            f"(or --force) to run anyway"
        )
    entries: dict[ScoreMultiset, int] = {(0,): 1}
    for k in range(1, n):
        entries = _extend_entries(entries, k)
        total = sum(entries.values())
        expected = 1 << game_count(k + 1)
        if total != expected:
            raise TableIntegrityError(
                f"extension to {k + 1} players lost mass: {total} != {expected}"
            )
    return FrequencyTable(n, entries)


def unique_max_count(table: FrequencyTable) -> int:
    """Number of labeled tournaments whose maximum score is unique."""
    return sum(count for key, count in table.entries.items() if unique_max(key))


def decimal_string(value: Fraction, digits: int = 10) -> str:
    """Truncated (not rounded) decimal rendering with ``digits`` places."""
    whole, rem = divmod(value.numerator, value.denominator)
    frac = rem * 10**digits // value.denominator
    return f"{whole}.{frac:0{digits}d}"


def r_exact(table: FrequencyTable, digits: int = 10) -> ExactResult:
    """Exact probability of a unique top scorer, from a frequency table."""
    table.validate()
    hits = unique_max_count(table)
    total = 1 << game_count(table.n)
    r = Fraction(hits, total)
    return ExactResult(table.n, hits, total, r, decimal_string(r, digits))


@cache
def count_score_multisets(n: int) -> int:
    """Number of realizable score multisets for n players.

    Counts nondecreasing sequences in [0, n-1] whose prefixes satisfy the
    realizability condition and whose total is n(n-1)/2, without generating
    them.  Used for refusal messages and as a cross-check on table sizes.
    """
    if n < 1:
        raise ValueError(f"player count must be >= 1, got {n}")
    target = game_count(n)

    @cache
    def ways(pos: int, prev: int, acc: int) -> int:
        if pos == n:
            return 1 if acc == target else 0
        remaining = n - pos
        count = 0
        for v in range(prev, n):
            total = acc + v
            if total + (remaining - 1) * (n - 1) < target:
                continue
            if total > target:
                break
            if total < (pos + 1) * pos // 2:
                continue
            count += ways(pos + 1, v, total)
        return count

    result = ways(0, 0, 0)
    ways.cache_clear()
    return result
