"""Domain types and elementary operations for round-robin tournaments.

A tournament on ``n`` players is a complete oriented graph: every pair of
players meets once and one of them wins.  The *score* of a player is the
number of games it wins, and the sorted list of all n scores is the score
multiset of the tournament.  Score multisets are represented throughout as
plain nondecreasing tuples of ints, which keeps them usable as dict keys in
the counting code.

Players are 0-indexed.  Game outcomes follow a fixed pair order: the pairs
(i, j) with i < j are enumerated lexicographically, and outcome bit 1 means
the lower-indexed player wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

ScoreMultiset = tuple[int, ...]

__all__ = [
    "ScoreMultiset",
    "TournamentMatrix",
    "FrequencyTable",
    "TableIntegrityError",
    "game_count",
    "pair_order",
    "scores",
    "unique_max",
    "complement",
    "landau_valid",
]


def game_count(n: int) -> int:
    """Number of games in a round-robin tournament on n players: C(n, 2)."""
    return n * (n - 1) // 2


def pair_order(n: int) -> list[tuple[int, int]]:
    """The canonical game order: pairs (i, j), i < j, lexicographically."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class TableIntegrityError(ValueError):
    """A frequency table (or table file) violates one of its invariants."""


@dataclass(frozen=True)
class TournamentMatrix:
    """Full win/loss outcome of one labeled tournament.

    Rows are stored packed: bit j of ``rows[i]`` is 1 iff player i beats
    player j.  Construction validates the matrix invariants
    (no self-games, exactly one winner per pair), so instances are
    immutable, always-consistent values that can be shared freely.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"player count must be >= 1, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} has bits beyond player {self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"player {i} plays itself")
        if self.n <= 64:
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1):
                        raise ValueError(f"pair ({i}, {j}) needs exactly one winner")
        else:
            # bit-matrix check; the pairwise loop is too slow at this size
            w = self.to_bit_array()
            if not np.array_equal(w + w.T, 1 - np.eye(self.n, dtype=np.uint8)):
                raise ValueError("matrix is not antisymmetric")

    @classmethod
    def from_matrix(cls, wins: Iterable[Iterable[int]]) -> "TournamentMatrix":
        """Build from an explicit 0/1 matrix (list of rows)."""
        rows = []
        for row in wins:
            acc = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"matrix entries must be 0 or 1, got {v!r}")
                acc |= v << j
            rows.append(acc)
        return cls(len(rows), tuple(rows))

    @classmethod
    def from_counter(cls, n: int, counter: int) -> "TournamentMatrix":
        """Decode game outcomes from the bits of a single integer.

        Bit g of ``counter`` is the outcome of the g-th pair in the
        canonical order; bit 1 means the lower-indexed player wins.
        Counters 0 .. 2^C(n,2)-1 enumerate every labeled tournament once.
        """
        games = game_count(n)
        if not 0 <= counter < 1 << games:
            raise ValueError(f"counter out of range for n={n}")
        rows = [0] * n
        for g, (i, j) in enumerate(pair_order(n)):
            if counter >> g & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        return cls(n, tuple(rows))

    def wins(self, i: int, j: int) -> int:
        """1 iff player i beats player j (0 on the diagonal)."""
        return self.rows[i] >> j & 1

    def to_bit_array(self) -> np.ndarray:
        """The full n x n win matrix as a uint8 array."""
        nbytes = (self.n + 7) // 8
        raw = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(self.n, nbytes),
                             axis=1, bitorder="little")
        return bits[:, : self.n]

    def complement(self) -> "TournamentMatrix":
        """The tournament with every game result reversed."""
        full = (1 << self.n) - 1
        rows = tuple(~r & full & ~(1 << i) for i, r in enumerate(self.rows))
        return TournamentMatrix(self.n, rows)


def scores(t: TournamentMatrix) -> ScoreMultiset:
    """Sorted score multiset of a tournament (row sums of the win matrix)."""
    return tuple(sorted(r.bit_count() for r in t.rows))


def unique_max(s: ScoreMultiset) -> bool:
    """True iff the largest value occurs exactly once in the multiset."""
    if not s:
        raise ValueError("empty score multiset")
    return len(s) == 1 or s[-1] > s[-2]


def complement(s: ScoreMultiset) -> ScoreMultiset:
    """Score multiset of the reversed tournament: each score x becomes n-1-x."""
    n = len(s)
    return tuple(sorted(n - 1 - x for x in s))


def landau_valid(s: ScoreMultiset) -> bool:
    """Realizability test for a complete tournament's score multiset.

    A nondecreasing sequence is the score multiset of some tournament iff
    every prefix of length k sums to at least k(k-1)/2 and the total equals
    n(n-1)/2 (the k lowest-scoring players must at least play out their own
    internal games).
    """
    n = len(s)
    prefix = 0
    for k, x in enumerate(s, start=1):
        prefix += x
        if prefix < k * (k - 1) // 2:
            return False
    return prefix == n * (n - 1) // 2


def _is_canonical_key(key: ScoreMultiset, n: int) -> str | None:
    """Return a description of the violated key invariant, or None if fine."""
    if len(key) != n:
        return f"key {key} has length {len(key)}, expected {n}"
    if any(not 0 <= x <= n - 1 for x in key):
        return f"key {key} has a score outside [0, {n - 1}]"
    if any(a > b for a, b in zip(key, key[1:])):
        return f"key {key} is not sorted nondecreasing"
    if not landau_valid(key):
        return f"key {key} is not a realizable score multiset"
    return None


@dataclass
class FrequencyTable:
    """Counts of labeled tournaments per score multiset.

    ``entries`` maps each canonical (sorted) score multiset on n players to
    the number of labeled tournaments realizing it.  A complete, consistent
    table satisfies:

    * every key is a realizable complete score multiset for n players,
    * the counts sum to 2^C(n,2),
    * reversing all games is a bijection, so count(S) = count(complement(S)).

    Treat instances as immutable after construction.
    """

    n: int
    entries: dict[ScoreMultiset, int] = field(default_factory=dict)

    def validate(self) -> None:
        """Raise TableIntegrityError naming the first violated invariant."""
        if self.n < 1:
            raise TableIntegrityError(f"player count must be >= 1, got {self.n}")
        total = 0
        for key, count in self.entries.items():
            problem = _is_canonical_key(key, self.n)
            if problem is not None:
                raise TableIntegrityError(problem)
            if count < 0:
                raise TableIntegrityError(f"negative count for key {key}")
            total += count
        expected = 1 << game_count(self.n)
        if total != expected:
            raise TableIntegrityError(
                f"counts sum to {total}, expected 2^{game_count(self.n)} = {expected}"
            )
        for key, count in self.entries.items():
            mirror = complement(key)
            if self.entries.get(mirror, 0) != count:
                raise TableIntegrityError(
                    f"complement symmetry broken: count{key} = {count}, "
                    f"count{mirror} = {self.entries.get(mirror, 0)}"
                )

    def total(self) -> int:
        return sum(self.entries.values())

    def sorted_items(self) -> Iterator[tuple[ScoreMultiset, int]]:
        """Entries in lexicographic key order (the canonical serialization order)."""
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencyTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries
