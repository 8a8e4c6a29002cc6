"""Coalitions of agents encoded as bitmasks.

Agents are numbered 1..n everywhere at the API surface; internally bit i-1
of the mask encodes membership of agent i. Node 0 never appears in a
coalition (it is reserved for the supplier node of spanning-tree instances).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, slots=True)
class Coalition:
    """A subset of the agents {1, ..., n}, stored as a bitmask."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("agent count must be nonnegative")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bitmask {self.bits} out of range for n={self.n}")

    @classmethod
    def from_members(cls, members: Iterable[int], n: int) -> "Coalition":
        bits = 0
        for agent in members:
            if not 1 <= agent <= n:
                raise ValueError(f"agent {agent} not in 1..{n}")
            bits |= 1 << (agent - 1)
        return cls(bits, n)

    @classmethod
    def empty(cls, n: int) -> "Coalition":
        return cls(0, n)

    @classmethod
    def grand(cls, n: int) -> "Coalition":
        return cls((1 << n) - 1, n)

    @classmethod
    def singleton(cls, agent: int, n: int) -> "Coalition":
        return cls.from_members([agent], n)

    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if (self.bits >> i) & 1)

    def size(self) -> int:
        return self.bits.bit_count()

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_grand(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def is_proper(self) -> bool:
        """Nonempty and strictly smaller than the grand coalition."""
        return self.bits != 0 and self.bits != (1 << self.n) - 1

    def __contains__(self, agent: int) -> bool:
        return 1 <= agent <= self.n and bool((self.bits >> (agent - 1)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def _check_same_universe(self, other: "Coalition") -> None:
        if self.n != other.n:
            raise ValueError("coalitions over different agent sets")

    def __or__(self, other: "Coalition") -> "Coalition":
        self._check_same_universe(other)
        return Coalition(self.bits | other.bits, self.n)

    def __and__(self, other: "Coalition") -> "Coalition":
        self._check_same_universe(other)
        return Coalition(self.bits & other.bits, self.n)

    def __sub__(self, other: "Coalition") -> "Coalition":
        self._check_same_universe(other)
        return Coalition(self.bits & ~other.bits, self.n)

    def complement(self) -> "Coalition":
        return Coalition(((1 << self.n) - 1) ^ self.bits, self.n)

    def is_subset_of(self, other: "Coalition") -> bool:
        self._check_same_universe(other)
        return self.bits & ~other.bits == 0

    def is_superset_of(self, other: "Coalition") -> bool:
        return other.is_subset_of(self)

    def is_disjoint_from(self, other: "Coalition") -> bool:
        self._check_same_universe(other)
        return self.bits & other.bits == 0

    def with_agent(self, agent: int) -> "Coalition":
        if not 1 <= agent <= self.n:
            raise ValueError(f"agent {agent} not in 1..{self.n}")
        return Coalition(self.bits | (1 << (agent - 1)), self.n)

    def without_agent(self, agent: int) -> "Coalition":
        if not 1 <= agent <= self.n:
            raise ValueError(f"agent {agent} not in 1..{self.n}")
        return Coalition(self.bits & ~(1 << (agent - 1)), self.n)

    def key(self) -> str:
        """Canonical comma-separated member list, e.g. "1,3". Empty set -> ""."""
        return ",".join(str(a) for a in self.members())

    def __str__(self) -> str:
        return "{" + self.key() + "}"


def all_coalitions(n: int) -> Iterator[Coalition]:
    """All 2^n coalitions in ascending bitmask order."""
    for bits in range(1 << n):
        yield Coalition(bits, n)


def nonempty_coalitions(n: int) -> Iterator[Coalition]:
    for bits in range(1, 1 << n):
        yield Coalition(bits, n)


def proper_coalitions(n: int) -> Iterator[Coalition]:
    """Nonempty proper coalitions in ascending bitmask order."""
    for bits in range(1, (1 << n) - 1):
        yield Coalition(bits, n)


def submasks_ascending(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        sub = (sub - mask) & mask
        if sub == 0:
            return
        yield sub


def bits_members(bits: int) -> tuple[int, ...]:
    """1-indexed members of a raw bitmask (hot-loop helper)."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)
