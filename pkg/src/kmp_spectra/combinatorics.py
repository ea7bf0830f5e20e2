"""Partitions, symmetric-group characters, irrep dimensions and multiset indexing.

Everything here is exact integer/rational arithmetic over small groups
(Sym(k) with k <= 12 at most); memo tables are plain ``functools`` caches,
which are safe to share because the cached values are immutable.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

MAX_PARTITION_SIZE = 12


@dataclass(frozen=True, order=True)
class Partition:
    """An integer partition stored as a non-increasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        """Build from parts in any order (zeros dropped)."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        )

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class CycleType:
    """Cycle structure of a conjugacy class of Sym(k), with its class size."""

    partition: Partition
    class_size: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_size", class_size(self.partition))

    @classmethod
    def of_permutation(cls, perm: Sequence[int]) -> "CycleType":
        return cls(cycle_partition(perm))

    @property
    def k(self) -> int:
        return self.partition.size

    @property
    def sign(self) -> int:
        # a cycle of length L is a product of L - 1 transpositions
        return -1 if (self.k - self.partition.length) % 2 else 1

    def __str__(self) -> str:
        return str(self.partition)


def partitions_of(k: int) -> list[Partition]:
    """All partitions of ``k`` in reverse-lexicographic order: (k) first, (1^k) last."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k > MAX_PARTITION_SIZE:
        raise ValueError(f"k={k} exceeds the partition guard {MAX_PARTITION_SIZE}")
    return [Partition(p) for p in _partitions(k, k)]


@lru_cache(maxsize=None)
def _partitions(k: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def cycle_partition(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given in one-line notation on 0..k-1."""
    k = len(perm)
    seen = [False] * k
    lengths = []
    for start in range(k):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return Partition.from_parts(lengths)


def class_size(mu: Partition) -> int:
    """Number of permutations of Sym(|mu|) with cycle type mu (k! / centralizer order)."""
    centralizer = 1
    for part, mult in Counter(mu.parts).items():
        centralizer *= part**mult * math.factorial(mult)
    return math.factorial(mu.size) // centralizer


def cycle_types(k: int) -> list[CycleType]:
    return [CycleType(p) for p in partitions_of(k)]


def hook_lengths(nu: Partition) -> list[int]:
    conj = nu.conjugate().parts
    return [
        (row_len - j - 1) + (conj[j] - i - 1) + 1
        for i, row_len in enumerate(nu.parts)
        for j in range(row_len)
    ]


def sym_irrep_dim(nu: Partition) -> int:
    """Dimension of the Sym(|nu|)-irrep pi_nu (hook-length formula)."""
    return math.factorial(nu.size) // math.prod(hook_lengths(nu))


def unitary_irrep_dim_polynomial_case(nu: Partition, d: int) -> int:
    """Dimension of the polynomial U(d)-irrep with highest weight nu.

    Hook-content formula; this is s_nu(1, ..., 1) on d variables and vanishes
    when nu has more than d rows.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if nu.length > d:
        return 0
    num = 1
    for i, row_len in enumerate(nu.parts):
        for j in range(row_len):
            num *= d + j - i
    return num // math.prod(hook_lengths(nu))


def sym_character(nu: Partition, mu: Partition | CycleType) -> int:
    """chi_nu evaluated on the class with cycle type mu (Murnaghan-Nakayama)."""
    if isinstance(mu, CycleType):
        mu = mu.partition
    if nu.size != mu.size:
        raise ValueError(f"size mismatch: |nu|={nu.size}, |mu|={mu.size}")
    return _mn(nu.parts, mu.parts)


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not shape else 0
    r, rest = cycles[0], cycles[1:]
    total = 0
    for smaller, height in _remove_border_strips(shape, r):
        total += (-1) ** height * _mn(smaller, rest)
    return total


def _remove_border_strips(shape: tuple[int, ...], r: int) -> list[tuple[tuple[int, ...], int]]:
    """All (shape minus an r-border-strip, leg length) pairs.

    Uses the beta-set picture: removing an r-strip moves one bead from
    position b to b - r; the leg length counts beads jumped over.
    """
    length = len(shape)
    beta = [shape[i] + (length - 1 - i) for i in range(length)]
    beads = set(beta)
    out = []
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        height = sum(1 for x in beta if target < x < b)
        new_beta = sorted((target if x == b else x for x in beta), reverse=True)
        parts = [new_beta[i] - (length - 1 - i) for i in range(length)]
        out.append((tuple(p for p in parts if p > 0), height))
    return out


# --- multisets ---------------------------------------------------------------


def multichoose(n: int, k: int) -> int:
    """<<n, k>> = binom(n + k - 1, k), the number of k-multisets on n points."""
    if n == 0:
        return 1 if k == 0 else 0
    return math.comb(n + k - 1, k)


class MultisetSpace:
    """Ordered basis of k-multisets on {0, ..., n-1}.

    Multisets are sorted tuples.  The order is colexicographic: compare the
    largest entries first, so every multiset of {0..m-1} precedes any
    multiset containing m.
    """

    def __init__(self, n: int, k: int):
        if n < 1 or k < 0:
            raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
        self.n = n
        self.k = k
        self.dimension = multichoose(n, k)
        self._states: tuple[tuple[int, ...], ...] | None = None
        self._index: dict[tuple[int, ...], int] | None = None

    @property
    def states(self) -> tuple[tuple[int, ...], ...]:
        if self._states is None:
            states = itertools.combinations_with_replacement(range(self.n), self.k)
            self._states = tuple(sorted(states, key=lambda m: m[::-1]))
        return self._states

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        if self._index is None:
            self._index = {m: i for i, m in enumerate(self.states)}
        return self._index

    def rank(self, m: Sequence[int]) -> int:
        """Colex rank: sum over positions t of <<m_t, t + 1>>."""
        m = tuple(m)
        self._check(m)
        return sum(multichoose(x, t + 1) for t, x in enumerate(m))

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < self.dimension:
            raise ValueError(f"rank {r} out of range [0, {self.dimension})")
        out = []
        for t in range(self.k, 0, -1):
            x = 0
            while multichoose(x + 1, t) <= r:
                x += 1
            out.append(x)
            r -= multichoose(x, t)
        return tuple(reversed(out))

    def _check(self, m: tuple[int, ...]) -> None:
        if len(m) != self.k:
            raise ValueError(f"expected a {self.k}-multiset, got {m}")
        if any(x < 0 or x >= self.n for x in m):
            raise ValueError(f"entries of {m} outside [0, {self.n})")
        if any(m[i] > m[i + 1] for i in range(len(m) - 1)):
            raise ValueError(f"multiset {m} is not sorted")

    def __len__(self) -> int:
        return self.dimension

    def __repr__(self) -> str:
        return f"MultisetSpace(n={self.n}, k={self.k})"


def multiplicity(m: Sequence[int], x: int) -> int:
    return sum(1 for y in m if y == x)


def arrangements(m: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct orderings of a multiset (there are c_I of them)."""
    return sorted(set(itertools.permutations(m)))


def arrangement_count(m: Sequence[int]) -> int:
    """Multinomial count c_I = k! / prod(multiplicities!)."""
    out = math.factorial(len(m))
    for mult in Counter(m).values():
        out //= math.factorial(mult)
    return out


# --- distinct tuples ----------------------------------------------------------


class TupleSpace:
    """Ordered basis of k-tuples of distinct elements of {0, ..., n-1}."""

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        self.n = n
        self.k = k
        self.states = tuple(itertools.permutations(range(n), k))
        self.index = {t: i for i, t in enumerate(self.states)}
        self.dimension = len(self.states)

    def rank(self, t: Sequence[int]) -> int:
        return self.index[tuple(t)]

    def unrank(self, r: int) -> tuple[int, ...]:
        return self.states[r]

    def __len__(self) -> int:
        return self.dimension

    def __repr__(self) -> str:
        return f"TupleSpace(n={self.n}, k={self.k})"


@lru_cache(maxsize=None)
def permutations_of(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(k)))
