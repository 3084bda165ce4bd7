"""Finite binary partial algebras and exact subuniverse counting.

A partial algebra is a universe of single-character labels plus a list of
constraints ``x o y = z``.  A subset is a subuniverse when every constraint
whose arguments lie in the subset also has its result in the subset.  Subsets
are machine words: bit ``i`` stands for ``universe.labels[i]``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _kernels
from .dyadic import DyadicValue
from .errors import EmptySubset, UniverseTooLarge

RESERVED = frozenset("=();,\\% \t")
MAX_UNIVERSE = 64
MAX_COUNT = 40
MAX_ENUMERATE = 24
DEFAULT_OPS = "+*"


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_UNIVERSE:
            raise ValueError(f"universe size must be in 1..{MAX_UNIVERSE}, got {len(labels)}")
        for ch in labels:
            if len(ch) != 1 or not ch.isprintable() or ch in RESERVED:
                raise ValueError(f"invalid element label {ch!r}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {''.join(labels)!r}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {ch: i for i, ch in enumerate(self.labels)}

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for ch in labels:
            mask |= 1 << self.index[ch]
        return mask

    def labels_of(self, mask: int) -> str:
        return "".join(ch for i, ch in enumerate(self.labels) if mask >> i & 1)

    def __str__(self) -> str:
        return "".join(self.labels)


class Constraint(NamedTuple):
    """``x op y = z`` with element indices."""

    x: int
    op: str
    y: int
    z: int


@dataclass(frozen=True)
class PartialAlgebra:
    universe: Universe
    constraints: tuple[Constraint, ...] = ()
    op_symbols: str = DEFAULT_OPS

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(Constraint(*c) for c in self.constraints))
        n = self.universe.n
        for c in self.constraints:
            if not (0 <= c.x < n and 0 <= c.y < n and 0 <= c.z < n):
                raise ValueError(f"constraint {c} refers to an element outside 0..{n - 1}")
            if c.op not in self.op_symbols:
                raise ValueError(f"operation symbol {c.op!r} not among {self.op_symbols!r}")

    @classmethod
    def from_strings(
        cls, labels: str | Sequence[str], constraints: Iterable[str] = (), op_symbols: str = DEFAULT_OPS
    ) -> "PartialAlgebra":
        """Build from ``"abc"`` and tokens like ``"a+b=c"``."""
        universe = Universe(tuple(labels))
        idx = universe.index
        parsed = []
        for tok in constraints:
            if len(tok) != 5 or tok[3] != "=":
                raise ValueError(f"malformed constraint {tok!r}")
            parsed.append(Constraint(idx[tok[0]], tok[1], idx[tok[2]], idx[tok[4]]))
        return cls(universe, tuple(parsed), op_symbols)

    @property
    def n(self) -> int:
        return self.universe.n

    def constraint_str(self, c: Constraint) -> str:
        lab = self.universe.labels
        return f"{lab[c.x]}{c.op}{lab[c.y]}={lab[c.z]}"

    @cached_property
    def compiled(self) -> tuple[np.ndarray, np.ndarray]:
        """Constraint groups as ``(argument mask, required result mask)`` arrays.

        Constraints sharing an argument pair are merged; those whose result is
        one of their arguments can never fail and are dropped.
        """
        groups: dict[int, int] = {}
        for c in self.constraints:
            if c.z in (c.x, c.y):
                continue
            p = (1 << c.x) | (1 << c.y)
            groups[p] = groups.get(p, 0) | (1 << c.z)
        # fewer argument bits first: cheaper to hit, fail earliest
        items = sorted(groups.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0]))
        pairs = np.array([p for p, _ in items], dtype=np.uint64)
        results = np.array([r for _, r in items], dtype=np.uint64)
        return pairs, results


def _check_mask(alg: PartialAlgebra, s: int) -> None:
    if s < 0 or s >> alg.n:
        raise ValueError(f"mask {s:#x} has bits outside the {alg.n}-element universe")


def is_closed(alg: PartialAlgebra, s: int) -> bool:
    """True iff subset ``s`` contains ``z`` whenever it contains ``x`` and ``y``."""
    _check_mask(alg, s)
    for c in alg.constraints:
        if s >> c.x & 1 and s >> c.y & 1 and not s >> c.z & 1:
            return False
    return True


def count_range(alg: PartialAlgebra, lo: int, hi: int) -> int:
    """Number of closed masks ``s`` with ``lo <= s < hi``."""
    pairs, results = alg.compiled
    return int(_kernels.count_closed(pairs, results, lo, hi))


def split_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    total = 1 << n
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def count_subuniverses(alg: PartialAlgebra, workers: int = 1, strategy: str = "flat") -> int:
    """|Sub(alg)|, the empty set included.

    ``strategy="flat"`` scans all ``2**n`` masks with the selected kernel,
    optionally split over ``workers`` threads; ``"dfs"`` is an independent
    depth-first search with early pruning, in plain Python.
    """
    if alg.n > MAX_COUNT:
        raise UniverseTooLarge(alg.n, MAX_COUNT)
    if strategy == "dfs":
        return _count_dfs(alg)
    if strategy != "flat":
        raise ValueError(f"unknown strategy {strategy!r}")
    if workers <= 1 or alg.n < 16:
        return count_range(alg, 0, 1 << alg.n)
    ranges = split_ranges(alg.n, workers * 4)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda r: count_range(alg, *r), ranges))


def _count_dfs(alg: PartialAlgebra) -> int:
    """Decide elements in index order, pruning as soon as a constraint is violated.

    A constraint is checked at the step deciding its highest-index element.
    """
    n = alg.n
    by_elem: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for c in alg.constraints:
        if c.z in (c.x, c.y):
            continue
        p, z = 1 << c.x | 1 << c.y, 1 << c.z
        by_elem[max(c.x, c.y, c.z)].append((p, z))

    def go(i: int, inc: int) -> int:
        if i == n:
            return 1
        total = 0
        for s in (inc, inc | 1 << i):
            if all(s & p != p or s & z for p, z in by_elem[i]):
                total += go(i + 1, s)
        return total

    return go(0, 0)


def sigma(alg: PartialAlgebra, subtrahend: int = 8, workers: int = 1) -> DyadicValue:
    """|Sub(alg)| * 2**(subtrahend - n), exactly."""
    return DyadicValue(count_subuniverses(alg, workers=workers), subtrahend - alg.n)


def enumerate_subuniverses(alg: PartialAlgebra) -> list[int]:
    """All closed masks in ascending order."""
    if alg.n > MAX_ENUMERATE:
        raise UniverseTooLarge(alg.n, MAX_ENUMERATE)
    pairs, results = alg.compiled
    return [int(s) for s in _kernels.closed_masks(pairs, results, 0, 1 << alg.n)]


def induced_weak_subalgebra(alg: PartialAlgebra, subset: int) -> PartialAlgebra:
    """Restrict to ``subset``, keeping exactly the constraints lying inside it."""
    _check_mask(alg, subset)
    if subset == 0:
        raise EmptySubset("weak subalgebra needs a nonempty base set")
    keep = [i for i in range(alg.n) if subset >> i & 1]
    new_index = {old: new for new, old in enumerate(keep)}
    constraints = tuple(
        Constraint(new_index[c.x], c.op, new_index[c.y], new_index[c.z])
        for c in alg.constraints
        if c.x in new_index and c.y in new_index and c.z in new_index
    )
    labels = tuple(alg.universe.labels[i] for i in keep)
    return PartialAlgebra(Universe(labels), constraints, alg.op_symbols)
