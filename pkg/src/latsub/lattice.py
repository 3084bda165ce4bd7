"""Finite posets and lattices built from cover relations.

Orders are stored as bit masks: ``up[i]`` has bit ``j`` set iff ``i <= j``.
The text format is two lines::

    elements: oabi
    covers: oa ob ai bi

where the token ``xy`` means ``y`` covers ``x``.
"""

from __future__ import annotations

import string
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .algebra import RESERVED, Constraint, PartialAlgebra, Universe, count_subuniverses
from .dyadic import DyadicValue
from .errors import CyclicCovers, NotALattice

LABEL_POOL = string.digits + string.ascii_letters + "!#$&'.:<>?@[]^_`{|}~"


@dataclass(frozen=True)
class PosetSpec:
    """Labels plus ``(lower, upper)`` cover pairs, as read from an edge list."""

    labels: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    @classmethod
    def parse(cls, labels: str, edges: str) -> "PosetSpec":
        pairs = []
        for tok in edges.split():
            if len(tok) != 2:
                raise ValueError(f"cover token {tok!r} must be two labels")
            pairs.append((tok[0], tok[1]))
        return cls(tuple(labels), tuple(pairs))


@dataclass(frozen=True, eq=False)
class Poset:
    labels: tuple[str, ...]
    up: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def universe(self) -> Universe:
        return Universe(self.labels)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, mask in enumerate(self.up):
            for j in _bits(mask):
                down[j] |= 1 << i
        return tuple(down)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.up[i] | self.down[i]) >> j & 1)

    @cached_property
    def upper_covers(self) -> tuple[int, ...]:
        """``upper_covers[i]``: mask of the elements covering ``i``."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            covers = strict
            for j in _bits(strict):
                covers &= ~(self.up[j] & ~(1 << j))
            out.append(covers)
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        low = [0] * self.n
        for i, mask in enumerate(self.upper_covers):
            for j in _bits(mask):
                low[j] |= 1 << i
        return tuple(low)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.upper_covers[i])]

    def spec(self) -> PosetSpec:
        lab = self.labels
        return PosetSpec(self.labels, tuple((lab[i], lab[j]) for i, j in self.cover_pairs()))

    def to_text(self) -> str:
        lab = self.labels
        covers = " ".join(lab[i] + lab[j] for i, j in self.cover_pairs())
        return f"elements: {''.join(lab)}\ncovers: {covers}\n"

    def order_key(self) -> tuple[tuple[int, ...], tuple[str, ...]]:
        return self.up, self.labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return type(self) is type(other) and self.order_key() == other.order_key()

    def __hash__(self) -> int:
        return hash(self.order_key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({''.join(self.labels)!r}, n={self.n})"


@dataclass(frozen=True, eq=False)
class FiniteLattice(Poset):
    join: tuple[tuple[int, ...], ...] = ()
    meet: tuple[tuple[int, ...], ...] = ()

    @property
    def top(self) -> int:
        return self.join[0][0] if self.n == 1 else _only(i for i in range(self.n) if self.down[i] == (1 << self.n) - 1)

    @property
    def bottom(self) -> int:
        return self.meet[0][0] if self.n == 1 else _only(i for i in range(self.n) if self.up[i] == (1 << self.n) - 1)

    def join_label(self, x: str, y: str) -> str:
        idx = self.universe.index
        return self.labels[self.join[idx[x]][idx[y]]]

    def meet_label(self, x: str, y: str) -> str:
        idx = self.universe.index
        return self.labels[self.meet[idx[x]][idx[y]]]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _only(items: Iterable[int]) -> int:
    (x,) = items
    return x


def poset_from_covers(spec: PosetSpec) -> Poset:
    """Reflexive-transitive closure of the cover pairs."""
    labels = tuple(spec.labels)
    universe = Universe(labels)  # validates labels
    idx = universe.index
    n = len(labels)
    succ = [0] * n
    for lo, hi in spec.covers:
        if lo not in idx or hi not in idx:
            raise ValueError(f"cover {lo}{hi} uses an undeclared label")
        if lo == hi:
            raise CyclicCovers(f"{lo} covers itself")
        succ[idx[lo]] |= 1 << idx[hi]

    up: list[int | None] = [None] * n
    state = [0] * n  # 0 new, 1 on stack, 2 done

    def visit(i: int) -> int:
        if state[i] == 2:
            return up[i]  # type: ignore[return-value]
        if state[i] == 1:
            raise CyclicCovers(f"cover relation has a cycle through {labels[i]}")
        state[i] = 1
        mask = 1 << i
        for j in _bits(succ[i]):
            mask |= visit(j)
        state[i] = 2
        up[i] = mask
        return mask

    for i in range(n):
        visit(i)
    return Poset(labels, tuple(up))  # type: ignore[arg-type]


def lattice_from_poset(poset: Poset) -> FiniteLattice:
    """Add join and meet tables; raises :class:`NotALattice` with a witness pair."""
    n, up, down = poset.n, poset.up, poset.down
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            ub = up[x] & up[y]
            lub = next((u for u in _bits(ub) if up[u] & ub == ub), None)
            if lub is None:
                raise NotALattice((poset.labels[x], poset.labels[y]), "join")
            lb = down[x] & down[y]
            glb = next((v for v in _bits(lb) if down[v] & lb == lb), None)
            if glb is None:
                raise NotALattice((poset.labels[x], poset.labels[y]), "meet")
            join[x][y] = join[y][x] = lub
            meet[x][y] = meet[y][x] = glb
    return FiniteLattice(
        poset.labels, poset.up, tuple(map(tuple, join)), tuple(map(tuple, meet))
    )


def lattice_from_covers(spec: PosetSpec | tuple[str, str]) -> FiniteLattice:
    if isinstance(spec, tuple) and len(spec) == 2 and isinstance(spec[0], str):
        spec = PosetSpec.parse(*spec)
    return lattice_from_poset(poset_from_covers(spec))


def lattice_from_leq(labels: Sequence[str], up: Sequence[int]) -> FiniteLattice:
    return lattice_from_poset(Poset(tuple(labels), tuple(up)))


def parse_lattice_text(text: str) -> FiniteLattice:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"expected 'key: value', got {line!r}")
        fields[key.strip().lower()] = value.strip()
    if "elements" not in fields:
        raise ValueError("lattice text needs an 'elements:' line")
    labels = "".join(fields["elements"].split())
    return lattice_from_covers(PosetSpec.parse(labels, fields.get("covers", "")))


def chain(n: int, labels: str | None = None) -> FiniteLattice:
    labels = labels or LABEL_POOL[:n]
    return lattice_from_covers(
        PosetSpec(tuple(labels), tuple((labels[k], labels[k + 1]) for k in range(n - 1)))
    )


def full_algebra(lat: FiniteLattice, include_comparable: bool = False) -> PartialAlgebra:
    """Join ``+`` and meet ``*`` as constraints on every incomparable pair."""
    cons = []
    for x in range(lat.n):
        for y in range(x + 1, lat.n):
            if include_comparable or not lat.comparable(x, y):
                cons.append(Constraint(x, "+", y, lat.join[x][y]))
                cons.append(Constraint(x, "*", y, lat.meet[x][y]))
    return PartialAlgebra(lat.universe, tuple(cons), "+*")


def count_sublattices(lat: FiniteLattice) -> int:
    return count_subuniverses(full_algebra(lat)) - 1


def lattice_sigma(lat: FiniteLattice, subtrahend: int = 8) -> DyadicValue:
    return DyadicValue(count_subuniverses(full_algebra(lat)), subtrahend - lat.n)


def dual(lat: FiniteLattice) -> FiniteLattice:
    return FiniteLattice(lat.labels, lat.down, lat.meet, lat.join)


def relabel(lat: FiniteLattice, labels: Sequence[str]) -> FiniteLattice:
    if len(labels) != lat.n:
        raise ValueError("relabel needs one label per element")
    return FiniteLattice(tuple(labels), lat.up, lat.join, lat.meet)


def fresh_labels(count: int, avoid: Iterable[str]) -> str:
    taken = set(avoid) | RESERVED | set("+*")
    pool = [c for c in LABEL_POOL if c not in taken]
    if len(pool) < count:
        raise ValueError("ran out of single-character labels")
    return "".join(pool[:count])


def ordinal_sum(lower: FiniteLattice, upper: FiniteLattice) -> FiniteLattice:
    """Every element of ``lower`` below every element of ``upper``.

    Clashing labels in ``upper`` are replaced by fresh ones.
    """
    if set(lower.labels) & set(upper.labels):
        upper = relabel(upper, fresh_labels(upper.n, lower.labels))
    m = lower.n
    all_upper = ((1 << upper.n) - 1) << m
    up = [mask | all_upper for mask in lower.up] + [mask << m for mask in upper.up]
    return lattice_from_leq(lower.labels + upper.labels, up)


def is_lattice_table_valid(lat: FiniteLattice) -> bool:
    """Commutativity, associativity and absorption of the two tables, checked exhaustively."""
    J, M, n = lat.join, lat.meet, lat.n
    for x in range(n):
        if J[x][x] != x or M[x][x] != x:
            return False
        for y in range(n):
            if J[x][y] != J[y][x] or M[x][y] != M[y][x]:
                return False
            if J[x][M[x][y]] != x or M[x][J[x][y]] != x:
                return False
            if lat.leq(x, y) != (J[x][y] == y):
                return False
            for z in range(n):
                if J[J[x][y]][z] != J[x][J[y][z]] or M[M[x][y]][z] != M[x][M[y][z]]:
                    return False
    return True
