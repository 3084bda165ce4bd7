"""Test lattices: concept lattices of random contexts and exhaustive small enumeration."""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import permutations, product

from .errors import NotALattice, TooLarge
from .lattice import LABEL_POOL, FiniteLattice, Poset, lattice_from_leq, ordinal_sum

MAX_CONTEXT = 12
DEFAULT_CONCEPT_CAP = 64
MAX_EXHAUSTIVE = 8


@dataclass(frozen=True)
class FormalContext:
    objects: int
    attributes: int
    incidence: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(bool(v) for v in row) for row in self.incidence)
        object.__setattr__(self, "incidence", rows)
        if len(rows) != self.objects or any(len(r) != self.attributes for r in rows):
            raise ValueError("incidence shape does not match objects x attributes")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[bool | int]], attributes: int | None = None) -> "FormalContext":
        m = attributes if attributes is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), m, tuple(tuple(bool(v) for v in r) for r in rows))

    def row_masks(self) -> list[int]:
        return [sum(1 << j for j, v in enumerate(row) if v) for row in self.incidence]


def concept_lattice(ctx: FormalContext, cap: int = DEFAULT_CONCEPT_CAP) -> FiniteLattice:
    """Concepts ordered by extent inclusion, i.e. by reverse intent inclusion.

    Intents are the intersections of object rows together with the full
    attribute set; element 0 is always the bottom concept.
    """
    if ctx.objects > MAX_CONTEXT or ctx.attributes > MAX_CONTEXT:
        raise TooLarge(f"context {ctx.objects}x{ctx.attributes} exceeds {MAX_CONTEXT}x{MAX_CONTEXT}")
    full = (1 << ctx.attributes) - 1
    intents = {full}
    for row in ctx.row_masks():
        intents |= {row & b for b in intents}
        if len(intents) > cap:
            raise TooLarge(f"more than {cap} concepts")
    # bottom concept has the largest intent
    order = sorted(intents, key=lambda b: (-bin(b).count("1"), b))
    n = len(order)
    if n > len(LABEL_POOL):
        raise TooLarge(f"{n} concepts exceed the label pool")
    up = []
    for b in order:
        mask = 0
        for j, c in enumerate(order):
            if c & b == c:
                mask |= 1 << j
        up.append(mask)
    return lattice_from_leq(LABEL_POOL[:n], up)


def random_context(rng: random.Random, g: int, m: int, density: float) -> FormalContext:
    rows = tuple(tuple(rng.random() < density for _ in range(m)) for _ in range(g))
    return FormalContext(g, m, rows)


def random_lattice(n_hint: int, seed: int, attempts: int = 200) -> FiniteLattice:
    """Concept lattice of a random context, aiming for ``n_hint`` elements.

    Deterministic per seed.  If no attempt hits the size exactly, the closest
    one seen is returned.
    """
    if not 1 <= n_hint <= 16:
        raise ValueError("n_hint must be in 1..16")
    rng = random.Random(seed)
    best: FiniteLattice | None = None
    for _ in range(attempts):
        g = rng.randint(1, max(1, min(MAX_CONTEXT, n_hint - 1)))
        m = rng.randint(1, max(1, min(MAX_CONTEXT, n_hint - 1)))
        density = rng.uniform(0.2, 0.8)
        try:
            lat = concept_lattice(random_context(rng, g, m, density), cap=4 * n_hint)
        except TooLarge:
            continue
        if best is None or abs(lat.n - n_hint) < abs(best.n - n_hint):
            best = lat
        if lat.n == n_hint:
            break
    assert best is not None
    return best


def random_stacked_lattice(n_hint: int, seed: int) -> FiniteLattice:
    """Ordinal sum of small random concept lattices.

    Stacking keeps many comparable pairs, so these lattices tend to have far
    more sublattices than a single random concept lattice of the same size.
    """
    rng = random.Random(seed)
    lat = random_lattice(rng.randint(1, min(n_hint, 8)), rng.getrandbits(32))
    while lat.n < n_hint:
        part = random_lattice(rng.randint(1, min(8, n_hint - lat.n)), rng.getrandbits(32))
        if lat.n + part.n > len(LABEL_POOL):
            break
        lat = ordinal_sum(lat, part)
    return lat


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int
    max_count: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.max_n <= MAX_EXHAUSTIVE:
            raise ValueError(f"exhaustive enumeration supports max_n in 1..{MAX_EXHAUSTIVE}")


def _levels(up: Sequence[int], down: Sequence[int]) -> list[int]:
    n = len(up)
    level = [0] * n
    for i in sorted(range(n), key=lambda i: bin(down[i]).count("1")):
        below = down[i] & ~(1 << i)
        level[i] = 1 + max((level[j] for j in range(n) if below >> j & 1), default=-1)
    return level


def canonical_form(poset: Poset) -> tuple[int, ...]:
    """Lexicographically least ``up`` vector over invariant-respecting relabelings.

    Elements are first sorted by ``(level, |down-set|, |up-set|)``; only
    permutations inside each class of equal keys are tried.
    """
    up, down, n = poset.up, poset.down, poset.n
    level = _levels(up, down)
    key = [(level[i], bin(down[i]).count("1"), bin(up[i]).count("1")) for i in range(n)]
    ordered = sorted(range(n), key=lambda i: key[i])
    classes: list[list[int]] = []
    for i in ordered:
        if classes and key[classes[-1][0]] == key[i]:
            classes[-1].append(i)
        else:
            classes.append([i])
    best: tuple[int, ...] | None = None
    for choice in product(*(permutations(c) for c in classes)):
        perm = [i for block in choice for i in block]  # new position -> old index
        pos = {old: new for new, old in enumerate(perm)}
        form = tuple(
            sum(1 << pos[j] for j in range(n) if up[old] >> j & 1) for old in perm
        )
        if best is None or form < best:
            best = form
    assert best is not None
    return best


def _natural_posets(k: int) -> Iterator[list[int]]:
    """Down-set masks of naturally labeled posets on ``k`` elements.

    Element ``j``'s strict down-set is an order ideal of ``0..j-1``; every
    poset arises this way from at least one linear extension.
    """
    def extend(downs: list[int]) -> Iterator[list[int]]:
        j = len(downs)
        if j == k:
            yield downs
            return
        for s in range(1 << j):
            # s must be down-closed
            if all(not s >> i & 1 or downs[i] & ~(1 << i) & ~s == 0 for i in range(j)):
                yield from extend(downs + [s | 1 << j])
    yield from extend([])


def enumerate_lattices(budget: EnumerationBudget) -> Iterator[FiniteLattice]:
    """One representative per isomorphism class, by increasing size.

    Lattices with at least two elements are ``0 + P + 1`` for a poset ``P``;
    the naturally labeled posets are bounded, filtered for lattice-hood and
    deduplicated by :func:`canonical_form`.
    """
    count = 0
    for n in range(1, budget.max_n + 1):
        for lat in lattices_of_size(n):
            if budget.max_count is not None and count >= budget.max_count:
                return
            count += 1
            yield lat


def lattices_of_size(n: int) -> list[FiniteLattice]:
    if not 1 <= n <= MAX_EXHAUSTIVE:
        raise ValueError(f"n must be in 1..{MAX_EXHAUSTIVE}")
    labels = LABEL_POOL[:n]
    if n == 1:
        return [lattice_from_leq(labels, [1])]
    k = n - 2
    full = (1 << n) - 1
    seen: set[tuple[int, ...]] = set()
    out = []
    for downs in _natural_posets(k):
        # bottom is 0, P occupies 1..k, top is n-1
        up = [full]
        inner_up = [0] * k
        for j, d in enumerate(downs):
            for i in range(k):
                if d >> i & 1:
                    inner_up[i] |= 1 << j
        up += [(m << 1) | 1 << (n - 1) for m in inner_up]
        up.append(1 << (n - 1))
        try:
            lat = lattice_from_leq(labels, up)
        except NotALattice:
            continue
        form = canonical_form(lat)
        if form in seen:
            continue
        seen.add(form)
        out.append(lattice_from_leq(labels, form))
    return out
