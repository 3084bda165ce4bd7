"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from itertools import combinations, permutations, product

from latsub.algebra import PartialAlgebra
from latsub.errors import NotALattice
from latsub.lattice import FiniteLattice, Poset, lattice_from_leq


def brute_count(alg: PartialAlgebra) -> int:
    """Subuniverse count by testing every subset against every raw constraint."""
    total = 0
    for s in range(1 << alg.n):
        if all(not (s >> c.x & 1 and s >> c.y & 1) or s >> c.z & 1 for c in alg.constraints):
            total += 1
    return total


def brute_sublattices(lat: FiniteLattice) -> int:
    """Nonempty subsets closed under the full join and meet tables."""
    n = lat.n
    total = 0
    for s in range(1, 1 << n):
        members = [i for i in range(n) if s >> i & 1]
        if all(
            s >> lat.join[x][y] & 1 and s >> lat.meet[x][y] & 1
            for x, y in combinations(members, 2)
        ):
            total += 1
    return total


def is_comparability_graph(n: int, edges: set[frozenset[int]]) -> bool:
    """Transitive orientability by implication-class decomposition.

    Each round orients one implication class of the remaining graph and
    removes it; a class containing both directions of an edge means no
    transitive orientation exists.  The final orientation is re-checked.
    """
    remaining = set(edges)
    oriented: set[tuple[int, int]] = set()
    while remaining:
        adj = {v: set() for v in range(n)}
        for e in remaining:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        a, b = tuple(next(iter(remaining)))
        cls = {(a, b)}
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            forced = [(x, c) for c in adj[x] if c != y and c not in adj[y]]
            forced += [(c, y) for c in adj[y] if c != x and c not in adj[x]]
            for arc in forced:
                if arc not in cls:
                    cls.add(arc)
                    stack.append(arc)
        if any((y, x) in cls for x, y in cls):
            return False
        oriented |= cls
        remaining -= {frozenset(arc) for arc in cls}
    for (x, y), (y2, z) in product(oriented, repeat=2):
        if y == y2 and x != z and (x, z) not in oriented:
            raise AssertionError("decomposition produced a non-transitive orientation")
    return True


def dimension_at_most_two(poset: Poset) -> bool:
    n = poset.n
    incomparable = {
        frozenset((i, j)) for i, j in combinations(range(n), 2) if not poset.comparable(i, j)
    }
    return is_comparability_graph(n, incomparable)


def planar_by_dimension(lat: FiniteLattice) -> bool:
    """A finite lattice is planar exactly when its order dimension is at most 2."""
    return dimension_at_most_two(lat)


def brute_lattice_classes(n: int) -> set[tuple[int, ...]]:
    """Isomorphism classes of n-element lattices from all order relations.

    Every antisymmetric choice per pair is tried, transitivity and lattice-hood
    are checked, and classes are keyed by the least ``up`` vector over all
    ``n!`` relabelings.
    """
    pairs = list(combinations(range(n), 2))
    classes = set()
    for choice in product((0, 1, 2), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                up[i] |= 1 << j
            elif c == 2:
                up[j] |= 1 << i
        if any(up[j] & ~up[i] for i in range(n) for j in range(n) if up[i] >> j & 1):
            continue  # not transitive
        try:
            lattice_from_leq([str(k) for k in range(n)], up)
        except NotALattice:
            continue
        classes.add(full_canonical(up))
    return classes


def full_canonical(up: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Least ``up`` vector over all relabelings."""
    n = len(up)
    best = None
    for perm in permutations(range(n)):
        form = [0] * n
        for i in range(n):
            form[perm[i]] = sum(1 << perm[j] for j in range(n) if up[i] >> j & 1)
        form_t = tuple(form)
        if best is None or form_t < best:
            best = form_t
    return best
