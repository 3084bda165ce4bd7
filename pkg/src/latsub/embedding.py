"""Order-embeddings between finite posets.

The search assigns one source element at a time, always the one with the
fewest remaining candidates.  Each candidate set is a bit mask over the
target, narrowed after every assignment to the targets that keep all
comparabilities and incomparabilities so far.  An exhausted search is a
proof that no embedding exists.
"""

from __future__ import annotations

from itertools import combinations
from typing import Union

from .lattice import FiniteLattice, Poset, PosetSpec, poset_from_covers

Embedding = tuple[int, ...]
"""``phi[i]`` is the target index of source element ``i``."""

PosetLike = Union[Poset, PosetSpec]


def as_poset(x: PosetLike) -> Poset:
    return poset_from_covers(x) if isinstance(x, PosetSpec) else x


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subposet(source: PosetLike, target: PosetLike) -> Embedding | None:
    """Find an order-embedding of ``source`` into ``target``, or return None."""
    X, L = as_poset(source), as_poset(target)
    m, n = X.n, L.n
    if m > n:
        return None
    if m == 0:
        return ()
    full = (1 << n) - 1
    lup = [u & ~(1 << t) for t, u in enumerate(L.up)]
    ldown = [d & ~(1 << t) for t, d in enumerate(L.down)]
    lincomp = [full & ~(L.up[t] | L.down[t]) for t in range(n)]
    up_size = [_popcount(u) for u in L.up]
    down_size = [_popcount(d) for d in L.down]

    domains = []
    for x in range(m):
        nu, nd = _popcount(X.up[x]), _popcount(X.down[x])
        dom = 0
        for t in range(n):
            if nu <= up_size[t] and nd <= down_size[t]:
                dom |= 1 << t
        if not dom:
            return None
        domains.append(dom)

    # relation of y to x: 1 if x < y, 2 if y < x, 0 if incomparable
    rel = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(m):
            if x != y:
                rel[x][y] = 1 if X.leq(x, y) else 2 if X.leq(y, x) else 0

    phi = [-1] * m

    def search(doms: list[int], left: int) -> bool:
        if left == 0:
            return True
        x = min((i for i in range(m) if phi[i] < 0), key=lambda i: (_popcount(doms[i]), i))
        cand = doms[x]
        while cand:
            low = cand & -cand
            cand ^= low
            t = low.bit_length() - 1
            narrowed = doms[:]
            ok = True
            for y in range(m):
                if phi[y] >= 0 or y == x:
                    continue
                r = rel[x][y]
                allowed = lup[t] if r == 1 else ldown[t] if r == 2 else lincomp[t]
                narrowed[y] &= allowed & ~low
                if not narrowed[y]:
                    ok = False
                    break
            if not ok:
                continue
            phi[x] = t
            if search(narrowed, left - 1):
                return True
            phi[x] = -1
        return False

    if search(domains, m):
        return tuple(phi)
    return None


def is_order_embedding(phi: Embedding, source: PosetLike, target: PosetLike) -> bool:
    """Pointwise check of injectivity and ``x <= y iff phi(x) <= phi(y)``."""
    X, L = as_poset(source), as_poset(target)
    if len(phi) != X.n or len(set(phi)) != X.n or any(not 0 <= t < L.n for t in phi):
        return False
    return all(
        X.leq(x, y) == L.leq(phi[x], phi[y]) for x in range(X.n) for y in range(X.n)
    )


def brute_force_subposet(source: PosetLike, target: PosetLike) -> Embedding | None:
    """Reference search over all injections; only for small inputs."""
    from itertools import permutations

    X, L = as_poset(source), as_poset(target)
    for phi in permutations(range(L.n), X.n):
        if is_order_embedding(phi, X, L):
            return tuple(phi)
    return None


def isomorphic(a: PosetLike, b: PosetLike) -> Embedding | None:
    """An isomorphism ``a -> b`` if one exists.

    Between equal-size posets an order-embedding is already bijective, so one
    direction suffices; the reverse search is kept as a cross-check.
    """
    A, B = as_poset(a), as_poset(b)
    if A.n != B.n:
        return None
    phi = is_subposet(A, B)
    if phi is None:
        return None
    if is_subposet(B, A) is None:  # pragma: no cover - cannot happen for sound search
        raise AssertionError("one-way embedding between equal-size posets")
    return phi


def is_two_embedding(phi: Embedding, K: FiniteLattice, L: FiniteLattice) -> bool:
    """Order-embedding that sends joins of cover pairs and meets of cocover pairs to joins and meets."""
    if not is_order_embedding(phi, K, L):
        return False
    for u in range(K.n):
        for v, w in combinations(_members(K.lower_covers[u]), 2):
            if L.join[phi[v]][phi[w]] != phi[u]:
                return False
        for v, w in combinations(_members(K.upper_covers[u]), 2):
            if L.meet[phi[v]][phi[w]] != phi[u]:
                return False
    return True


def is_lattice_embedding(phi: Embedding, K: FiniteLattice, L: FiniteLattice) -> bool:
    if len(phi) != K.n or len(set(phi)) != K.n:
        return False
    return all(
        L.join[phi[x]][phi[y]] == phi[K.join[x][y]] and L.meet[phi[x]][phi[y]] == phi[K.meet[x][y]]
        for x in range(K.n)
        for y in range(x + 1, K.n)
    )


def _members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def antichain_condition(L: FiniteLattice) -> tuple[str, str, str] | None:
    """First 3-antichain whose join is not already the join of two of its members."""
    J = L.join
    for a, b, c in combinations(range(L.n), 3):
        if L.comparable(a, b) or L.comparable(a, c) or L.comparable(b, c):
            continue
        top = J[J[a][b]][c]
        if top not in (J[a][b], J[a][c], J[b][c]):
            return L.labels[a], L.labels[b], L.labels[c]
    return None
