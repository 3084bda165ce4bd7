"""Time the compiled and numpy counting kernels on random partial algebras.

    python benchmarks/bench_count.py --sizes 16 20 24 --repeat 3
"""

from __future__ import annotations

import argparse
import random
import time

from latsub import _kernels
from latsub.algebra import Constraint, PartialAlgebra, Universe


def random_algebra(n: int, density: float, seed: int) -> PartialAlgebra:
    rng = random.Random(seed)
    m = max(1, int(density * n * n))
    cons = tuple(
        Constraint(rng.randrange(n), rng.choice("+*"), rng.randrange(n), rng.randrange(n)) for _ in range(m)
    )
    labels = tuple(chr(0x41 + i) if i < 26 else chr(0x61 + i - 26) for i in range(n))
    return PartialAlgebra(Universe(labels), cons)


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20, 22, 24])
    parser.add_argument("--density", type=float, default=0.15, help="constraints per n^2")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    names = list(_kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (default: {_kernels.BACKEND})")
    print(f"{'n':>3} {'groups':>7} {'count':>10} " + " ".join(f"{k + ' s':>12}" for k in names) + "   speedup")
    for n in args.sizes:
        alg = random_algebra(n, args.density, args.seed + n)
        pairs, results = alg.compiled
        times, counts = {}, set()
        for name in names:
            mod = _kernels.BACKENDS[name]
            counts.add(int(mod.count_closed(pairs, results, 0, 1 << n)))
            times[name] = best_time(lambda: mod.count_closed(pairs, results, 0, 1 << n), args.repeat)
        assert len(counts) == 1, f"backends disagree at n={n}: {counts}"
        speed = f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else "       -"
        print(f"{n:>3} {len(pairs):>7} {counts.pop():>10} " + " ".join(f"{times[k]:12.4f}" for k in names) + "  " + speed)


if __name__ == "__main__":
    main()
