"""Compare the compiled linear-algebra kernels against the pure-Python ones.

Times det_mod and rref_mod on random square matrices over the default prime,
then one full forge, under whichever backend is active. Run twice to see both
sides:

    python3 benchmarks/bench_backends.py
    CREMONA3_PURE=1 python3 benchmarks/bench_backends.py
"""

import random
import time

from cremona3 import modmat
from cremona3.field import DEFAULT_PRIME
from cremona3.space import forge

SIZES = (40, 80, 160)
REPEATS = 5


def random_matrix(n, rng):
    return [[rng.randrange(DEFAULT_PRIME) for _ in range(n)] for _ in range(n)]


def bench(label, fn, matrices):
    best = min(
        sum(_timed(fn, rows) for rows in matrices)
        for _ in range(REPEATS)
    )
    print(f"  {label:<10} {best * 1000:8.2f} ms")
    return best


def _timed(fn, rows):
    start = time.perf_counter()
    fn(rows, DEFAULT_PRIME)
    return time.perf_counter() - start


def main():
    print(f"backend: {modmat.BACKEND} (prime {DEFAULT_PRIME})")
    rng = random.Random(0)
    for n in SIZES:
        matrices = [random_matrix(n, rng) for _ in range(3)]
        print(f"{n}x{n} matrices, best of {REPEATS}:")
        bench("det_mod", modmat.det_mod, matrices)
        bench("rref_mod", modmat.rref_mod, matrices)

    start = time.perf_counter()
    cert = forge(5, 13, seed=0)
    elapsed = time.perf_counter() - start
    print(f"forge(5, 13): {elapsed:.2f}s, "
          f"residual {cert.space_check.report.residual}, status {cert.status}")


if __name__ == "__main__":
    main()
