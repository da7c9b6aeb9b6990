"""Time the O(n^2) matrix pipeline against the sorting-based fast path."""

import time

import numpy as np

from kemenyrho.core import build_score_matrix, center_score_matrix, rank_score_vector, rank_score_vector_fast


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    rng = np.random.default_rng(0)
    print(f"{'n':>7}{'matrix s':>12}{'fast s':>12}{'max |diff|':>14}")
    for n in (100, 500, 1000, 2000, 4000):
        x = np.round(rng.standard_normal(n), 2)  # plenty of ties
        slow = lambda: rank_score_vector(center_score_matrix(build_score_matrix(x)))
        fast = lambda: rank_score_vector_fast(x)
        diff = np.max(np.abs(slow().values - fast().values))
        print(f"{n:>7}{best_of(slow):>12.4f}{best_of(fast):>12.6f}{diff:>14.2e}")
    for n in (10**5, 10**6):
        x = rng.standard_normal(n)
        print(f"{n:>7}{'-':>12}{best_of(lambda: rank_score_vector_fast(x)):>12.4f}{'-':>14}")


if __name__ == "__main__":
    main()
