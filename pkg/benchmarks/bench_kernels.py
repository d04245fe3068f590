"""Benchmark of the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--repeat N]

Covers the three hot integer loops: table-driven RREF over GF(q)
(subspace canonicalization), streaming pair classification (inner
distributions), and the exhaustive triple count behind the brute-force
intersection numbers.  Both paths are exact and bit-identical; the
output reports the speed ratio.  Setting CLAG_NO_NUMBA=1 makes the
whole package use the numpy path shown here.
"""

import argparse
import random
import time

import numpy as np

from clag import _kernels
from clag.galois import make_field
from clag.geometry import ambient, enumerate_rref_matrices
from clag.scheme import line_relation_matrix


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, build_np, build_nb, repeat):
    t_np, r_np = timeit(build_np, repeat)
    line = f"{name:34s} numpy {t_np * 1e3:9.2f} ms"
    if build_nb is not None:
        build_nb()  # warm the JIT outside the timed region
        t_nb, r_nb = timeit(build_nb, repeat)
        same = np.array_equal(np.asarray(r_np), np.asarray(r_nb))
        line += f"   numba {t_nb * 1e3:9.2f} ms   x{t_np / t_nb:6.1f}"
        line += "   outputs match" if same else "   OUTPUT MISMATCH"
    else:
        line += "   numba unavailable"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"numba active in package: {_kernels.USING_NUMBA}")

    # RREF batch: canonicalize 4000 random 3x6 matrices over GF(9)
    f = make_field(3, 2)
    rng = random.Random(1)
    mats = np.array([[[rng.randrange(9) for _ in range(6)] for _ in range(3)]
                     for _ in range(4000)], dtype=np.int64)

    def rref_all(impl):
        def run():
            total = 0
            work = mats.copy()
            for m in work:
                total += impl(m, f.add_table, f.mul_table,
                              f.neg_table, f.inv_table)
            return total
        return run

    bench("gf_rref (4000 matrices, GF(9))",
          rref_all(_kernels.gf_rref_numpy),
          rref_all(_kernels.gf_rref_numba) if _kernels.gf_rref_numba else None,
          args.repeat)

    # pair classification over all 1080 lines of AG(4,3)
    space = ambient(4, 3, "affine")
    pts = np.array(space.space_point_indices(1), dtype=np.int64)
    _, _, infs = space.infinity_pencils(1)
    bench("pair_counts (1080 lines, AG(4,3))",
          lambda: _kernels.pair_counts_numpy(pts, infs),
          (lambda: _kernels.pair_counts_numba(pts, infs))
          if _kernels.pair_counts_numba else None,
          args.repeat)

    # exhaustive intersection numbers on AG(4,2): 120^3 triples
    rel = np.ascontiguousarray(line_relation_matrix(ambient(4, 2, "affine")))
    bench("triple_counts (120 lines, AG(4,2))",
          lambda: _kernels.triple_counts_numpy(rel, 3)[1],
          (lambda: _kernels.triple_counts_numba(rel, 3)[1])
          if _kernels.triple_counts_numba else None,
          args.repeat)

    # linear-combination expansion: coefficient rows of PG(1,9) points
    coeffs = np.array([rows[0] for rows in enumerate_rref_matrices(2, 1, 9)],
                      dtype=np.int64)
    basis = np.array([[1, 0, 4, 7, 2, 0], [0, 1, 8, 3, 0, 5]], dtype=np.int64)
    big_coeffs = np.tile(coeffs, (500, 1))
    bench("gf_combinations (5000 rows, GF(9))",
          lambda: _kernels.gf_combinations_numpy(big_coeffs, basis,
                                                 f.add_table, f.mul_table),
          (lambda: _kernels.gf_combinations_numba(big_coeffs, basis,
                                                  f.add_table, f.mul_table))
          if _kernels.gf_combinations_numba else None,
          args.repeat)


if __name__ == "__main__":
    main()
