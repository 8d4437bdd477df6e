"""Compare the numba and numpy kernels for S_N multiplication, Frobenius and projection.

    python3 benchmarks/bench_kernels.py [--length 64] [--repeat 200]

Both backends are imported from the same module, so the comparison does not
depend on BREUIL_DISABLE_NUMBA; with numba missing only the numpy column runs.
"""
import argparse
import time

import numpy as np

from breuil import kernels
from breuil.padic import PadicConfig
from breuil.ring import tables


def timeit(fn, args, repeat):
    fn(*args)  # warm up (and compile)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    configs = [PadicConfig(2, 1, (-2, 1), 5), PadicConfig(3, 2, (-3, 0, 1), 5)]
    print(f"{'config':<24}{'kernel':<12}{'numpy us':>12}{'numba us':>12}{'speedup':>10}")
    for cfg in configs:
        t = tables(cfg)
        L = args.length
        t.ensure_q(2 * cfg.p * L)
        m, mod = cfg.N, cfg.modulus
        a = rng.integers(0, mod, L, dtype=np.int64)
        b = rng.integers(0, mod, L, dtype=np.int64)
        common = (t.fv, t.fu, t.fui, t.powers(m), m, mod)
        rows = t.projection_rows(L)
        cases = {
            "mul": ((a, b, cfg.e) + common, kernels.mul_numpy, kernels.mul_numba),
            "frobenius": ((a, cfg.p, cfg.e) + common, kernels.frobenius_numpy, kernels.frobenius_numba),
            "project": ((a, rows, mod), kernels.project_numpy, kernels.project_numba),
        }
        for name, (fargs, slow, fast) in cases.items():
            t_np = timeit(slow, fargs, args.repeat)
            if fast is None:
                print(f"{cfg.describe():<24}{name:<12}{t_np * 1e6:>12.1f}{'-':>12}{'-':>10}")
                continue
            t_nb = timeit(fast, fargs, args.repeat)
            assert np.array_equal(slow(*fargs), fast(*fargs))
            print(f"{cfg.describe():<24}{name:<12}{t_np * 1e6:>12.1f}{t_nb * 1e6:>12.1f}"
                  f"{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
