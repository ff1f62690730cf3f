"""Compare the compiled RK4 core with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--batch 100] [--steps 10000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from sublorentz import _kernels_py


def _inputs(batch, seed):
    rng = np.random.default_rng(seed)
    th = np.ascontiguousarray(rng.uniform(-5, 5, (batch, 3)))
    y0 = np.zeros((batch, 11), dtype=np.longdouble)
    y0[:, 7:] = rng.normal(size=(batch, 4))
    return th, y0


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=100)
    ap.add_argument("--steps", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    th, y0 = _inputs(args.batch, 0)
    rec = args.steps // 100 if args.steps % 100 == 0 else 1
    run = lambda mod: mod.rk4_batch(th, y0, 1.0, args.steps, True, rec)

    t_py, out_py = _best(lambda: run(_kernels_py), args.repeat)
    print(f"numpy fallback  : {t_py:8.3f} s  ({args.batch} trajectories x {args.steps} steps)")
    try:
        from sublorentz import _kernels
    except ImportError:
        print("compiled core   : not built")
        return
    t_c, out_c = _best(lambda: run(_kernels), args.repeat)
    diff = float(np.abs(out_c - out_py).max())
    print(f"compiled core   : {t_c:8.3f} s")
    print(f"speedup         : {t_py / t_c:8.1f} x")
    print(f"max |difference|: {diff:.3e}")


if __name__ == "__main__":
    main()
