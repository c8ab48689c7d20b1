"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are called explicitly, so WITTKIT_NO_NUMBA does not matter
here except that it hides the numba column. Results must agree exactly;
the script exits nonzero if they do not.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from wittkit import _kernels
from wittkit.jets import JetCtx, jet_presentation
from wittkit.rings import count_points, free_ring, mod_fiber
from wittkit.witt.vectors import univ_batch_int, univ_batch_mod


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    pts = rng.integers(0, 1 << 20, size=(5000, 8))
    for p, n in [(2, 3), (3, 2), (5, 2)]:
        yield (f"eval P p={p} n={n} mod 8, 5000 pts",
               lambda b, p=p, n=n: univ_batch_mod(p, n, "P", 8, pts % 8, backend=b))
    rows = rng.integers(-50, 50, size=(500, 8)).tolist()
    yield ("exact S p=3 n=2, 500 pts (CRT)", lambda b: np.array(univ_batch_int(3, 2, "S", rows, backend=b)))
    J = jet_presentation(JetCtx(2, 1, free_ring("x y"))).ring
    for q in (16, 32, 64):
        yield (f"count points of Λ_1(Z[x,y]) over F_{q}",
               lambda b, q=q: count_points(mod_fiber(J, 2), q, backend=b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        # compile outside the timed region
        _kernels.eval_mod(np.zeros((1, 1)), np.ones(1), np.ones((1, 1)), 7, backend="numba")
    print(f"{'case':46s}" + "".join(f"{b:>12s}" for b in backends) + "   speedup")
    bad = 0
    for name, fn in cases():
        times, outs = [], []
        for b in backends:
            fn(b)  # warm-up
            t, out = best_of(lambda: fn(b), args.repeat)
            times.append(t)
            outs.append(out)
        agree = all(np.array_equal(np.asarray(outs[0]), np.asarray(o)) for o in outs[1:])
        bad += not agree
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{name:46s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times) + "  " + speed
              + ("" if agree else "  MISMATCH"))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
