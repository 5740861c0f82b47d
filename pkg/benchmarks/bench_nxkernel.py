"""Compare the compiled and pure-Python ℕ^× sieve kernels.

    python benchmarks/bench_nxkernel.py [--bound N] [--repeat R]
"""
from __future__ import annotations

import argparse
import timeit

from genscale import _nxkernel_py as pure

try:
    from genscale import _nxkernel as compiled
except ImportError:
    compiled = None

CASES = [
    ("collision [4,6,9]", "first_collision", ([4, 6, 9],)),
    ("counts [2,3,5,7]", "product_counts", ([2, 3, 5, 7],)),
    ("zeta <2,3> beta=3", "zeta_sum", ([2, 3], 3.0)),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':24} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for label, fn, extra in CASES:
        call = lambda mod: getattr(mod, fn)(*extra, args.bound)  # noqa: E731
        tp = min(timeit.repeat(lambda: call(pure), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{label:24} {tp:12.4f} {'n/a':>12} {'':>8}")
            continue
        tc = min(timeit.repeat(lambda: call(compiled), number=1, repeat=args.repeat))
        assert call(pure) == call(compiled) or fn == "zeta_sum"
        print(f"{label:24} {tp:12.4f} {tc:12.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
