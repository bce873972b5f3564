"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from spygame import _pykernels
from spygame.expr import graph_from_expr
from spygame.solver import Arena

try:
    from spygame import _ckernels
except ImportError:  # extension not built
    _ckernels = None

CASES = [
    ("P4 box P4", 2, 1, 3),
    ("P5 box P5", 2, 1, 3),
    ("C8 cart P3", 3, 1, 3),
]


def kernel_calls(impl, arena: Arena, d: int):
    tuples = np.ascontiguousarray(arena.index.tuples)
    mask = arena.spy_winning_mask(d)

    def moves():
        return impl.guard_move_table(tuples, arena.nbr_ptr, arena.nbr_idx, arena.index.table)

    def attractor():
        return impl.attractor(
            arena.graph.n, arena.index.size, arena.ball_ptr, arena.ball_idx,
            arena.gm_ptr, arena.gm_idx, mask,
        )

    return {"guard_move_table": moves, "attractor": attractor}


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not available; only the numpy fallback can be timed")
    print(f"{'graph':<12} {'s':>2} {'d':>2} {'k':>2} {'configs':>9} {'kernel':<17} {'numpy':>9} {'cython':>9} {'speedup':>8}")
    for expr, s, d, k in CASES:
        g = graph_from_expr(expr)
        arena = Arena(g, s, k)
        configs = 2 * g.n * arena.index.size
        py = kernel_calls(_pykernels, arena, d)
        cy = kernel_calls(_ckernels, arena, d) if _ckernels is not None else {}
        for name, fn in py.items():
            if name in cy:
                a, b = fn(), cy[name]()
                assert all(np.array_equal(x, y) for x, y in zip(a, b)), name
            t_py = best(fn, args.repeat)
            t_cy = best(cy[name], args.repeat) if name in cy else float("nan")
            print(
                f"{expr:<12} {s:>2} {d:>2} {k:>2} {configs:>9} {name:<17} "
                f"{t_py:>8.3f}s {t_cy:>8.3f}s {t_py / t_cy:>7.1f}x"
            )


if __name__ == "__main__":
    main()
