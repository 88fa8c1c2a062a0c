"""Time the compiled kernels against the numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best time of each backend and the speedup.
"""

import argparse
import timeit

import numpy as np

from perfmix import _pykernels as py
from perfmix.construct import hamming_code, theorem4_construct
from perfmix.galois import make_field
from perfmix.grm import GrmSpec, grm_generate
from perfmix.partition import coset_partition_rm

try:
    from perfmix import _ckernels as cy
except ImportError:
    cy = None


def cases():
    C = theorem4_construct(coset_partition_rm(3, 2))  # |V| = 177147
    orders = np.asarray(C.space.orders, dtype=np.int64)
    src = C.indices.astype(np.int64)
    yield "bfs_nearest", lambda k: k.bfs_nearest(src, orders)

    dist, label = py.bfs_nearest(src, orders)
    yield "min_label_edge", lambda k: k.min_label_edge(dist, label, orders)

    H = hamming_code(2, 4).words  # 2048 words of length 15
    yield "pair_distance_histogram", lambda k: k.pair_distance_histogram(H)
    yield "cross_min_distance", lambda k: k.cross_min_distance(H[:1024], H[1024:])

    F = make_field(4)
    G, _ = grm_generate(GrmSpec(4, 2, 3), expand_limit=0)  # k = 10, 4^10 codewords
    yield "span_weight_histogram", lambda k: k.span_weight_histogram(G.rows, F.add_table, F.mul_table)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; nothing to compare")
    print(f"{'kernel':26s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in cases():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:26s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:26s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
