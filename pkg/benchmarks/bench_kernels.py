"""Compare the compiled and numpy kernel backends on Cora-sized inputs.

    python benchmarks/bench_kernels.py [--nodes 2708] [--degree 4] [--repeat 20] [--epochs 5]

Prints the median time of each kernel per backend and the speedup, then the
time of one full NO-GAT training epoch under each backend.
"""

import argparse
import timeit

import numpy as np

from nogat import kernels
from nogat.config import ModelConfig
from nogat.graph import Graph, add_self_loops, make_splits, normalize_adjacency
from nogat.sparse import SparseMatrix
from nogat.structural import OverlayPattern
from nogat.training import train


def random_graph(n: int, degree: float, features: int, classes: int, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    m = int(n * degree / 2)
    src, dst = rng.integers(0, n, m), rng.integers(0, n, m)
    keep = src != dst
    adj = SparseMatrix.from_edges(n, np.r_[src[keep], dst[keep]], np.r_[dst[keep], src[keep]])
    x = (rng.random((n, features)) < 0.013).astype(float)
    labels = rng.integers(0, classes, n)
    empty = np.zeros(n, bool)
    graph = Graph(x, labels, adj, empty, empty, empty, classes, name="bench")
    return make_splits(graph, "random-60-20-20", seed)


def kernel_cases(graph: Graph, heads: int = 8, width: int = 8):
    rng = np.random.default_rng(1)
    att = add_self_loops(graph.adjacency)
    overlay = OverlayPattern(normalize_adjacency(graph.adjacency), 2, 0.5, att).matrix
    e, n = att.nnz, graph.num_nodes
    logits = rng.normal(size=(e, heads))
    vals = np.abs(rng.normal(size=(e, heads)))
    dense = rng.normal(size=(n, heads * width))
    rows = att.row_ids()
    x = rng.normal(size=overlay.nnz)
    w1, b1, w2 = rng.normal(size=8), rng.normal(size=8), rng.normal(size=8)
    return {
        "segment_sum": lambda k: k.segment_sum(logits, att.indptr),
        "segment_softmax": lambda k: k.segment_softmax(logits, att.indptr),
        "segment_softmax_backward": lambda k: k.segment_softmax_backward(vals, logits, att.indptr),
        "spmm": lambda k: k.spmm(att.indptr, att.indices, vals, dense),
        "spmm_t": lambda k: k.spmm_t(att.indptr, att.indices, vals, dense, n),
        "sddmm": lambda k: k.sddmm(att.indptr, att.indices, dense, dense, heads),
        "intersect": lambda k: k.intersect(overlay.indptr, overlay.indices, overlay.indptr, overlay.indices,
                                           rows, att.indices),
        "scalar_mlp": lambda k: k.scalar_mlp(x, w1, b1, w2, 0.1),
        "scalar_mlp_backward": lambda k: k.scalar_mlp_backward(x, x, w1, b1, w2),
    }


def median_time(fn, repeat: int) -> float:
    fn()  # warm up
    return float(np.median(timeit.repeat(fn, number=1, repeat=repeat)))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--nodes", type=int, default=2708)
    p.add_argument("--degree", type=float, default=3.9)
    p.add_argument("--features", type=int, default=1433)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--epochs", type=int, default=5)
    args = p.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the numpy fallback only")
    graph = random_graph(args.nodes, args.degree, args.features, 7)
    print(f"graph: N={graph.num_nodes} edges={graph.num_edges} F={graph.num_features}")
    cases = kernel_cases(graph)

    times = {}
    for name in backends:
        kernels.use_backend(name)
        times[name] = {case: median_time(lambda: fn(kernels), args.repeat) for case, fn in cases.items()}
        config = ModelConfig(dataset="bench", variant="nogat", max_epochs=args.epochs, patience=args.epochs)
        times[name]["nogat epoch"] = train(graph, config).seconds / args.epochs

    header = f"{'kernel':<26}" + "".join(f"{b + ' ms':>14}" for b in backends)
    print(header + (f"{'speedup':>10}" if len(backends) == 2 else ""))
    for case in times[backends[0]]:
        row = f"{case:<26}" + "".join(f"{1e3 * times[b][case]:>14.3f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'][case] / times['cython'][case]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
