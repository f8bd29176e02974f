"""Compare the compiled and pure-Python kernels on the workloads that dominate run time.

    python benchmarks/bench_kernels.py [--repeat N]

Each row reports the best of N wall-clock runs per backend and the speedup.
Both backends must return identical results; the script checks this too.
"""

import argparse
import time

from boxkit import _kernels, complement, kneser_graph, line_graph, standard_graph


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _profile(g):
    def run(backend):
        vals = []
        for i in range(1, g.n):
            vals.append(max(_kernels.max_common_neighbors(g.n, g.rows, i, backend=backend), 0))
            if vals[-1] == 0:
                break
        return tuple(vals)
    return run


def _refute(g, d):
    def run(backend):
        status, nodes, _ = _kernels.box_search(g.n, g.rows, d, 10**8, backend=backend)
        return status, nodes
    return run


WORKLOADS = [
    ("profile co-Kn(2,9)", _profile(complement(kneser_graph(2, 9)))),
    ("profile co-Kn(2,10)", _profile(complement(kneser_graph(2, 10)))),
    ("profile L(K7)", _profile(line_graph(standard_graph("complete", 7)))),
    ("box<=2 Petersen (refute)", _refute(kneser_graph(2, 5), 2)),
    ("box<=2 co-L(C7) (refute)", _refute(complement(line_graph(standard_graph("cycle", 7))), 2)),
    ("box<=3 Petersen (find)", _refute(kneser_graph(2, 5), 3)),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'workload':28s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup")
    for name, run in WORKLOADS:
        times, results = [], []
        for b in backends:
            t, out = _best(lambda: run(b), args.repeat)
            times.append(t)
            results.append(out)
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{name:28s} " + " ".join(f"{t * 1000:10.2f}ms" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
