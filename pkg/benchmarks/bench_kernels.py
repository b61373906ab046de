"""Compare the compiled canonical-code kernel with the pure-Python one.

    python benchmarks/bench_kernels.py [--repeat N]

Runs both on every map of the bundled tame archive, from every start dart
(the worst case for canonical_form), checks they agree and prints timings.
"""

import argparse
import statistics
import time
from pathlib import Path

from dodecakit import _kernels_py
from dodecakit.graphgen import read_archive

ARCHIVE = Path(__file__).resolve().parent.parent / "tests" / "data" / "tame_archive.txt"


def cases():
    for h in read_archive(ARCHIVE):
        yield h.f, h.n, list(range(h.size)), h.size


def timed(fn, work, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in work:
            fn(*args)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args()
    work = list(cases())
    impls = {"python": _kernels_py.canonical_code}
    try:
        from dodecakit import _ckernels
        impls["cython"] = _ckernels.canonical_code
    except ImportError:
        print("compiled kernels not built; timing the Python fallback only")
    if len(impls) == 2:
        for args in work:
            assert impls["python"](*args) == impls["cython"](*args), "kernels disagree"
    print(f"{len(work)} maps, {sum(w[3] for w in work)} darts, median of {a.repeat} runs")
    base = None
    for name, fn in impls.items():
        t = timed(fn, work, a.repeat)
        base = base or t
        print(f"{name:8s} {t * 1e3:9.1f} ms   speedup x{base / t:.1f}")


if __name__ == "__main__":
    main()
