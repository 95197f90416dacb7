"""Compare the compiled and pure-Python refinement kernels.

Two measurements per graph X(S): the root refinement alone, and a full
canonical labeling with the kernel swapped in. Both kernels must produce the
same partition and the same canonical encoding.

    python benchmarks/bench_refine.py [--repeat 5]
"""
import argparse
import statistics
import time

from pgi import graphcanon
from pgi import _refine_py
from pgi.driver import FamilySpec, generate_family
from pgi.gadget import build_X
from pgi.series import enumerate_composition_series

try:
    from pgi import _refine_ext
except ImportError:
    _refine_ext = None

CASES = [
    ("C2^3", FamilySpec("elementary-abelian", 2, 3)),
    ("D4", FamilySpec("dihedral", k=4)),
    ("C2^4", FamilySpec("elementary-abelian", 2, 4)),
    ("C3^2", FamilySpec("elementary-abelian", 3, 2)),
    ("Heis3", FamilySpec("heisenberg", 3)),
    ("C3^3", FamilySpec("elementary-abelian", 3, 3)),
]


def time_it(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), out


def root_refine(kernel, x):
    part, starts = graphcanon._Partition.from_colors(x.colors)
    offsets, nbrs = x.csr
    kernel.refine(offsets, nbrs, part.lab, part.pos, part.cell, part.size, starts)
    return part.lab.tolist()


def full_canon(kernel, x):
    saved = graphcanon._refine
    graphcanon._refine = kernel.refine
    try:
        return graphcanon.canonical_form(x).encoding
    finally:
        graphcanon._refine = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _refine_ext is None:
        print("compiled kernel not built; only the Python kernel is available")
    kernels = [("python", _refine_py)] + ([("compiled", _refine_ext)] if _refine_ext else [])
    print(f"{'graph':<8}{'V':>7}{'E':>7}  " + "".join(f"{n + ' refine':>16}{n + ' canon':>16}" for n, _ in kernels)
          + ("  speedup" if len(kernels) == 2 else ""))
    for name, spec in CASES:
        s = enumerate_composition_series(generate_family(spec))[0]
        x = build_X(s)
        row, results, canon_times = [], [], []
        for _, kernel in kernels:
            t_ref, lab = time_it(lambda: root_refine(kernel, x), args.repeat)
            t_can, enc = time_it(lambda: full_canon(kernel, x), args.repeat)
            row += [f"{t_ref * 1e3:13.2f} ms", f"{t_can * 1e3:13.2f} ms"]
            results.append((lab, enc))
            canon_times.append(t_can)
        if len(results) == 2 and results[0] != results[1]:
            raise SystemExit(f"{name}: kernels disagree")
        speed = f"  {canon_times[0] / canon_times[1]:6.1f}x" if len(kernels) == 2 else ""
        print(f"{name:<8}{x.vertex_count:>7}{len(x.edges):>7}  " + "".join(f"{c:>16}" for c in row) + speed)


if __name__ == "__main__":
    main()
