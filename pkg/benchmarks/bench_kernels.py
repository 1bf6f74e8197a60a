"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--shape "[1;1;1]" ...]

Each kernel runs on identical inputs under both backends.  The outputs are
also compared, so a run doubles as a parity smoke test.
"""

import argparse
import sys
import timeit

from nchull import _pykernels, kernels
from nchull.configuration import parse_shape
from nchull.lattice import build_lattice

DEFAULT_SHAPES = ["[1;1;1]", "[0;1;1;2]", "[0;0;0;0;0;0;0;0]", "[0;0;0;0;0;0;0;0;0;0]"]
FILTER_MAX_N = 10  # the filter walks all Bell(n) set partitions
# upsets is quadratic in the lattice size, so the Python side dominates quickly


def cases(cfg, lat):
    n, between = cfg.n, cfg.between
    masks = lat.masks
    return {
        "enumerate_filter": lambda k: k.enumerate_filter(n, between),
        "enumerate_recursive": lambda k: k.enumerate_recursive(n, between),
        "merge_covers": lambda k: k.merge_covers(masks, lat.index, between, n),
        "upsets": lambda k: k.upsets(masks, n),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shape", action="append", help="shape to time (repeatable)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip", nargs="*", default=[], help="kernel names to skip")
    args = ap.parse_args(argv)

    compiled = kernels._compiled
    if compiled is None:
        print("compiled kernels unavailable; build with pip install -e . --no-build-isolation", file=sys.stderr)
        return 1

    print(f"{'shape':<22}{'n':>3}{'size':>8}  {'kernel':<20}{'python s':>10}{'cython s':>10}{'speedup':>9}", flush=True)
    for text in args.shape or DEFAULT_SHAPES:
        cfg = parse_shape(text)
        lat = build_lattice(cfg, max_n=cfg.n)
        for name, run in cases(cfg, lat).items():
            if name in args.skip or (name == "enumerate_filter" and cfg.n > FILTER_MAX_N):
                continue
            if sorted(run(_pykernels)) != sorted(run(compiled)):
                print(f"{text}: {name} outputs differ between backends", file=sys.stderr)
                return 1
            py = best(lambda: run(_pykernels), args.repeat)
            cy = best(lambda: run(compiled), args.repeat)
            print(f"{text:<22}{cfg.n:>3}{len(lat):>8}  {name:<20}{py:>10.4f}{cy:>10.4f}{py / cy:>8.1f}x", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
