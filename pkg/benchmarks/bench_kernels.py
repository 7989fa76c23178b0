"""Time each search kernel on the compiled and pure-Python backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Both backends receive identical inputs; their results are compared
after timing (best of ``--repeat`` runs).
"""

import argparse
import json
import random
import sys
import time

from eccache import kernels
from eccache.caching import all_demands, make_config, symmetric_batch_prefetch
from eccache.indexcoding import induce


def _instances(N, K, M, demands):
    cfg = make_config(N, K, M)
    pf = symmetric_batch_prefetch(cfg)
    out = []
    for d in demands:
        inst = induce(cfg, pf, d)
        out.append((inst.n, *inst.masks()))
    return out


def workloads():
    rng = random.Random(0)
    rank_mats = [[rng.getrandbits(60) for _ in range(64)] for _ in range(2000)]
    mw_mat = [rng.getrandbits(40) | (1 << i) for i in range(20)]
    hcols = [rng.getrandbits(16) for _ in range(40)]
    a441 = _instances(4, 4, 1, list(all_demands(4, 4)))
    m33 = _instances(3, 3, 1, list(all_demands(3, 3))) + _instances(3, 3, 2, list(all_demands(3, 3)))
    return {
        "rank (2000 x 64x60)": lambda m: [m.rank(r) for r in rank_mats],
        "min_weight (20x40)": lambda m: m.min_weight(mw_mat),
        "alpha (4,4,1) all demands": lambda m: [m.alpha(n, d, s) for n, d, s in a441],
        "minrank (3,3,1)+(3,3,2) all": lambda m: [m.minrank(n, d, s) for n, d, s in m33],
        "search canonical [10,6,3]": lambda m: (m.systematic_search(6, 3, 9, True),
                                                m.systematic_search(6, 3, 10, True)),
        "search canonical [18,7,7]": lambda m: (m.systematic_search(7, 7, 17, True),
                                                m.systematic_search(7, 7, 18, True)),
        "search lex no [12,3,7],[13,4,7]": lambda m: (m.systematic_search(3, 7, 12, False),
                                                      m.systematic_search(4, 7, 13, False)),
        "coset_table (40 cols, w<=3)": lambda m: m.coset_table(hcols, 40, 3),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", type=str, help="also write results here")
    args = ap.parse_args(argv)

    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not available; timing the Python backend only", file=sys.stderr)
    rows = []
    print(f"{'kernel':<34} {'python (s)':>11} {'cython (s)':>11} {'speedup':>9}")
    for name, fn in workloads().items():
        times, results = {}, {}
        for b, m in mods.items():
            samples = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[b] = fn(m)
                samples.append(time.perf_counter() - t0)
            times[b] = min(samples)
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {name}")
        py, cy = times["python"], times.get("cython")
        speed = f"{py / cy:8.1f}x" if cy else "      n/a"
        print(f"{name:<34} {py:11.4f} {cy if cy is not None else float('nan'):11.4f} {speed}")
        rows.append({"kernel": name, "python_s": py, "cython_s": cy})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"format_version": 1, "repeat": args.repeat, "results": rows}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
