"""Compare the pure-Python and compiled kernel backends on fixed workloads.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--preset B2]

Each workload runs on a cold cache (caches are cleared before every repeat),
and the best time over the repeats is reported.  Results of the two backends
are compared for equality as a side check.
"""

from __future__ import annotations

import argparse
import random
import time

from qboson import _kernels
from qboson.foundations import CartanMatrix
from qboson.straighten import encode
from qboson.verify import all_words, equal_weight_pairs, random_word


def workloads(cm: CartanMatrix) -> dict:
    sym = cm.sym_table()
    rng = random.Random(1)
    straighten_words = [encode(random_word(rng, cm.rank, (0, 1, 2), 8)) for _ in range(400)]
    pairs = [(encode(u), encode(v)) for u, v in equal_weight_pairs(cm.rank, (-1, 0, 1, 2), 6)]
    pairs = rng.sample(pairs, 20000)
    a2_words = [encode(w) for w in all_words(cm.rank, (0, 1), 4, 4)]

    def straighten(mod):
        return [mod.straighten_word(w, sym) for w in straighten_words]

    def project(mod):
        return [mod.p_numerator(tuple(c + 64 for c in reversed(u)) + v, sym) for u, v in pairs]

    def matchings(mod):
        return [mod.matching_degrees(u, v, sym) for u, v in pairs]

    def a2_homs(mod):
        return [mod.matching_degrees(u, v, sym, True) for u in a2_words[:80] for v in a2_words[:80]]

    return {"straighten (400 words, length 8)": straighten,
            "projection P (20000 pairs)": project,
            "matching degrees (20000 pairs)": matchings,
            "A2 Hom counts (6400 pairs)": a2_homs}


def best_time(fn, mod, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        mod.clear_caches()
        t0 = time.perf_counter()
        out = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--preset", default="B2")
    args = ap.parse_args()
    cm = CartanMatrix.preset(args.preset)
    backends = {"python": _kernels.python_backend}
    if _kernels.compiled_backend is not None:
        backends["cython"] = _kernels.compiled_backend
    else:
        print("compiled backend not built; timing the pure-Python backend only")
    print(f"preset {args.preset}, best of {args.repeat}")
    print(f"{'workload':36s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in workloads(cm).items():
        times, results = {}, {}
        for b, mod in backends.items():
            times[b], results[b] = best_time(fn, mod, args.repeat)
        same = len({repr(r) for r in results.values()}) == 1
        speed = f"{times['python'] / times['cython']:10.1f}x" if "cython" in times else ""
        row = f"{name:36s}" + "".join(f"{times[b]:11.3f}s" for b in backends) + speed
        print(row + ("" if same else "   RESULTS DIFFER"))


if __name__ == "__main__":
    main()
