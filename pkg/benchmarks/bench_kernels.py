"""Compare the numba and numpy kernel backends on S_q scans and mate search.

    python3 benchmarks/bench_kernels.py --repeat 3
"""
import argparse
import json
import statistics
import time

from pgpoly import KlenianParams, PermTuple, T31Params, kernels, klenian_group, t31_group, tuple_to_square
from pgpoly.counting import centralizer_bruteforce, normalizer_bruteforce
from pgpoly.lpp import mate_search


def cases():
    for c in [(2, 3, 1), (3, 2, 1), (3, 2, 2)]:
        g = t31_group(T31Params(*c))
        yield f"normalizer t31{c}", lambda g=g: normalizer_bruteforce(g)
        yield f"centralizer t31{c}", lambda g=g: centralizer_bruteforce(g)
    g = klenian_group(KlenianParams(2, 3, 1))
    yield "normalizer klenian(2, 3, 1)", lambda: normalizer_bruteforce(g)
    for c in [(2, 3, 1), (3, 2, 1), (2, 3, 2)]:
        s = tuple_to_square(PermTuple.from_group(t31_group(T31Params(*c))))
        yield f"mate_search t31{c}", lambda s=s: mate_search(s)


def time_call(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="emit rows as JSON")
    args = ap.parse_args(argv)

    backends = [b for b in kernels.BACKENDS if b == "numpy" or kernels.HAVE_NUMBA]
    rows = []
    for name, fn in cases():
        row = {"case": name}
        results = {}
        for be in backends:
            kernels.set_backend(be)
            try:
                fn()  # warm-up; absorbs numba compilation or cache load
                results[be], row[be] = time_call(fn, args.repeat)
            finally:
                kernels.set_backend(None)
        vals = list(results.values())
        row["agree"] = all(v == vals[0] for v in vals)
        if "numba" in row and row["numba"] > 0:
            row["speedup"] = row["numpy"] / row["numba"]
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':34} {'numba s':>10} {'numpy s':>10} {'speedup':>8}  agree")
    for r in rows:
        print(
            f"{r['case']:34} {r.get('numba', float('nan')):10.4f} {r['numpy']:10.4f} "
            f"{r.get('speedup', float('nan')):8.1f}  {r['agree']}"
        )


if __name__ == "__main__":
    main()
