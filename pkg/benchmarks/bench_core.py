"""Compiled kernel versus the pure-Python twin on the hot paths.

    python benchmarks/bench_core.py [--repeat N]

Both kernels are imported directly, so the comparison runs in one process.
"""

import argparse
import random
import timeit
from fractions import Fraction

from ribbonx import _core_py
from ribbonx.catalog import doubled_nichols

try:
    from ribbonx import _core
except ImportError:
    _core = None


def scalars(core, rng, count, level=8):
    return [core.CycloScalar(level, [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                                     for _ in range(4)]) for _ in range(count)]


def convert_table(H, core):
    lv = H.level
    conv = lambda c: core.CycloScalar(lv, c.coeffs)
    return [[tuple((k, conv(c)) for k, c in row) for row in rows] for rows in H.mult_table]


def random_vec(core, rng, dim, density, level=8):
    out = {}
    for i in rng.sample(range(dim), max(1, int(dim * density))):
        c = core.CycloScalar(level, [rng.randint(-3, 3), rng.randint(1, 3)])
        out[i] = c
    return out


def cases(core, seed=0):
    rng = random.Random(seed)
    xs = scalars(core, rng, 200)
    H = doubled_nichols(2)
    table = convert_table(H, core)
    a, b = random_vec(core, rng, H.dim, 0.3), random_vec(core, rng, H.dim, 0.3)
    rows = [random_vec(core, rng, 48, 0.5) for _ in range(48)]
    one = core.CycloScalar(8, [1])

    def field_mul():
        acc = one
        for x in xs:
            acc = acc * x + x
        return acc

    def field_inv():
        return [x.inverse() for x in xs if x]

    def sparse_product():
        return core.sparse_mul(table, a, b)

    def row_reduce():
        ech = core.Echelon()
        for r in rows:
            ech.add(dict(r))
        return ech.rank

    return {"scalar mul/add x200": field_mul, "scalar inverse x200": field_inv,
            "sparse product in D(K2)": sparse_product, "row reduce 48x48": row_reduce}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--number", type=int, default=3)
    args = p.parse_args(argv)
    kernels = [("python", _core_py)] + ([("compiled", _core)] if _core else [])
    results = {}
    for label, core in kernels:
        for name, fn in cases(core).items():
            t = min(timeit.repeat(fn, number=args.number, repeat=args.repeat)) / args.number
            results.setdefault(name, {})[label] = t
    print(f"{'case':28s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, row in results.items():
        py = row["python"] * 1e3
        if "compiled" in row:
            co = row["compiled"] * 1e3
            print(f"{name:28s} {py:10.2f} {co:12.2f} {py / co:7.1f}x")
        else:
            print(f"{name:28s} {py:10.2f} {'n/a':>12s} {'':>8s}")


if __name__ == "__main__":
    main()
