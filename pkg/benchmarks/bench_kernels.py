"""Compiled vs pure Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Part one times the raw polynomial kernels on random sparse inputs.  Part
two runs the whole flat-output pipeline on the bundled examples in a fresh
interpreter per backend (the backend is fixed at import time).
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from piflat import kernels
from piflat._rational import QQ
from piflat.mpoly import layout

PIPELINE = """
import time
from importlib.resources import files
from piflat import kernels
from piflat.flatness import compute_pi_flat, verify_certificate
from piflat.sysfile import load_system
data = files("piflat") / "data"
cases = [("example1.sys", {{"k": "t"}}), ("example2.sys", None), ("string.sys", None)]
t0 = time.perf_counter()
for _ in range({repeat}):
    for name, bind in cases:
        s = load_system(str(data / name), bind)
        assert verify_certificate(s, compute_pi_flat(s)).passed
print(kernels.BACKEND, time.perf_counter() - t0)
"""


def random_poly(rng, lay, terms, deg):
    out = {}
    for _ in range(terms):
        m = lay.pack([rng.randint(0, deg) for _ in range(lay.n)])
        out[m] = QQ(rng.randint(-99, 99), rng.randint(1, 9))
    return {m: c for m, c in out.items() if c}


def bench_kernels(repeat):
    rng = random.Random(7)
    lay = layout(4)
    a, b = random_poly(rng, lay, 60, 6), random_poly(rng, lay, 60, 6)
    prod = kernels.load("python").mul(a, b)
    rows = []
    impls = {"python": kernels.load("python")}
    try:
        impls["cython"] = kernels.load("cython")
    except ImportError:
        print("compiled kernels not built; timing the pure Python ones only")
    for op, call in (("add", lambda k: k.add(a, b)),
                     ("mul", lambda k: k.mul(a, b)),
                     ("divexact", lambda k: k.divexact(prod, b, lay.guard))):
        times = {name: min(timeit.repeat(lambda: call(k), number=repeat, repeat=3)) / repeat
                 for name, k in impls.items()}
        rows.append((op, times))
    print(f"{'kernel':<10}" + "".join(f"{n:>14}" for n in impls) + "   speedup")
    for op, times in rows:
        line = f"{op:<10}" + "".join(f"{times[n] * 1e6:>11.1f} us" for n in impls)
        if "cython" in times:
            line += f"   {times['python'] / times['cython']:.2f}x"
        print(line)


def bench_pipeline(repeat):
    print("\npipeline on the bundled examples, "
          f"{repeat} round(s), fresh interpreter per backend")
    for flag in ("0", "1"):
        env = dict(os.environ, PIFLAT_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", PIPELINE.format(repeat=repeat)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        print(f"  {backend:<8}{float(secs):8.3f} s")


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--repeat", type=int, default=20)
    args = p.parse_args()
    bench_kernels(args.repeat)
    bench_pipeline(max(1, args.repeat // 4))


if __name__ == "__main__":
    main()
