"""Time the integer validation kernels under both backends.

    python3 benchmarks/bench_kernels.py [--m 3 --n 1] [--repeat 5]

Each backend runs in a subprocess because the choice is made at import time
(DGQ_DISABLE_NUMBA=1 selects the numpy versions).
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from dgq import builders
from dgq._kernels import BACKEND, kernels
from dgq.double import validate

m, n, repeat = map(int, sys.argv[1:4])
T = builders.no_siempre(m, n)
validate(T)  # compile / warm up
timings = {}
def clock(name, f):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        f()
        best = min(best, time.perf_counter() - t0)
    timings[name] = best
clock("associativity", lambda: (kernels.associativity(T.hcomp, 50), kernels.associativity(T.vcomp, 50)))
clock("interchange", lambda: kernels.interchange(T.hcomp, T.vcomp, T.l, T.t, T.hinv, T.vinv, T.tinv, 50))
clock("validate", lambda: validate(T))
print(json.dumps({"backend": BACKEND, "boxes": T.n, "seconds": timings}))
"""


def run(backend: str, m: int, n: int, repeat: int) -> dict:
    env = dict(os.environ)
    env["DGQ_DISABLE_NUMBA"] = "1" if backend == "numpy" else "0"
    out = subprocess.run([sys.executable, "-c", CHILD, str(m), str(n), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    results = [run(b, args.m, args.n, args.repeat) for b in ("numpy", "numba")]
    print(f"no_siempre({args.m},{args.n}): {results[0]['boxes']} boxes, best of {args.repeat}")
    print(f"{'kernel':<15}" + "".join(f"{r['backend']:>12}" for r in results))
    for k in results[0]["seconds"]:
        print(f"{k:<15}" + "".join(f"{r['seconds'][k]:>11.4f}s" for r in results))


if __name__ == "__main__":
    main()
