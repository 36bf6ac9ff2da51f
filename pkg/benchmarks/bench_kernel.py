"""Compare the compiled kernel with the pure-Python fallback.

Primitive timings call both implementations directly on the same packed
inputs; end-to-end timings run a workload in a subprocess with and without
``LNDKIT_PURE_PYTHON``.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import time

from lndkit import _kernel_py
from lndkit.constructions import build_example1, build_example2
from lndkit.derivation import iterates
from lndkit.poly import Poly

try:
    from lndkit import _ckernel
except ImportError:  # not built
    _ckernel = None

END_TO_END = {
    "example1 nilpotence": "from lndkit.constructions import build_example1\n"
                           "from lndkit.derivation import certify_nilpotent\n"
                           "certify_nilpotent(build_example1().D)",
    "example2 d=3 verify": "from lndkit.constructions import verify_example2\nverify_example2(3)",
    "ntr (3,5) verify": "import random\nfrom lndkit.constructions import random_ntr_instance, verify_instance\n"
                        "verify_instance(random_ntr_instance(random.Random(5), 3, 5))",
}


def _random_poly(rng, terms, circle):
    out = {}
    for _ in range(terms):
        e = [rng.randint(0, 6) for _ in range(3)] + [rng.randint(0, 1), rng.randint(0, 3) if circle else 0]
        out[sum(v << (12 * i) for i, v in enumerate(e))] = rng.randint(-9, 9) or 1
    return out


def workloads():
    rng = random.Random(7)
    ex1 = build_example1()
    z_its = iterates(ex1.D, Poly.var(ex1.F.ring, 3, 2), 64)
    D2 = build_example2(3).D
    a, b = _random_poly(rng, 120, False), _random_poly(rng, 120, False)
    ca, cb = _random_poly(rng, 80, True), _random_poly(rng, 80, True)
    return [
        ("mul dense 120x120", "mul", (a, b, False)),
        ("mul circle 80x80", "mul", (ca, cb, True)),
        ("mul example1 images", "mul", (ex1.D.images[0]._t, ex1.D.images[2]._t, False)),
        ("derive example1 on G", "derive", (ex1.G._t, [f._t for f in ex1.D.images], False)),
        ("derive example2 d=3 on z^6", "derive",
         ((D2.images[2] ** 3)._t, [f._t for f in D2.images], True)),
        ("derive example1 on D^5(z)", "derive", (z_its[5]._t, [f._t for f in ex1.D.images], False)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _subprocess_time(code, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["LNDKIT_PURE_PYTHON"] = "1"
    else:
        env.pop("LNDKIT_PURE_PYTHON", None)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-c", code], check=True, env=env)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'primitive (best of runs)':40s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, op, inputs in workloads():
        tp = _time(getattr(_kernel_py, op), inputs, args.repeat)
        tc = _time(getattr(_ckernel, op), inputs, args.repeat)
        if getattr(_kernel_py, op)(*inputs) != getattr(_ckernel, op)(*inputs):
            print(f"{name}: results differ")
            return 1
        print(f"{name:40s} {tp * 1e3:10.3f} {tc * 1e3:10.3f} {tp / tc:7.1f}x")
    print()
    print(f"{'end to end (best of runs, incl. startup)':40s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, code in END_TO_END.items():
        tp = _subprocess_time(code, True, max(1, args.repeat // 2))
        tc = _subprocess_time(code, False, max(1, args.repeat // 2))
        print(f"{name:40s} {tp:10.3f} {tc:10.3f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
