"""Compare the compiled kernel with the pure-Python fallback.

Micro benchmarks call both kernel modules directly on the same inputs;
macro benchmarks run a fixed analysis workload in a subprocess per backend.

    python3 benchmarks/bench_kernel.py [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from homaloidal import _kernel_py
from homaloidal.fields import QQ, field_make
from homaloidal.groebner import Ideal, groebner
from homaloidal.poly import Ring

try:
    from homaloidal import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

MACRO = r"""
import time
from homaloidal.families import FamilySpec, family_make
from homaloidal.fields import QQ, field_make
from homaloidal.polar import is_homaloidal
from homaloidal.kernel import BACKEND
t = time.perf_counter()
for name, n, F in [("near-pencil", 6, field_make(3)), ("near-pencil", 6, QQ), ("ramphoid", None, QQ),
                   ("near-pencil", 10, field_make(5))]:
    is_homaloidal(family_make(FamilySpec(name, n, F)), trials=1)
print(BACKEND, time.perf_counter() - t)
"""


def _random_poly(ring, rng, terms, degree):
    f = ring.zero()
    for _ in range(terms):
        e = [rng.randint(0, degree) for _ in range(ring.n)]
        f = f + ring.monomial(e, ring.field.random_nonzero(rng))
    return f


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def micro(repeat):
    rng = random.Random(1)
    rows = []
    for label, field in [("Q", QQ), ("GF(32003)", field_make(32003)), ("GF(3^11)", field_make(3, 11))]:
        ring = Ring(field, ["x0", "x1", "x2"])
        f = ring.parse("x0*x1*x2*(x0+x1)*(x0+2*x1)*(x0+3*x1)*(x1^2+x0*x2)")
        gb = groebner(Ideal([f.derivative(i) for i in range(3)]))
        lms = [g.lm() for g in gb.elements]
        dicts = [g.terms for g in gb.elements]
        a = _random_poly(ring, rng, 40, 5)
        b = _random_poly(ring, rng, 40, 5)
        ctx = ring.ctx
        for name, mod in [("python", _kernel_py), ("compiled", _kernel_c)]:
            if mod is None:
                continue
            t_mul = _time(lambda: mod.mul(a.terms, b.terms, ring.C, ctx), repeat)
            t_red = _time(lambda: mod.reduce(dict((a * b).terms), lms, dicts, ring.neg, ring.H_all,
                                             ring.H_var, ctx, True), repeat)
            rows.append((label, name, t_mul, t_red))
    print(f"{'field':<12}{'backend':<10}{'mul [ms]':>10}{'reduce [ms]':>13}")
    for label, name, t_mul, t_red in rows:
        print(f"{label:<12}{name:<10}{t_mul * 1e3:>10.2f}{t_red * 1e3:>13.2f}")


def macro():
    for pure in ("1", ""):
        env = dict(os.environ, HOMALOIDAL_PURE_PYTHON=pure)
        if not pure:
            env.pop("HOMALOIDAL_PURE_PYTHON")
        out = subprocess.run([sys.executable, "-c", MACRO], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"workload  {backend:<10}{float(secs):>8.2f} s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    micro(args.repeat)
    macro()


if __name__ == "__main__":
    main()
