"""Smoke test for the `subdiff` extension module.

Build first: pip install --no-build-isolation -e crates/py
Run: python python/smoke_test.py
"""

import math

import subdiff


def close(a, b, rel):
    assert abs(a - b) <= rel * abs(b), f"{a} vs {b}"


def kernels():
    s = subdiff.KernelSpec.frac_exp(0.5, 0.0)
    assert s.family == "frac_exp"
    close(s.k(1.0), 1.0 / math.sqrt(math.pi), 1e-12)
    close(s.l(1.0), 1.0 / math.sqrt(math.pi), 1e-12)
    close(s.one_conv_l(1.0), 2.0 / math.sqrt(math.pi), 1e-10)
    subdiff.KernelSpec.distributed([(0.3, 0.5), (0.7, 0.5)])
    try:
        subdiff.KernelSpec.frac_exp(1.5, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha outside (0, 1) accepted")


def phi():
    solver = subdiff.PhiSolver(subdiff.KernelSpec.frac_exp(0.5, 0.0))
    close(solver.phi(0.5), math.pi / 64.0, 1e-10)
    assert solver.phi(2.0 * solver.r_star()) <= 1.0 + 1e-8
    lo, hi = solver.boxes(0.1)
    assert lo[1] <= hi[0]


def benchmark():
    # E_{1/2}(-z) = exp(z^2) erfc(z)
    t_max = 0.1
    s = subdiff.KernelSpec.frac_exp(0.5, 0.0)
    u = subdiff.solve(s, t_max, 256, 65)
    z = math.pi**2 * math.sqrt(t_max)
    exact = math.exp(z * z) * math.erfc(z)
    xs = u.xs
    mid = len(xs) // 2
    close(u.row(len(u.times) - 1)[mid], exact * math.sin(math.pi * xs[mid]), 5e-3)
    close(subdiff.mittag_leffler(0.5, -z), exact, 1e-8)


def certify():
    c = subdiff.certify(subdiff.KernelSpec.frac_exp(0.5, 0.0), samples=50, seed=1)
    assert c["pass"], c
    assert all(v == 0 for _, v in c["violations"])


def volterra():
    # h_n solves h + n (l * h) = n l; for alpha = 1/2 and n = 4,
    # h(1) = 4 E_{1/2,1/2}(-4) and the difference quotient identity
    # keeps k_n bounded by n.
    s = subdiff.KernelSpec.frac_exp(0.5, 0.0)
    t, h, k = subdiff.resolvent(s, 4, nt=2048, grading=4.0)
    assert all(x >= 0 for x in h[1:])
    assert all(0 <= x <= 4.0 + 1e-9 for x in k)
    close(h[-1], 0.064767012190042909561, 1e-2)
    t, v = subdiff.solve_second_kind(s, lambda t: 1.0, lambda t: 0.0)
    assert all(abs(x) < 1e-12 for x in v)


def exponent():
    # (2 p0 + n (p0 - 1)) / (2 + n (p0 - 1))
    close(subdiff.critical_exponent(1.5, 1), 3.5 / 2.5, 1e-12)
    assert len(subdiff.presets()) > 0


if __name__ == "__main__":
    for case in (kernels, phi, benchmark, certify, volterra, exponent):
        case()
        print(f"ok {case.__name__}")
