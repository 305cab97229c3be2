"""Regenerates the reference tables in this directory with mpmath.

    python3 generate.py

log G_n(1+z) is summed from its canonical product at 40 digits with
K = 4000 explicit factors and a Hurwitz zeta tail; Q_n is fixed by the
integer values log G_n(1+j), j = 0..n.
"""
import math
import random

import mpmath as mp

mp.mp.dps = 40


def mult(n, k):
    return math.comb(n + k - 2, n - 1)


def canonical_sum(z, n, big_k=4000):
    z = mp.mpc(z)
    s = mp.mpc(0)
    for k in range(1, big_k + 1):
        w = z / k
        s -= mult(n, k) * (mp.log(1 + w) - sum((-1) ** (j - 1) * w**j / j for j in range(1, n + 1)))
    coeffs = [mp.mpf(1)]
    for i in range(n - 1):
        new = [mp.mpf(0)] * (len(coeffs) + 1)
        for a, c in enumerate(coeffs):
            new[a] += c * i
            new[a + 1] += c
        coeffs = new
    coeffs = [c / mp.factorial(n - 1) for c in coeffs]
    for j in range(n + 1, n + 40):
        tail = sum(c * mp.zeta(j - i, big_k + 1) for i, c in enumerate(coeffs))
        s -= (-1) ** (j - 1) * z**j / j * tail
    return s


def log_gamma_n_int(n, j):
    if n == 1:
        return mp.log(mp.factorial(j))
    return -sum(log_gamma_n_int(n - 1, m - 1) for m in range(1, j + 1))


_q = {}


def q_poly(n):
    if n not in _q:
        pts = range(n + 1)
        vals = [log_gamma_n_int(n, j) - canonical_sum(j, n).real for j in pts]
        a = mp.matrix([[mp.mpf(j) ** p for p in range(n + 1)] for j in pts])
        c = mp.lu_solve(a, mp.matrix(vals))
        _q[n] = [c[i] for i in range(n + 1)]
    return _q[n]


def log_g(z, n):
    """log G_n(1+z), G_n = Gamma_n^((-1)^(n-1))."""
    z = mp.mpc(z)
    q = q_poly(n)
    return (-1) ** (n - 1) * (sum(q[i] * z**i for i in range(n + 1)) + canonical_sum(z, n))


def point(rng, radius):
    while True:
        r = radius * math.sqrt(rng.random())
        th = rng.uniform(-math.pi, math.pi)
        z = complex(r * math.cos(th), r * math.sin(th))
        if abs(z) > 0.05:
            return z


def write(name, rows):
    with open(name, "w") as f:
        f.write("re,im,value_re,value_im\n")
        for z, v in rows:
            f.write(f"{z.real:.16e},{z.imag:.16e},{float(v.real):.16e},{float(v.imag):.16e}\n")


def main():
    rng = random.Random(20240101)
    pts = [point(rng, 30.0) for _ in range(1000)]
    write("loggamma.csv", [(z, mp.loggamma(z)) for z in pts])
    for n in (2, 3, 4):
        pts = [point(rng, 10.0) for _ in range(50)]
        # log G_n(z) = log G_n(1 + (z - 1))
        write(f"log_g{n}.csv", [(z, log_g(z - 1, n)) for z in pts])


if __name__ == "__main__":
    main()
