"""Reference values for the test suite, computed with mpmath at 40 digits.

Run from the repository root:  python3 tools/oracles.py
Writes CSV grids under crates/core/tests/data/ and prints scalar oracles.
"""
import csv
import random

import mpmath as mp

mp.mp.dps = 40
DATA = "crates/core/tests/data"


def write(name, header, rows):
    with open(f"{DATA}/{name}", "w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([mp.nstr(v, 20) if not isinstance(v, str) else v for v in row])


def upper_gamma_grid():
    rng = random.Random(20240611)
    rows = []
    while len(rows) < 600:
        a = mp.mpc(rng.uniform(-60, 60), rng.uniform(-30, 30))
        if abs(a) > 60:
            continue
        r = 10 ** rng.uniform(-3, mp.log10(200))
        phi = rng.uniform(-1, 1) * (mp.pi / 2 - 2e-3)
        x = mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
        v = mp.gammainc(a, x)
        rows.append((a.real, a.imag, x.real, x.imag, v.real, v.imag))
    # moderate orders, the region the kernels actually visit
    while len(rows) < 1200:
        a = mp.mpc(rng.uniform(-8, 8), rng.uniform(-20, 20))
        r = 10 ** rng.uniform(-3, mp.log10(200))
        phi = rng.uniform(-1, 1) * (mp.pi / 2 - 2e-3)
        x = mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
        v = mp.gammainc(a, x)
        rows.append((a.real, a.imag, x.real, x.imag, v.real, v.imag))
    # route boundaries and orders next to the poles of Gamma(a)
    orders = [mp.mpc(-k + d, e) for k in range(0, 7) for d in (-0.3, -1e-7, 0, 1e-9, 0.2) for e in (0, 0.4)]
    radii = [1e-3, 0.3, 1.4999, 1.5001, 3.9, 4.1, 19.9, 20.1, 60]
    for a in orders:
        for r in radii:
            phi = rng.uniform(-1, 1) * (mp.pi / 2 - 2e-3)
            x = mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
            v = mp.gammainc(a, x)
            rows.append((a.real, a.imag, x.real, x.imag, v.real, v.imag))
    # kernel-like arguments: a = s/2 or -s/2 on Re s in (-1, 2), x = pi tau n^2 with arg tau near pi/2
    for _ in range(300):
        s = mp.mpc(rng.uniform(-1, 2), rng.uniform(-35, 35))
        a = s / 2 if rng.random() < 0.5 else -s / 2
        n = rng.randint(1, 12)
        phi = rng.choice([0, 1]) * rng.uniform(-1, 1) * (mp.pi / 2 - 2e-3)
        tau = mp.expjpi(phi / mp.pi) * (1 if rng.random() < 0.5 else mp.mpf(1) / rng.choice([2, 1]))
        x = mp.pi * tau * n * n
        if rng.random() < 0.5:
            x = mp.pi / tau * n * n
        v = mp.gammainc(a, x)
        rows.append((a.real, a.imag, x.real, x.imag, v.real, v.imag))
    write("upper_gamma.csv", ["a_re", "a_im", "x_re", "x_im", "re", "im"], rows)


def upper_gamma_large_order_grid():
    """Orders a = +-s/2, +-(1-s)/2 and arguments x = pi tau^{+-1} n^2 as met by
    the series with the automatic tau at heights up to |t| = 800."""
    rows = []
    for t in (-800, -400, -150, -60, 40, 80, 150, 300, 600, 800):
        phi = mp.pi / 2 - max(2.0 / abs(t), 0.02)
        tau = mp.expj(phi if t > 0 else -phi)
        for sigma in (-0.5, 0.1, 0.5, 0.9, 1.5):
            s = mp.mpc(sigma, t)
            for n in (1, 2, 3, 5, 8, 12, 17, 23, 30, 38, 47, 58, 70):
                for a, x in (
                    (s / 2, mp.pi * tau * n * n),
                    (-s / 2, mp.pi * tau * n * n),
                    ((1 - s) / 2, mp.pi / tau * n * n),
                    (-(1 - s) / 2, mp.pi / tau * n * n),
                ):
                    v = mp.gammainc(a, x)
                    if not (mp.mpf("1e-290") < abs(v) < mp.mpf("1e290")):
                        continue
                    rows.append((a.real, a.imag, x.real, x.imag, v.real, v.imag))
    write("upper_gamma_large_order.csv", ["a_re", "a_im", "x_re", "x_im", "re", "im"], rows)


def erfc_grid():
    rng = random.Random(7)
    rows = []
    for _ in range(400):
        r = rng.uniform(0, 10)
        phi = rng.uniform(-mp.pi, mp.pi)
        z = mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
        v = mp.erfc(z)
        rows.append((z.real, z.imag, v.real, v.imag))
    write("erfc.csv", ["z_re", "z_im", "re", "im"], rows)


def log_gamma_grid():
    rng = random.Random(11)
    rows = []
    for _ in range(400):
        r = rng.uniform(0.05, 100)
        phi = rng.uniform(-mp.pi, mp.pi)
        z = mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
        if abs(z.imag) < 1e-3 and z.real < 0:
            continue
        v = mp.loggamma(z)
        d = mp.digamma(z)
        t = mp.psi(1, z)
        rows.append((z.real, z.imag, v.real, v.imag, d.real, d.imag, t.real, t.imag))
    write(
        "log_gamma.csv",
        ["z_re", "z_im", "lg_re", "lg_im", "psi_re", "psi_im", "psi1_re", "psi1_im"],
        rows,
    )


if __name__ == "__main__":
    upper_gamma_grid()
    upper_gamma_large_order_grid()
    erfc_grid()
    log_gamma_grid()
