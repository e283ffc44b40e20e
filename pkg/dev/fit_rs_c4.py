"""Empirically extract RS remainder coefficients C1..C4(p) and identify the
rational constants multiplying Psi derivatives.

Method: at fixed p, t_m = 2 pi (m+p)^2 for m in {40, 50, 60}.  The residual
after subtracting main sum + lower-order terms equals
(-1)^(m-1) tau^(-1/4) (C_j tau^(-j/2) + C_{j+1} tau^(-(j+1)/2) + ...).
Three tau values at the same p give a 3x3 Vandermonde solve for C_j with
O(tau^(-3/2)) relative leftover.  Then least-squares fit C_j(p) samples on
the parity-matched Psi-derivative basis and compare with candidate rationals.
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 50

PI = mp.pi


def psi_stable(z):
    """Psi(p) = cos(2 pi (p^2 - p - 1/16))/cos(2 pi p), stable near 1/4, 3/4."""
    zr = mp.re(z)
    if abs(zr - 0.25) < 0.05 and abs(mp.im(z)) < 0.05:
        e = z - mp.mpf(1) / 4
        return mp.sin(PI * e * (1 - 2 * e)) / mp.sin(2 * PI * e) if e != 0 else mp.mpf(1) / 2
    if abs(zr - 0.75) < 0.05 and abs(mp.im(z)) < 0.05:
        e = z - mp.mpf(3) / 4
        return mp.sin(PI * e * (1 + 2 * e)) / mp.sin(2 * PI * e) if e != 0 else mp.mpf(1) / 2
    return mp.cos(2 * PI * (z * z - z - mp.mpf(1) / 16)) / mp.cos(2 * PI * z)


def psi_derivs(p, kmax=12, M=128, radius=mp.mpf("0.4")):
    """All derivatives 0..kmax at once by trapezoid Cauchy integral."""
    samples = []
    for j in range(M):
        ang = 2 * PI * (j + mp.mpf("0.5")) / M
        samples.append((ang, psi_stable(p + radius * mp.e ** (1j * ang))))
    out = []
    for k in range(kmax + 1):
        acc = mp.mpf(0)
        for ang, val in samples:
            acc += val * mp.e ** (-1j * k * ang)
        out.append((mp.factorial(k) / (M * radius**k) * acc).real)
    return out


def main_sum(t, theta, m):
    s = mp.mpf(0)
    for n in range(1, m + 1):
        s += mp.cos(theta - t * mp.log(n)) / mp.sqrt(n)
    return 2 * s


def extract(p, j_lower_coeffs):
    """Return C_j estimate at p, where j = len(j_lower_coeffs)."""
    j = len(j_lower_coeffs)
    rows = []
    rhs = []
    for m in (40, 50, 60):
        mp_p = mp.mpf(p)
        rt = m + mp_p
        tau = rt * rt
        t = 2 * PI * tau
        theta = mp.siegeltheta(t)
        zex = mp.siegelz(t)
        low = mp.mpf(0)
        for i, ci in enumerate(j_lower_coeffs):
            low += ci * tau ** (-mp.mpf(i) / 2)
        resid = zex - main_sum(t, theta, m) - (-1) ** (m - 1) * tau ** (-mp.mpf(1) / 4) * low
        y = resid * (-1) ** (m - 1) * tau ** (mp.mpf(1) / 4)
        rows.append([tau ** (-mp.mpf(j + i) / 2) for i in range(3)])
        rhs.append(y)
    sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    return sol[0]


def fit_basis(ps, samples, orders):
    """Least-squares fit samples(p) = sum_k a_k Psi^(orders[k])(p)."""
    A = mp.matrix(len(ps), len(orders))
    b = mp.matrix(len(ps), 1)
    for i, p in enumerate(ps):
        d = psi_derivs(mp.mpf(p))
        for k, o in enumerate(orders):
            A[i, k] = d[o]
        b[i] = samples[i]
    return mp.qr_solve(A, b)[0]


def main():
    ps = [0.05, 0.13, 0.22, 0.31, 0.44, 0.52, 0.63, 0.71, 0.84, 0.93]
    pi2, pi4, pi6, pi8 = PI**2, PI**4, PI**6, PI**8

    # tabulated candidates
    def table_coeffs(p):
        d = psi_derivs(mp.mpf(p))
        c0 = d[0]
        c1 = -d[3] / (96 * pi2)
        c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi4)
        c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi4) - d[9] / (5308416 * pi6)
        return [c0, c1, c2, c3]

    # extract C1, C2, C3, C4 at each p
    c4_samples = []
    for p in ps:
        cs = table_coeffs(p)
        c1e = extract(p, cs[:1])
        c2e = extract(p, cs[:2])
        c3e = extract(p, cs[:3])
        c4e = extract(p, cs[:4])
        print(
            f"p={p:4.2f}  C1 err={float(abs(c1e - cs[1])):.2e}  "
            f"C2 err={float(abs(c2e - cs[2])):.2e}  C3 err={float(abs(c3e - cs[3])):.2e}  "
            f"C4_emp={mp.nstr(c4e, 8)}"
        )
        c4_samples.append(c4e)

    print()
    print("fit C4 on basis {Psi, Psi^(4), Psi^(8), Psi^(12)}:")
    a = fit_basis(ps, c4_samples, [0, 4, 8, 12])
    names = ["Psi", "Psi^(4)", "Psi^(8)", "Psi^(12)"]
    cands = [1 / (128 * pi2), 1 / (24576 * pi4), 1 / (5898240 * pi6), 1 / (2038431744 * pi8)]
    for nm, ak, cd in zip(names, a, cands):
        print(f"  coeff[{nm}] = {mp.nstr(ak, 10)}   remembered {mp.nstr(cd, 10)}   inv*pi^k: ", end="")
        # print 1/(a_k) in units of the matching pi power to spot the integer
        k = {0: 2, 1: 4, 2: 6, 3: 8}[names.index(nm)]
        print(mp.nstr(1 / (ak * PI**k), 12))


if __name__ == "__main__":
    main()
