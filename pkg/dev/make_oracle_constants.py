"""Generate frozen oracle constants for the test suite.

Run:  python dev/make_oracle_constants.py > tests/_oracle_frozen.py

Everything here is computed with mpmath at 40 digits and emitted as plain
float/complex literals (15 significant digits).  The test suite imports the
generated module; it never recomputes these values at collection time.
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 40


def f15(x) -> str:
    return mp.nstr(mp.mpf(x), 15)


def c15(z) -> str:
    z = mp.mpc(z)
    return f"complex({mp.nstr(z.real, 15)}, {mp.nstr(z.imag, 15)})"


def zero_ordinates(t_cap: float) -> list[mp.mpf]:
    out = []
    n = 1
    while True:
        rho = mp.zetazero(n)
        if mp.im(rho) > t_cap:
            break
        out.append(mp.im(rho))
        n += 1
    return out


def psi_f0(z) -> mp.mpc:
    """Mellin side of f0 = H(1+H) exp(-pi x^2), by quadrature.

    psi(z) = int_0^inf f0(x) x^(1/2 - iz) dx/x  with
    f0(x) = exp(-pi x^2) (4 pi^2 x^4 - 6 pi x^2).
    """

    def integrand(x):
        return mp.exp(-mp.pi * x * x) * (4 * mp.pi**2 * x**4 - 6 * mp.pi * x * x) * x ** (mp.mpf("0.5") - 1j * z - 1)

    return mp.quad(integrand, [0, 1, 3, 8])


def main() -> None:
    zeros = zero_ordinates(125.0)

    print('"""Frozen oracle constants (mpmath, 40 dps -> 15 significant digits).')
    print()
    print("Generated by dev/make_oracle_constants.py; do not edit by hand.")
    print('"""')
    print()
    print("# Ordinates of the first zeros on the critical line, t <= 125.")
    print("ZERO_ORDINATES = [")
    for t in zeros:
        print(f"    {f15(t)},")
    print("]")
    print()

    print(f"ZETA_HALF = {f15(mp.zeta(mp.mpf('0.5')))}")
    print(f"GAMMA_QUARTER = {f15(mp.gamma(mp.mpf('0.25')))}")
    print(f"GAMMA_QUARTER_M7I = {c15(mp.gamma(mp.mpf('0.25') - 7j))}")
    g1 = zeros[0]
    print(f"ZETA_PRIME_AT_RHO1 = {c15(mp.zeta(mp.mpf('0.5') + 1j * g1, derivative=1))}")
    print(f"ZETA_HALF_PRIME = {c15(mp.zeta(mp.mpf('0.5'), derivative=1))}")
    print(f"ZETA_HALF_D2 = {c15(mp.zeta(mp.mpf('0.5'), derivative=2))}")
    print(f"ZETA_HALF_D3 = {c15(mp.zeta(mp.mpf('0.5'), derivative=3))}")
    print(f"ZETA_HALF_D4 = {c15(mp.zeta(mp.mpf('0.5'), derivative=4))}")

    # E-sum of the polynomial Gaussian at u=1: sum_{n>=1} e^{-pi n^2}(2 pi n^2 - 1).
    esum = mp.nsum(lambda n: mp.exp(-mp.pi * n * n) * (2 * mp.pi * n * n - 1), [1, mp.inf])
    print(f"E_SUM_CANONICAL_U1 = {f15(esum)}")

    # Sample zeta values for zeta_critical spot checks.
    print("ZETA_CRITICAL_SAMPLES = {")
    for t in [
        "0.0", "2.5", "14.0", "25.010858", "37.5", "59.9", "75.0", "95.0",
        "110.0", "120.0", "155.25", "204.19", "251.33", "259.5",
    ]:
        z = mp.zeta(mp.mpf("0.5") + 1j * mp.mpf(t))
        print(f"    {f15(mp.mpf(t))}: {c15(z)},")
    print("}")

    # Siegel Z and theta spot checks.
    print("SIEGEL_Z_SAMPLES = {")
    for t in ["20.0", "40.0", "61.7", "90.0", "100.0", "105.3", "120.0", "201.4", "259.5"]:
        print(f"    {f15(mp.mpf(t))}: {f15(mp.siegelz(mp.mpf(t)))},")
    print("}")
    print("SIEGEL_THETA_SAMPLES = {")
    for t in ["20.0", "40.0", "61.7", "90.0", "100.0", "105.3", "120.0", "201.4", "259.5"]:
        print(f"    {f15(mp.mpf(t))}: {f15(mp.siegeltheta(mp.mpf(t)))},")
    print("}")

    # Gamma spot checks for the Lanczos route.
    print("GAMMA_SAMPLES = {")
    pts = [
        "(0.25, 0.0)", "(0.25, -3.5)", "(0.25, -30.0)", "(3.7, 11.0)",
        "(-2.5, 0.5)", "(-6.3, -9.1)", "(12.0, 40.0)", "(0.25, -125.66)",
        "(1.25, 130.0)",
    ]
    for p in pts:
        re, im = eval(p)
        z = mp.gamma(mp.mpc(re, im))
        print(f"    {p}: {c15(z)},")
    print("}")

    # Jet anchors: zeta derivatives (in s) at s = 1/2 + i t0.
    print("ZETA_JET_SAMPLES = {")
    for t0 in ["25.0", "14.1347251417347", "2.0"]:
        s0 = mp.mpf("0.5") + 1j * mp.mpf(t0)
        ders = [mp.zeta(s0, derivative=k) for k in range(5)]
        print(f"    {f15(mp.mpf(t0))}: [" + ", ".join(c15(d) for d in ders) + "],")
    print("}")

    # psi for the derived family member f0 = H(1+H) g0 at a few real points,
    # by direct quadrature (independent of the closed form used in src).
    print("PSI_F0_SAMPLES = {")
    for s in ["0.0", "1.0", "5.5", "14.134725", "21.5"]:
        v = psi_f0(mp.mpf(s))
        print(f"    {f15(mp.mpf(s))}: {c15(v)},")
    print("}")

    # psi for f1 = H(1+H)(x^2 e^{-pi x^2}) = (6x^2 - 14 pi x^4 + 4 pi^2 x^6) e^{-pi x^2}.
    def psi_f1(z):
        def integrand(x):
            poly = 6 * x**2 - 14 * mp.pi * x**4 + 4 * mp.pi**2 * x**6
            return mp.exp(-mp.pi * x * x) * poly * x ** (mp.mpf("0.5") - 1j * z - 1)

        return mp.quad(integrand, [0, 1, 3, 8])

    print("PSI_F1_SAMPLES = {")
    for s in ["0.0", "7.3"]:
        print(f"    {f15(mp.mpf(s))}: {c15(psi_f1(mp.mpf(s)))},")
    print("}")

    # Canonical paper-style vector f(x) = e^{-pi x^2}(2 pi x^2 - 1): psi by
    # quadrature at z = 0 and one complex point on the allowed strip.
    def psi_canon(z):
        def integrand(x):
            return mp.exp(-mp.pi * x * x) * (2 * mp.pi * x * x - 1) * x ** (mp.mpf("0.5") - 1j * z - 1)

        return mp.quad(integrand, [0, 1, 3, 8])

    print("PSI_CANONICAL_SAMPLES = {")
    for z in ["0.0", "3.25"]:
        print(f"    {f15(mp.mpf(z))}: {c15(psi_canon(mp.mpf(z)))},")
    print("}")


if __name__ == "__main__":
    main()
