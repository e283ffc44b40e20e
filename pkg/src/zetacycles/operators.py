"""Lattice summation maps, the trace identity, and Fourier analysis on
multiplicative circles.

The two transform routes are deliberately independent: `fourier_closed`
multiplies critical-line zeta values against closed-form Mellin factors,
while `fourier_direct` periodizes the summation map on a log-uniform grid
and integrates numerically. Their agreement is the central cross-check of
the whole pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .schwartz import RepresentationError, TestFunction, mellin_psi
from .specfun import EvalConfig, zeta_critical

__all__ = [
    "CircleFunction",
    "InsufficientModesError",
    "ResolutionError",
    "TailBound",
    "circle_from_payload",
    "circle_to_payload",
    "covering_sigma",
    "eval_E",
    "fourier_closed",
    "fourier_direct",
    "scaling_theta",
    "trace_identity_check",
]

_TWO_PI = 2.0 * math.pi


class ResolutionError(ValueError):
    """Direct-transform grid too coarse for the requested mode count."""


class InsufficientModesError(ValueError):
    """Covering map asked for more output modes than the input carries."""


@dataclass(frozen=True)
class TailBound:
    terms_used: int
    bound: float

    def __post_init__(self) -> None:
        if self.bound < 0.0:
            raise ValueError("bound must be nonnegative")


@dataclass(frozen=True)
class CircleFunction:
    """Truncated Fourier data {c_n : |n| <= N} on the circle of length L."""

    L: float
    coeffs: dict[int, complex]
    N: int

    def __post_init__(self) -> None:
        if self.L <= 0.0:
            raise ValueError("circle length L must be positive")
        if self.N < 1:
            raise ValueError("mode count N must be at least 1")
        if any(abs(n) > self.N for n in self.coeffs):
            raise ValueError("coefficient index outside [-N, N]")

    def coeff(self, n: int) -> complex:
        return self.coeffs.get(n, 0.0 + 0.0j)

    def norm_sq(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.coeffs.values()))


def circle_to_payload(xi: CircleFunction) -> dict:
    return {
        "L": xi.L,
        "N": xi.N,
        "coeffs": [[xi.coeff(n).real, xi.coeff(n).imag] for n in range(-xi.N, xi.N + 1)],
    }


def circle_from_payload(payload: dict) -> CircleFunction:
    n_max = int(payload["N"])
    pairs = payload["coeffs"]
    if len(pairs) != 2 * n_max + 1:
        raise ValueError("coefficient list length does not match N")
    coeffs = {
        n: complex(re, im)
        for n, (re, im) in zip(range(-n_max, n_max + 1), pairs)
    }
    return CircleFunction(float(payload["L"]), coeffs, n_max)


# ---------------------------------------------------------------------------
# The summation map E(f)(u) = u^(1/2) * sum_{n>=1} f(n u).

_MAX_TAIL_TERMS = 1 << 24


def eval_E(f: TestFunction, u: float, tol: float) -> tuple[float, TailBound]:
    """Partial sum with a certified Gaussian tail bound.

    The cutoff M doubles until C * integral_M^inf exp(-b u^2 x^2) dx < tol,
    using the decay certificate (C, b); the reported bound is that integral
    scaled by u^(1/2), so it bounds the error of the returned value.
    """
    u = float(u)
    if u <= 0.0:
        raise ValueError("u must be positive")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if f.is_zero:
        return 0.0, TailBound(0, 0.0)
    c_dec, b_dec = f.decay
    rb = math.sqrt(b_dec)
    prefactor = c_dec * math.sqrt(math.pi) / (2.0 * u * rb)
    m = 8
    while True:
        tail = prefactor * math.erfc(rb * u * m)
        if tail < tol:
            break
        m *= 2
        if m > _MAX_TAIL_TERMS:
            raise ValueError(f"tail tolerance {tol:g} unattainable at u = {u:g}")
    args = np.arange(1, m + 1, dtype=np.float64) * u
    value = math.sqrt(u) * float(np.sum(f(args)))
    return value, TailBound(m, math.sqrt(u) * tail)


def trace_identity_check(f: TestFunction, u: float) -> float:
    """|E(f)(u) - (u^(1/2)/2) * 2 sum f(nu)| via two disjoint summation paths.

    The second path picks its own cutoff and accumulates scalar terms with
    compensated summation; no code is shared with eval_E's vectorized sum.
    """
    u = float(u)
    if u <= 0.0:
        raise ValueError("u must be positive")
    if f.is_zero:
        return 0.0
    e_value, _ = eval_E(f, u, 1e-17)
    c_dec, b_dec = f.decay
    cutoff = int(math.ceil(math.sqrt(max(math.log(c_dec * 1e22), 1.0) / b_dec) / u)) + 4
    trace = 2.0 * math.fsum(float(f(n * u)) for n in range(1, cutoff + 1))
    return abs(e_value - 0.5 * math.sqrt(u) * trace)


# ---------------------------------------------------------------------------
# Closed-form Fourier coefficients: c_n = L^(-1/2) zeta(1/2 - 2 pi i n / L)
# times the Mellin factor psi_f(2 pi n / L).


def fourier_closed(
    f: TestFunction, L: float, N: int, cfg: EvalConfig | None = None
) -> CircleFunction:
    if cfg is None:
        cfg = EvalConfig()
    if L <= 0.0:
        raise ValueError("circle length L must be positive")
    if N < 1:
        raise ValueError("mode count N must be at least 1")
    scale = L ** -0.5
    coeffs: dict[int, complex] = {}
    for n in range(-N, N + 1):
        s = _TWO_PI * n / L
        zeta_factor = zeta_critical(-s, cfg)
        psi_factor = mellin_psi(f, s).psi
        coeffs[n] = scale * zeta_factor * psi_factor
    return CircleFunction(L, coeffs, N)


# ---------------------------------------------------------------------------
# Direct route: periodize E(f) over the lattice mu^Z and integrate the
# transform on a log-uniform grid.


def _fourier_coeffs_of(f: TestFunction) -> np.ndarray:
    """Polynomial coefficients (all parities) of the Fourier transform of f
    against exp(-pi y^2); valid only for gauss_scale = pi (self-dual kernel).

    Multiplication by x^2 conjugates to -(1/4 pi^2) d^2/dy^2, applied per
    power of x^2 to the transformed Gaussian.
    """
    if abs(f.gauss_scale - math.pi) > 1e-15:
        raise RepresentationError("direct transform requires the unit Gaussian scale")

    def differentiate(poly: list[float]) -> list[float]:
        out = [0.0] * (len(poly) + 1)
        for i, d in enumerate(poly):
            if i >= 1:
                out[i - 1] += i * d
            out[i + 1] -= _TWO_PI * d
        return out

    acc = [0.0]
    basis = [1.0]  # transform of the bare Gaussian
    factor = 1.0
    for j, c in enumerate(f.coeffs):
        if j > 0:
            basis = differentiate(differentiate(basis))
            factor /= -4.0 * math.pi * math.pi
        if c != 0.0:
            if len(acc) < len(basis):
                acc.extend([0.0] * (len(basis) - len(acc)))
            for i, d in enumerate(basis):
                acc[i] += c * factor * d
    return np.array(acc, dtype=np.float64)


def _poly_gauss(coeffs: np.ndarray, y: np.ndarray) -> np.ndarray:
    poly = np.zeros_like(y)
    for c in coeffs[::-1]:
        poly = poly * y + c
    return poly * np.exp(-math.pi * np.square(y))


_DIRECT_TERMS = 16
_POISSON_TERMS = 3
_SPLIT_POINT = 0.5


def _eval_E_array(f: TestFunction, v: np.ndarray, fhat: np.ndarray) -> np.ndarray:
    """E(f) on an array of positive points, split by magnitude.

    Above the split the defining sum needs few terms; below it the Poisson
    resummation E(v) = v^(-1/2)(fh(0)/2 + sum_m fh(m/v)) - v^(1/2) f(0)/2
    converges immediately.
    """
    out = np.zeros_like(v)
    hi = v >= _SPLIT_POINT
    if np.any(hi):
        vh = v[hi]
        acc = np.zeros_like(vh)
        for n in range(1, _DIRECT_TERMS + 1):
            acc += f(n * vh)
        out[hi] = np.sqrt(vh) * acc
    lo = ~hi
    if np.any(lo):
        vl = v[lo]
        acc = np.full_like(vl, 0.5 * float(fhat[0]))  # fh(0), poly at the origin
        for m in range(1, _POISSON_TERMS + 1):
            acc += _poly_gauss(fhat, m / vl)
        out[lo] = acc / np.sqrt(vl) - 0.5 * float(f(0.0)) * np.sqrt(vl)
    return out


def fourier_direct(
    f: TestFunction, L: float, N: int, grid_points: int | None = None
) -> CircleFunction:
    """Fourier coefficients of the periodized summation map, numerically.

    The integrand is sampled on a log-uniform grid over one period (trapezoid
    rule is spectrally accurate there) after summing the lattice translates
    mu^k for |k| <= ceil(30/L).
    """
    if L <= 0.0:
        raise ValueError("circle length L must be positive")
    if N < 1:
        raise ValueError("mode count N must be at least 1")
    grid = grid_points if grid_points is not None else max(256, 64 * N)
    if grid < 8 * N:
        raise ResolutionError(
            f"{grid} grid points resolve fewer than 8 samples for mode N = {N}"
        )
    if f.is_zero:
        return CircleFunction(L, {n: 0.0 + 0.0j for n in range(-N, N + 1)}, N)
    fhat = _fourier_coeffs_of(f)
    k_span = int(math.ceil(30.0 / L))
    x = (np.arange(grid, dtype=np.float64) * L) / grid
    shifts = np.arange(-k_span, k_span + 1, dtype=np.float64) * L
    v = np.exp(shifts[:, None] + x[None, :])
    xi = np.sum(_eval_E_array(f, v, fhat), axis=0)
    spectrum = np.fft.fft(xi) * (math.sqrt(L) / grid)
    coeffs = {n: complex(spectrum[n % grid]) for n in range(-N, N + 1)}
    return CircleFunction(L, coeffs, N)


# ---------------------------------------------------------------------------
# Covering maps and the scaling action.


def covering_sigma(xi: CircleFunction, n: int) -> CircleFunction:
    """Push the circle of length n*L down to length L: out c_k = n^(1/2) c_{nk}."""
    if n < 1:
        raise ValueError("covering degree must be a positive integer")
    if n == 1:
        return xi
    out_n = xi.N // n
    if out_n < 1:
        raise InsufficientModesError(
            f"input carries N = {xi.N} modes, not enough for degree {n}"
        )
    root = math.sqrt(n)
    coeffs = {k: root * xi.coeff(n * k) for k in range(-out_n, out_n + 1)}
    return CircleFunction(xi.L / n, coeffs, out_n)


def scaling_theta(lam: float, xi: CircleFunction) -> CircleFunction:
    """Scale by lambda: the n-th coefficient picks up lambda^(-2 pi i n / L)."""
    if lam <= 0.0:
        raise ValueError("scaling parameter must be positive")
    phase = -_TWO_PI * math.log(lam) / xi.L
    coeffs = {
        n: c * complex(math.cos(phase * n), math.sin(phase * n))
        for n, c in xi.coeffs.items()
    }
    return CircleFunction(xi.L, coeffs, xi.N)
