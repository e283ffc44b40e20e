"""Special functions on the critical line: Gamma, zeta, Z, theta, and zeros.

Everything downstream (Fourier coefficients, dip scans, ideal generators)
funnels through `zeta_critical`, so this module carries the accuracy
contracts: Euler-Maclaurin below `rs_threshold`, a Riemann-Siegel main sum
with remainder terms C0..C4 above it, and honest error accounting for both.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

__all__ = [
    "AccuracyError",
    "EvalConfig",
    "PoleError",
    "VALIDATED_T_MAX",
    "ZetaZero",
    "find_zeros",
    "finite_difference_weights",
    "gamma_complex",
    "log_gamma",
    "read_zero_cache",
    "riemann_siegel_Z",
    "siegel_theta",
    "write_zero_cache",
    "zeta_critical",
    "zeta_jet",
]

# Largest |t| at which the C0..C4 remainder implementation has been checked
# against an independent high-precision evaluation.
VALIDATED_T_MAX = 260.0

_TWO_PI = 2.0 * math.pi


class PoleError(ValueError):
    """Gamma evaluated at a non-positive integer."""


class AccuracyError(ArithmeticError):
    """The requested absolute error cannot be certified at this argument."""


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation policy shared by every zeta-dependent operation.

    euler_maclaurin_terms is a floor for the Euler-Maclaurin main-sum length;
    the effective length grows with |t| to keep the Bernoulli tail convergent.
    assume_simple_zeros only gates find_zeros; synthetic multiplicities live
    in the sheaf layer.
    """

    euler_maclaurin_terms: int = 40
    rs_threshold: float = 100.0
    target_abs_error: float = 1e-6
    assume_simple_zeros: bool = True

    def __post_init__(self) -> None:
        if self.euler_maclaurin_terms < 1:
            raise ValueError("euler_maclaurin_terms must be a positive integer")
        if not self.rs_threshold >= 20.0:
            raise ValueError("rs_threshold must be >= 20")
        if not self.target_abs_error > 0.0:
            raise ValueError("target_abs_error must be positive")


@dataclass(frozen=True)
class ZetaZero:
    """A critical-line zero 1/2 + i*ordinate with refinement metadata."""

    ordinate: float
    multiplicity: int
    abs_error: float

    def __post_init__(self) -> None:
        if not self.ordinate > 0.0:
            raise ValueError("ordinate must be positive")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be a positive integer")
        if self.abs_error < 0.0:
            raise ValueError("abs_error must be nonnegative")


# ---------------------------------------------------------------------------
# Gamma: Lanczos approximation (g = 7, 9 coefficients), reflection below
# Re z = 1/2.

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos_sum(w: complex) -> complex:
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (w + i)
    return acc


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z; raises PoleError at non-positive integers."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z = {z}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    w = z - 1.0
    a = _lanczos_sum(w)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * a


def log_gamma(z: complex) -> complex:
    """log Gamma(z), analytic on Re z > 0 (continuous branch, not mod 2*pi).

    For Re z < 1/2 the argument is shifted up with
    log Gamma(z) = log Gamma(z+1) - log z, which stays on the continuous
    branch for z in the closed upper-right quadrant (the only use here).
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log-gamma pole at z = {z}")
    shift = 0.0 + 0.0j
    while z.real < 0.5:
        shift += cmath.log(z)
        z = z + 1.0
    w = z - 1.0
    a = _lanczos_sum(w)
    t = w + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (w + 0.5) * cmath.log(t) - t + cmath.log(a) - shift


def siegel_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi."""
    return log_gamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


# ---------------------------------------------------------------------------
# Euler-Maclaurin evaluation of zeta(1/2 + it).

# B_{2k} for k = 1..15 as floats (exact rationals rounded once).
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
)
_EM_CORRECTION_TERMS = 14


def _zeta_euler_maclaurin(s: complex, n_floor: int) -> tuple[complex, float]:
    """zeta(s) for Re s = 1/2 by Euler-Maclaurin; returns (value, error bound)."""
    big_n = max(n_floor, int(math.ceil(0.7 * abs(s.imag))) + 30)
    n_arr = np.arange(1, big_n + 1, dtype=np.float64)
    value = complex(np.sum(n_arr ** (-s)))
    value += big_n ** (1.0 - s) / (s - 1.0) - 0.5 * big_n ** (-s)

    # correction terms T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    rising = s  # product of (s+j) for j = 0..2k-2
    n_pow = big_n ** (1.0 - s)  # N^{1-s-2k}, updated per k
    inv_n2 = 1.0 / (big_n * big_n)
    fact = 2.0  # (2k)!
    last_term = 0.0 + 0.0j
    for k in range(1, _EM_CORRECTION_TERMS + 2):
        n_pow *= inv_n2
        term = _BERNOULLI_EVEN[k - 1] / fact * rising * n_pow
        if k <= _EM_CORRECTION_TERMS:
            value += term
        else:
            last_term = term  # first omitted term, used for the bound
        rising *= (s + (2 * k - 1)) * (s + (2 * k))
        fact *= (2 * k + 1) * (2 * k + 2)

    m2 = 2 * _EM_CORRECTION_TERMS
    truncation = abs(last_term) * abs(s + m2 + 1) / (s.real + m2 + 1)
    rounding = 1e-15 * (1.0 + 0.02 * big_n)
    return value, truncation + rounding


# ---------------------------------------------------------------------------
# Riemann-Siegel: main sum plus remainder terms C0..C4 built from derivatives
# of Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).

_RS_REMAINDER_COEFF = 0.017  # empirical envelope: |R| <= 0.017 t^{-11/4}
_RS_CONTOUR_NODES = 64
_RS_CONTOUR_RADIUS = 0.4


def _psi_rs(z: complex) -> complex:
    """Psi(z), stable near the removable singularities z = 1/4 + k/2.

    Near a singular point s_k both numerator and denominator are rewritten as
    sines of O(e) arguments, so the ratio keeps full relative accuracy.
    """
    k = round((z.real - 0.25) * 2.0)
    e = z - (0.25 + 0.5 * k)
    if abs(e) < 0.15:
        sign_num = 1.0 if (k * k - k - 1) % 4 == 3 else -1.0
        sign_den = -1.0 if k % 2 == 0 else 1.0
        if e == 0:
            return complex((sign_num / sign_den) * (k - 0.5))
        num = cmath.sin(math.pi * e * (2 * k - 1 + 2 * e))
        den = cmath.sin(_TWO_PI * e)
        return (sign_num / sign_den) * num / den
    w = z * z - z - 0.0625
    return cmath.cos(_TWO_PI * w) / cmath.cos(_TWO_PI * z)


def _psi_rs_derivatives(p: float) -> list[float]:
    """Psi^(k)(p) for k = 0..12 from one trapezoid Cauchy integral.

    Nodes are rotated half a step so none lands on the real axis where the
    rewritten forms would be exercised at their own centers.
    """
    m = _RS_CONTOUR_NODES
    r = _RS_CONTOUR_RADIUS
    angles = _TWO_PI * (np.arange(m) + 0.5) / m
    rot = np.exp(1j * angles)
    samples = np.array([_psi_rs(p + r * w) for w in rot])
    out = []
    fact = 1.0
    for k in range(13):
        acc = np.sum(samples * np.exp(-1j * k * angles))
        out.append(float(fact / (m * r**k) * acc.real))  # Psi is real-analytic
        fact *= k + 1
    return out


def _rs_correction_coeffs(p: float) -> tuple[float, float, float, float, float]:
    d = _psi_rs_derivatives(p)
    pi2 = math.pi * math.pi
    pi4 = pi2 * pi2
    pi6 = pi4 * pi2
    pi8 = pi4 * pi4
    c0 = d[0]
    c1 = -d[3] / (96.0 * pi2)
    c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4)
    c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6)
    c4 = (
        d[0] / (128.0 * pi2)
        + 19.0 * d[4] / (24576.0 * pi4)
        + 11.0 * d[8] / (5898240.0 * pi6)
        + d[12] / (2038431744.0 * pi8)
    )
    return c0, c1, c2, c3, c4


def _riemann_siegel_raw(t: float) -> tuple[float, float]:
    """Z(t) by the Riemann-Siegel formula; returns (value, error bound)."""
    tau = t / _TWO_PI
    rt = math.sqrt(tau)
    m = int(rt)
    p = rt - m
    theta = siegel_theta(t)
    n_arr = np.arange(1, m + 1, dtype=np.float64)
    main = 2.0 * float(np.sum(np.cos(theta - t * np.log(n_arr)) / np.sqrt(n_arr)))
    cs = _rs_correction_coeffs(p)
    corr = 0.0
    tau_pow = 1.0
    for c in cs:
        corr += c * tau_pow
        tau_pow /= math.sqrt(tau)
    corr *= (-1.0) ** (m - 1) * tau ** (-0.25)
    bound = _RS_REMAINDER_COEFF * t ** (-2.75) + 1e-13 * (1.0 + m)
    return main + corr, bound


# ---------------------------------------------------------------------------
# Public evaluators.


def _zeta_on_line(t: float, cfg: EvalConfig) -> tuple[complex, float]:
    """(zeta(1/2+it), certified bound) for t >= 0, dispatching EM / RS."""
    if t > VALIDATED_T_MAX:
        raise AccuracyError(
            f"t = {t:.6g} exceeds the validated range ({VALIDATED_T_MAX:g}) "
            "of the Riemann-Siegel remainder implementation"
        )
    if t < cfg.rs_threshold:
        value, bound = _zeta_euler_maclaurin(0.5 + 1j * t, cfg.euler_maclaurin_terms)
    else:
        z_val, bound = _riemann_siegel_raw(t)
        value = z_val * cmath.exp(-1j * siegel_theta(t))
    if bound > cfg.target_abs_error:
        raise AccuracyError(
            f"certified error {bound:.3g} at t = {t:.6g} exceeds "
            f"target_abs_error = {cfg.target_abs_error:.3g}"
        )
    return value, bound


def zeta_critical(t: float, cfg: EvalConfig | None = None) -> complex:
    """zeta(1/2 + it) for real t, to within cfg.target_abs_error."""
    if cfg is None:
        cfg = EvalConfig()
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    if t < 0.0:
        return zeta_critical(-t, cfg).conjugate()
    value, _ = _zeta_on_line(t, cfg)
    return value


def riemann_siegel_Z(t: float, cfg: EvalConfig | None = None) -> float:
    """Z(t) = e^{i theta(t)} zeta(1/2+it), real-valued rotation of zeta."""
    if cfg is None:
        cfg = EvalConfig()
    t = float(t)
    if t < 0.0:
        raise ValueError("riemann_siegel_Z requires t >= 0")
    if t > VALIDATED_T_MAX:
        raise AccuracyError(
            f"t = {t:.6g} exceeds the validated range ({VALIDATED_T_MAX:g})"
        )
    if t >= cfg.rs_threshold:
        value, bound = _riemann_siegel_raw(t)
        if bound > cfg.target_abs_error:
            raise AccuracyError(
                f"certified error {bound:.3g} at t = {t:.6g} exceeds "
                f"target_abs_error = {cfg.target_abs_error:.3g}"
            )
        return value
    zeta_val, _ = _zeta_on_line(t, cfg)
    rotated = cmath.exp(1j * siegel_theta(t)) * zeta_val
    if abs(rotated.imag) > 1e-9:
        raise AccuracyError(
            f"rotation residual {rotated.imag:.3g} at t = {t:.6g} exceeds 1e-9"
        )
    return rotated.real


# ---------------------------------------------------------------------------
# Zero finding.

_ZERO_GRID_STEP = 0.04
_ZERO_BISECT_WIDTH = 2e-10


def find_zeros(t_min: float, t_max: float, cfg: EvalConfig | None = None) -> list[ZetaZero]:
    """All critical zeros with ordinate in (t_min, t_max], bisected on Z.

    Refinement always runs on the Euler-Maclaurin branch (the dispatch
    threshold is lifted above t_max): its evaluation floor ~1e-13 is what
    certifies the 1e-9 ordinate error, which the Riemann-Siegel branch
    cannot do near its own ~1e-8 noise floor.
    """
    if cfg is None:
        cfg = EvalConfig()
    if not (0.0 <= t_min < t_max):
        raise ValueError("need 0 <= t_min < t_max")
    if not cfg.assume_simple_zeros:
        raise NotImplementedError(
            "multiplicity detection is not provided; synthetic multiplicities "
            "are exercised through the sheaf module"
        )
    refine_cfg = replace(
        cfg,
        rs_threshold=min(max(cfg.rs_threshold, t_max + 16.0), VALIDATED_T_MAX),
        target_abs_error=max(cfg.target_abs_error, 1e-10),
    )

    n_steps = int(math.ceil((t_max - t_min) / _ZERO_GRID_STEP))
    grid = [t_min + (t_max - t_min) * i / n_steps for i in range(n_steps + 1)]
    values = [riemann_siegel_Z(t, refine_cfg) for t in grid]

    zeros: list[ZetaZero] = []
    for i in range(n_steps):
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            continue  # grid point exactly on a zero: handled by the bracket ahead
        if fa * fb > 0.0:
            continue
        a, b = grid[i], grid[i + 1]
        while b - a > _ZERO_BISECT_WIDTH:
            mid = 0.5 * (a + b)
            fm = riemann_siegel_Z(mid, refine_cfg)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0.0:
                b, fb = mid, fm
            else:
                a, fa = mid, fm
        slope = abs(fb - fa) / max(b - a, 1e-300) if b > a else 1.0
        abs_error = 0.5 * (b - a) + 2e-13 / max(slope, 0.05)
        zeros.append(ZetaZero(0.5 * (a + b), 1, min(abs_error, 1e-9)))
    return zeros


# ---------------------------------------------------------------------------
# Finite differences (Fornberg weights) and zeta jets.


def finite_difference_weights(x0: float, nodes: np.ndarray, max_order: int) -> np.ndarray:
    """Weights w[k, i] with f^(k)(x0) ~= sum_i w[k, i] f(nodes[i]).

    Fornberg's recurrence on arbitrary (distinct) nodes; exact up to float
    rounding, accuracy order len(nodes) - max_order.
    """
    x = np.asarray(nodes, dtype=np.float64)
    n = len(x)
    if n == 0:
        raise ValueError("need at least one node")
    c = np.zeros((n, max_order + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c.T.copy()


_JET_STEP = 0.03
_JET_HALF_WIDTH = 6  # 13-point stencil, accuracy order >= 8 for orders <= 4


def zeta_jet(t0: float, order: int, cfg: EvalConfig | None = None) -> list[complex]:
    """[zeta(s0), zeta'(s0), ..., zeta^(order)(s0)] at s0 = 1/2 + i t0.

    Central finite differences along the t-axis, converted to s-derivatives
    with d/ds = -i d/dt per order.
    """
    if cfg is None:
        cfg = EvalConfig()
    if not 0 <= order <= 4:
        raise ValueError("order must be between 0 and 4")
    value = zeta_critical(t0, cfg)
    if order == 0:
        return [value]
    offsets = np.arange(-_JET_HALF_WIDTH, _JET_HALF_WIDTH + 1, dtype=np.float64)
    nodes = t0 + offsets * _JET_STEP
    weights = finite_difference_weights(t0, nodes, order)
    samples = np.array([zeta_critical(t, cfg) for t in nodes])
    jets = [value]
    for k in range(1, order + 1):
        dt_k = complex(np.sum(weights[k] * samples))
        jets.append((-1j) ** k * dt_k)
    return jets


# ---------------------------------------------------------------------------
# Zero-cache persistence (CSV: ordinate,multiplicity,abs_error).


def write_zero_cache(path: str | Path, zeros: list[ZetaZero]) -> None:
    ordinates = [z.ordinate for z in zeros]
    if ordinates != sorted(ordinates) or len(set(ordinates)) != len(ordinates):
        raise ValueError("zero ordinates must be strictly increasing")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ordinate", "multiplicity", "abs_error"])
        for z in zeros:
            writer.writerow([f"{z.ordinate:.14e}", z.multiplicity, f"{z.abs_error:.6e}"])


def read_zero_cache(path: str | Path) -> list[ZetaZero]:
    zeros: list[ZetaZero] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["ordinate", "multiplicity", "abs_error"]:
            raise ValueError(f"unexpected zero-cache header in {path}: {header}")
        for row in reader:
            zeros.append(ZetaZero(float(row[0]), int(row[1]), float(row[2])))
    ordinates = [z.ordinate for z in zeros]
    if ordinates != sorted(ordinates) or len(set(ordinates)) != len(ordinates):
        raise ValueError(f"zero cache {path} is not strictly increasing")
    return zeros
