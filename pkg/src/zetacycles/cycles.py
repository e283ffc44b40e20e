"""Cycle detection: row-collapse scores over circle lengths, dip scanning
with bisection refinement, covering stability, and the complement spectrum.

A circle length L is flagged when some Fourier row of the detection matrix
collapses; because every entry factors as L^(-1/2) zeta(1/2 - i s_n) times a
Mellin factor, the row score rescaled by L^(1/2) is exactly |zeta| at the row
frequency, which is what the tolerance is quoted against.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .schwartz import TestFunction, mellin_psi
from .specfun import (
    VALIDATED_T_MAX,
    EvalConfig,
    ZetaZero,
    find_zeros,
    riemann_siegel_Z,
    zeta_critical,
)

__all__ = [
    "CycleReport",
    "DetectionMatrix",
    "Dip",
    "EmptySpectrumError",
    "FamilyDegenerateError",
    "MatchedZero",
    "ScanResult",
    "build_matrix",
    "complement_spectrum",
    "covering_stability",
    "detect",
    "mode_count",
    "scan",
    "svd_dip_score",
]

_TWO_PI = 2.0 * math.pi

# A family is degenerate only when its Mellin factors all vanish at a row
# frequency. The default family's factors are Gamma multiples, nonzero on
# all of R, merely decaying like exp(-pi s / 4); the floor sits far below
# that decay across every representable frequency.
_PSI_FLOOR = 1e-250

_REFINE_TRIGGER = 0.5
_REFINE_WIDTH = 1e-9


class FamilyDegenerateError(ValueError):
    """All Mellin factors vanish at some row frequency; scores undefined."""


class EmptySpectrumError(ValueError):
    """Complement spectrum requested from a negative-verdict report."""


@dataclass(frozen=True)
class DetectionMatrix:
    """entries[i, j] = c_n(f_j) with n = i - N running over [-N, N]."""

    L: float
    N: int
    entries: np.ndarray

    def row(self, n: int) -> np.ndarray:
        return self.entries[n + self.N]


@dataclass(frozen=True)
class MatchedZero:
    n: int
    s: float
    zero: ZetaZero | None
    distance: float


@dataclass(frozen=True)
class CycleReport:
    L: float
    row_scores: dict[int, float]
    zeta_scores: dict[int, float]
    flagged: list[int]
    matched_zeros: list[MatchedZero]
    verdict: bool
    tol: float
    t_max: float


@dataclass(frozen=True)
class Dip:
    L_star: float
    n: int
    s: float
    z_residual: float


@dataclass(frozen=True)
class ScanResult:
    grid: list[tuple[float, float]]
    dips: list[Dip]
    runtime_stats: dict


def mode_count(L: float, t_max: float) -> int:
    """Modes needed so the row frequencies 2 pi n / L cover (0, t_max]."""
    return int(math.ceil(L * t_max / _TWO_PI)) + 8


def _row_data(
    L: float, family: list[TestFunction], t_max: float, cfg: EvalConfig
) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    """Detection matrix and per-row Mellin maxima for all |n| <= N."""
    n_modes = mode_count(L, t_max)
    rows = 2 * n_modes + 1
    entries = np.zeros((rows, len(family)), dtype=np.complex128)
    psi_max = np.zeros(rows)
    scale = L ** -0.5
    for i, n in enumerate(range(-n_modes, n_modes + 1)):
        s = _TWO_PI * n / L
        zeta_factor = zeta_critical(-s, cfg)
        psi_vals = np.array([mellin_psi(f, s).psi for f in family])
        entries[i] = scale * zeta_factor * psi_vals
        psi_max[i] = float(np.max(np.abs(psi_vals)))
        if psi_max[i] < _PSI_FLOOR:
            raise FamilyDegenerateError(
                f"family Mellin factors all below {_PSI_FLOOR:g} at s = {s:.6g}"
            )
    raw = np.max(np.abs(entries), axis=1) / psi_max
    return n_modes, entries, raw, raw * math.sqrt(L)


def _nearest_zero(s: float, zeros: list[ZetaZero]) -> tuple[ZetaZero | None, float]:
    if not zeros:
        return None, math.inf
    best = min(zeros, key=lambda z: abs(z.ordinate - abs(s)))
    return best, abs(best.ordinate - abs(s))


def detect(
    L: float,
    family: list[TestFunction],
    t_max: float = 60.0,
    tol: float = 1e-4,
    cfg: EvalConfig | None = None,
    zeros: list[ZetaZero] | None = None,
) -> CycleReport:
    """Decide whether the circle of length L hosts a collapsed row.

    The verdict considers rows with n != 0 and frequency |2 pi n / L| within
    (0, t_max]; the tolerance applies to the zeta-scale score L^(1/2) r_n.
    """
    if L <= 0.0:
        raise ValueError("circle length L must be positive")
    if not family:
        raise ValueError("family must be nonempty")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if cfg is None:
        cfg = EvalConfig()
    n_modes, _, raw, zscores = _row_data(L, family, t_max, cfg)
    row_scores: dict[int, float] = {}
    zeta_scores: dict[int, float] = {}
    flagged: list[int] = []
    for i, n in enumerate(range(-n_modes, n_modes + 1)):
        row_scores[n] = float(raw[i])
        zeta_scores[n] = float(zscores[i])
        s = _TWO_PI * n / L
        if n != 0 and abs(s) <= t_max and zscores[i] < tol:
            flagged.append(n)
    if flagged and zeros is None:
        zeros = find_zeros(0.0, t_max, cfg)
    matched = []
    for n in flagged:
        s = _TWO_PI * n / L
        zero, dist = _nearest_zero(s, zeros or [])
        matched.append(MatchedZero(n, s, zero, dist))
    return CycleReport(
        L=L,
        row_scores=row_scores,
        zeta_scores=zeta_scores,
        flagged=flagged,
        matched_zeros=matched,
        verdict=bool(flagged),
        tol=tol,
        t_max=t_max,
    )


def _refine_cfg(cfg: EvalConfig, t_max: float) -> EvalConfig:
    # Bisection needs the quieter Euler-Maclaurin branch throughout.
    return replace(
        cfg,
        rs_threshold=min(max(cfg.rs_threshold, t_max + 16.0), VALIDATED_T_MAX),
        target_abs_error=max(cfg.target_abs_error, 1e-10),
    )


def scan(
    L_min: float,
    L_max: float,
    step: float,
    family: list[TestFunction],
    t_max: float = 60.0,
    tol: float = 1e-4,
    cfg: EvalConfig | None = None,
) -> ScanResult:
    """Profile the minimum zeta-scale row score over an L-grid and refine dips.

    A dip is a strict local minimum of the profile below the refinement
    trigger whose row frequency brackets a sign change of Z; it is then
    pinned by bisection in L to width 1e-9. Local minima without a sign
    change (near-misses of |zeta|) are left unrefined by design.
    """
    if not 0.0 < L_min < L_max:
        raise ValueError("need 0 < L_min < L_max")
    if step <= 0.0:
        raise ValueError("step must be positive")
    if cfg is None:
        cfg = EvalConfig()
    started = time.perf_counter()
    count = int(math.floor((L_max - L_min) / step + 1e-9)) + 1
    l_values = [L_min + i * step for i in range(count)]

    profile: list[tuple[float, float]] = []
    argmin_n: list[int] = []
    for L in l_values:
        n_modes, _, _, zscores = _row_data(L, family, t_max, cfg)
        best_score = math.inf
        best_n = 0
        for i, n in enumerate(range(-n_modes, n_modes + 1)):
            if n <= 0:
                continue  # scores are symmetric in n for real families
            if _TWO_PI * n / L > t_max:
                continue
            if zscores[i] < best_score:
                best_score = float(zscores[i])
                best_n = n
        if best_n == 0:
            raise ValueError(f"no row frequency below t_max = {t_max:g} at L = {L:g}")
        profile.append((L, best_score))
        argmin_n.append(best_n)

    rcfg = _refine_cfg(cfg, t_max)
    dips: list[Dip] = []
    for i in range(1, count - 1):
        score = profile[i][1]
        if score >= _REFINE_TRIGGER:
            continue
        if not (score < profile[i - 1][1] and score < profile[i + 1][1]):
            continue
        n_star = argmin_n[i]
        a, b = l_values[i - 1], l_values[i + 1]
        ga = riemann_siegel_Z(_TWO_PI * n_star / a, rcfg)
        gb = riemann_siegel_Z(_TWO_PI * n_star / b, rcfg)
        if ga * gb > 0.0:
            continue
        # Width 1e-9 alone leaves |Z| ~ (s/L) * width for high modes, so keep
        # halving until the frequency-space residual is pinned as well.
        last_gm = math.inf
        width_floor = 256.0 * np.finfo(float).eps * b
        for _ in range(90):
            if b - a <= width_floor:
                break
            if b - a <= _REFINE_WIDTH and last_gm < 5e-9:
                break
            mid = 0.5 * (a + b)
            gm = riemann_siegel_Z(_TWO_PI * n_star / mid, rcfg)
            last_gm = abs(gm)
            if gm == 0.0:
                a = b = mid
                break
            if ga * gm < 0.0:
                b, gb = mid, gm
            else:
                a, ga = mid, gm
        l_star = 0.5 * (a + b)
        s_star = _TWO_PI * n_star / l_star
        residual = abs(riemann_siegel_Z(s_star, rcfg))
        if dips and abs(dips[-1].L_star - l_star) < 1e-8 and dips[-1].n == n_star:
            continue
        dips.append(Dip(l_star, n_star, s_star, residual))

    dips.sort(key=lambda d: d.L_star)
    stats = {
        "grid_points": count,
        "dips_refined": len(dips),
        "seconds": time.perf_counter() - started,
    }
    return ScanResult(grid=profile, dips=dips, runtime_stats=stats)


def covering_stability(
    L_star: float,
    multiples: list[int],
    family: list[TestFunction],
    t_max: float = 60.0,
    tol: float = 1e-4,
    cfg: EvalConfig | None = None,
    zeros: list[ZetaZero] | None = None,
) -> list[CycleReport]:
    """detect at k * L_star for each k; the base length must already verify."""
    base = detect(L_star, family, t_max, tol, cfg, zeros)
    if not base.verdict:
        raise ValueError(f"detect({L_star:g}) is negative; nothing to propagate")
    return [
        base if k == 1 else detect(k * L_star, family, t_max, tol, cfg, zeros)
        for k in multiples
    ]


def complement_spectrum(report: CycleReport) -> list[float]:
    """Frequencies 2 pi n / L of the flagged rows, both signs, sorted."""
    if not report.verdict:
        raise EmptySpectrumError(f"no flagged rows at L = {report.L:g}")
    return sorted(_TWO_PI * n / report.L for n in report.flagged)


def svd_dip_score(matrix: DetectionMatrix) -> float:
    """Smallest singular value of the column-normalized detection matrix.

    A coarse cross-check of the row-score analysis: the dominant n = 0 row
    keeps the columns nearly parallel, the small angle between them is
    carried by the +-1 rows, and when those collapse the singular value dips
    sharply. It cannot separate closure from small angles; the row score can.
    """
    if matrix.N > 64:
        raise ValueError("SVD cross-check is restricted to N <= 64")
    norms = np.linalg.norm(matrix.entries, axis=0)
    if np.any(norms == 0.0):
        raise ValueError("zero column in detection matrix")
    return float(np.linalg.svd(matrix.entries / norms, compute_uv=False)[-1])


def build_matrix(
    L: float, family: list[TestFunction], t_max: float = 60.0, cfg: EvalConfig | None = None
) -> DetectionMatrix:
    if cfg is None:
        cfg = EvalConfig()
    n_modes, entries, _, _ = _row_data(L, family, t_max, cfg)
    return DetectionMatrix(L=L, N=n_modes, entries=entries)
