"""The dilation Laplacian's quotient spectrum over the zero set and the
negativity predicate equivalent to the critical-line statement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .schwartz import TestFunction, apply_H, apply_one_plus_H, mellin_psi
from .specfun import ZetaZero

__all__ = [
    "QuotientEigenvalue",
    "conjugated_delta_multiplier",
    "delta_eigenvalue",
    "delta_on_test_function",
    "quotient_spectrum",
    "rh_predicate",
]

_IM_TOL = 1e-12


def delta_eigenvalue(rho: complex) -> complex:
    """Eigenvalue (rho - 1/2)^2 - 1/4 attached to a zero rho."""
    rho = complex(rho)
    return (rho - 0.5) ** 2 - 0.25


def conjugated_delta_multiplier(z: complex) -> complex:
    """-z(1-z), the multiplication operator conjugate to the Laplacian."""
    z = complex(z)
    value = -z * (1.0 - z)
    check = delta_eigenvalue(z)
    if abs(value - check) > 1e-13 * (1.0 + abs(z) ** 2):
        raise ArithmeticError(
            f"multiplier identity violated at z = {z}: {value} vs {check}"
        )
    return value


def rh_predicate(rho: complex) -> bool:
    """True iff the eigenvalue at rho is real and nonpositive.

    Equivalent to rho lying in [0, 1] or on the half-line axis Re = 1/2,
    decided here purely through the eigenvalue arithmetic.
    """
    e = delta_eigenvalue(rho)
    return abs(e.imag) <= _IM_TOL and e.real <= 0.0


@dataclass(frozen=True)
class QuotientEigenvalue:
    rho: complex
    value: complex
    multiplicity: int

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be a positive integer")
        if abs(self.value - delta_eigenvalue(self.rho)) > 1e-14 * (1.0 + abs(self.value)):
            raise ValueError("eigenvalue is not recomputable from rho")


def quotient_spectrum(zeros: list[ZetaZero]) -> list[QuotientEigenvalue]:
    """Eigenvalue data over cached critical zeros: all real, all negative."""
    out = []
    for z in zeros:
        rho = 0.5 + 1j * z.ordinate
        out.append(QuotientEigenvalue(rho, delta_eigenvalue(rho), z.multiplicity))
    return out


_CHECK_POINTS = np.linspace(-9.5, 9.5, 20)


def delta_on_test_function(g: TestFunction) -> tuple[TestFunction, float]:
    """Apply H(1+H) symbolically and verify the Mellin multiplier -(z^2+1/4).

    Returns the image and the worst absolute residual of
    psi_image(z) + (z^2 + 1/4) psi_g(z) over 20 real sample points; raises
    if the residual exceeds 1e-8.
    """
    image = apply_H(apply_one_plus_H(g))
    worst = 0.0
    for z in _CHECK_POINTS:
        lhs = mellin_psi(image, z).psi
        rhs = -(z * z + 0.25) * mellin_psi(g, z).psi
        worst = max(worst, abs(lhs - rhs))
    if worst > 1e-8:
        raise ArithmeticError(
            f"Mellin multiplier check failed for {g.label or 'input'}: {worst:.3g}"
        )
    return image, worst


def negativity_rows(zeros: list[ZetaZero]) -> list[tuple[float, float, bool]]:
    """(ordinate, eigenvalue, negativity_ok) rows for reporting."""
    rows = []
    for q in quotient_spectrum(zeros):
        ok = abs(q.value.imag) <= _IM_TOL and q.value.real < 0.0
        rows.append((q.rho.imag, q.value.real, ok))
    return rows


def _segment_or_axis(rho: complex) -> bool:
    # reference membership test, kept separate from the predicate algebra
    if rho.imag == 0.0:
        return 0.0 <= rho.real <= 1.0
    return rho.real == 0.5


# re-exported so callers can cross-check without reimplementing it
direct_membership = _segment_or_axis
