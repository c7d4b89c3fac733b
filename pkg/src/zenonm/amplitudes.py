"""Closed-form system amplitudes.

The excited-state survival amplitude is the inverse Laplace transform of

    alpha0 * [(s + lam)^2 + g^2] / [s^3 + 2 lam s^2 + (lam^2 + W + g^2) s + W lam]

with ``W = omega0_sq``, evaluated as a residue sum over the three roots of the
cubic denominator.  The two lower levels rotate unitarily into each other at
the control frequency ``g``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .model import ModelParams

__all__ = [
    "DegenerateRoots",
    "CubicRoots",
    "AmplitudeSet",
    "solve_cubic",
    "green_function",
    "survival_amplitude",
    "lower_amplitudes",
    "amplitudes_at",
]

# Pairwise root separations below this many units of lam trip the degeneracy
# flag; the residue formula divides by the separations.
DEGENERACY_TOL = 1e-6


class DegenerateRoots(RuntimeError):
    """Raised when the residue formula would divide by a near-zero separation."""


@dataclass(frozen=True)
class CubicRoots:
    """Roots of the Laplace-domain denominator, sorted (Re desc, Im asc)."""

    roots: tuple[complex, complex, complex]
    degeneracy_flag: bool


@dataclass(frozen=True)
class AmplitudeSet:
    """System amplitudes at a single time (bath carries the rest of the norm)."""

    alpha: complex
    beta: complex
    mu: complex
    time: float


def _cubic_coefficients(p: ModelParams) -> tuple[float, float, float]:
    b = 2.0 * p.lam
    c = p.lam**2 + p.omega0_sq + p.g**2
    d = p.omega0_sq * p.lam
    return b, c, d


def solve_cubic(p: ModelParams) -> CubicRoots:
    """Solve the monic cubic ``s^3 + b s^2 + c s + d`` for the model.

    Uses the trigonometric method when all three roots are real and Cardano's
    formula otherwise, then polishes each root with two Newton steps on the
    original cubic.  No eigensolver is involved; tests compare against a
    companion-matrix eigenvalue oracle.
    """
    b, c, d = _cubic_coefficients(p)

    # depressed form u^3 + pp u + qq, s = u - b/3
    pp = c - b * b / 3.0
    qq = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = -4.0 * pp**3 - 27.0 * qq**2

    shift = b / 3.0
    if pp == 0.0 and qq == 0.0:
        u = np.zeros(3, dtype=complex)
    elif disc > 0.0:
        # three distinct real roots
        m = 2.0 * np.sqrt(-pp / 3.0)
        arg = np.clip(3.0 * qq / (pp * m), -1.0, 1.0)
        theta = np.arccos(arg)
        k = np.arange(3)
        u = (m * np.cos((theta - 2.0 * np.pi * k) / 3.0)).astype(complex)
    else:
        # one real root plus a conjugate pair
        sq = np.sqrt(max(qq * qq / 4.0 + pp**3 / 27.0, 0.0))
        u1 = np.cbrt(-qq / 2.0 + sq) + np.cbrt(-qq / 2.0 - sq)
        imag = np.sqrt(max(3.0 * u1 * u1 + 4.0 * pp, 0.0)) / 2.0
        u = np.array([u1, -u1 / 2.0 + 1j * imag, -u1 / 2.0 - 1j * imag])

    s = u - shift

    # Newton polish on the original cubic; skip steps with a tiny derivative.
    for _ in range(2):
        f = ((s + b) * s + c) * s + d
        df = (3.0 * s + 2.0 * b) * s + c
        safe = np.abs(df) > 1e-30
        s = np.where(safe, s - f / np.where(safe, df, 1.0), s)

    order = np.lexsort((s.imag, -s.real))
    s = s[order]
    seps = [abs(s[0] - s[1]), abs(s[0] - s[2]), abs(s[1] - s[2])]
    flag = min(seps) < DEGENERACY_TOL * p.lam
    return CubicRoots(roots=(complex(s[0]), complex(s[1]), complex(s[2])), degeneracy_flag=flag)


def green_function(t, roots: CubicRoots, p: ModelParams) -> np.ndarray:
    """Excited-state survival amplitude G(t) from the three-residue sum.

    ``G(0) = 1`` and ``alpha(t) = alpha0 * G(t)``.  Raises
    :class:`DegenerateRoots` if the root set is flagged degenerate; use
    :func:`survival_amplitude` for the perturbed-parameter fallback.
    """
    if roots.degeneracy_flag:
        raise DegenerateRoots(
            "root separation below tolerance; perturb gamma and re-solve "
            "(see survival_amplitude)"
        )
    t = np.asarray(t, dtype=float)
    s = roots.roots
    out = np.zeros(t.shape, dtype=complex)
    for i in range(3):
        num = (s[i] + p.lam) ** 2 + p.g**2
        den = np.prod([s[i] - s[j] for j in range(3) if j != i])
        out += num / den * np.exp(s[i] * t)
    return out


def survival_amplitude(t, p: ModelParams, max_attempts: int = 5) -> np.ndarray:
    """G(t) with the degenerate-parameter fallback built in.

    Exactly degenerate root sets live on measure-zero parameter surfaces
    (e.g. critical damping at ``gamma = lam/2`` with ``g = 0``); those are
    handled by bumping ``gamma`` by one part in 1e9 per attempt rather than by
    confluent residues.  A decoupled bath (``omega0_sq`` ~ 0) short-circuits
    to ``G == 1``.
    """
    t = np.asarray(t, dtype=float)
    if p.omega0_sq <= 1e-12 * p.lam**2:
        # no dissipation channel: the excited level survives untouched
        return np.ones(t.shape, dtype=complex)
    trial = p
    roots = solve_cubic(trial)
    attempt = 0
    while roots.degeneracy_flag and attempt < max_attempts:
        attempt += 1
        trial = dataclasses.replace(p, gamma=p.gamma * (1.0 + 1e-9 * attempt))
        roots = solve_cubic(trial)
    return green_function(t, roots, trial)


def lower_amplitudes(t, beta0: complex, mu0: complex, p: ModelParams):
    """Amplitudes of the two lower levels: an exact two-level rotation.

    Returns ``beta(t) = beta0 cos(gt) - i mu0 sin(gt)`` and
    ``mu(t) = mu0 cos(gt) - i beta0 sin(gt)``; the pair norm
    ``|beta|^2 + |mu|^2`` is conserved exactly.
    """
    t = np.asarray(t, dtype=float)
    c = np.cos(p.g * t)
    s = np.sin(p.g * t)
    beta = beta0 * c - 1j * mu0 * s
    mu = mu0 * c - 1j * beta0 * s
    return beta, mu


def amplitudes_at(t: float, alpha0: complex, beta0: complex, mu0: complex,
                  p: ModelParams) -> AmplitudeSet:
    """System amplitudes at a single time for an arbitrary initial state."""
    green = survival_amplitude(np.asarray([t]), p)[0]
    beta, mu = lower_amplitudes(np.asarray([t]), beta0, mu0, p)
    return AmplitudeSet(alpha=alpha0 * green, beta=complex(beta[0]),
                        mu=complex(mu[0]), time=t)
