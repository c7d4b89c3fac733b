"""Bath-mode moments as double time integrals over the survival amplitude.

The three mode sums (ground population, metastable population, and their
cross coherence) are double integrals of the form

    W * int_0^t int_0^t exp(-lam |t1 - t2|) G(t1) conj(G(t2))
                    * trig(g (t - t1)) * trig(g (t - t2)) dt1 dt2

with ``W = omega0_sq``.  The coherence carries an extra factor ``i``: writing
the mode amplitudes via the symmetric/antisymmetric decoupling of the two
lower levels gives ``beta_j = -i g_j * (cos integral)`` but
``mu_j = -g_j * (sin integral)``, so ``sum_j beta_j conj(mu_j)`` picks up
``(-i)(-1)^* = i`` relative to the bare cos-sin integral.  The independent
mode-resolved integrator in :mod:`zenonm.oracle` confirms this phase.

Two evaluation routes exist: an O(n^2) direct trapezoid at a single time
(:func:`bath_moments_bruteforce`) and an O(n)-overall separable scheme for a
whole grid (:func:`bath_moments_fast`).  Both implement the *same* composite
trapezoid rule, so they agree to rounding, not merely to quadrature order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .model import ModelParams, TimeGrid

__all__ = [
    "GridTooCoarse",
    "OverflowRiskWarning",
    "BathMoments",
    "BathMomentsTable",
    "bath_moments_bruteforce",
    "bath_moments_fast",
]

MIN_GRID_POINTS = 64

# Beyond this many decay times the e^{+lam t} prefix integrals of the naive
# separable expansion would overflow; the recursion below is the rescaled
# form of the same algebra and never forms a growing exponential.
RESCALE_HORIZON = 500.0


class GridTooCoarse(ValueError):
    """Raised when a moment integral is requested on fewer than 64 points."""


class OverflowRiskWarning(UserWarning):
    """Signals that the rescaled accumulation path is load-bearing (lam*t > 500)."""


@dataclass(frozen=True)
class BathMoments:
    """Mode sums at one time, normalised to a unit initial excited amplitude."""

    pop_b: float
    pop_m: float
    coh_bm: complex
    time: float


@dataclass(frozen=True)
class BathMomentsTable:
    """Bath moments on a full grid; arrays are read-only after construction."""

    times: np.ndarray
    pop_b: np.ndarray
    pop_m: np.ndarray
    coh_bm: np.ndarray

    def at(self, k: int) -> BathMoments:
        return BathMoments(pop_b=float(self.pop_b[k]), pop_m=float(self.pop_m[k]),
                           coh_bm=complex(self.coh_bm[k]), time=float(self.times[k]))


def _trapezoid_weights(n: int, h: float) -> np.ndarray:
    w = np.full(n, h)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def bath_moments_bruteforce(t: float, green: np.ndarray, p: ModelParams,
                            n: int | None = None) -> BathMoments:
    """O(n^2) trapezoid evaluation of the three double integrals at time ``t``.

    Parameters
    ----------
    t : float
        Final time; ``green`` must sample ``G`` on a uniform grid over [0, t].
    green : np.ndarray
        Survival amplitude on that grid (``green[0] == G(0) == 1``).
    p : ModelParams
        Model parameters (supplies ``omega0_sq``, ``lam``, ``g``).
    n : int, optional
        Expected grid size; checked against ``len(green)`` when given.
    """
    green = np.asarray(green)
    if n is not None and n != green.size:
        raise ValueError(f"n={n} does not match len(green)={green.size}")
    if t == 0.0:
        return BathMoments(0.0, 0.0, 0j, 0.0)
    if green.size < MIN_GRID_POINTS:
        raise GridTooCoarse(
            f"need at least {MIN_GRID_POINTS} grid points, got {green.size}")

    grid = np.linspace(0.0, t, green.size)
    w = _trapezoid_weights(green.size, grid[1] - grid[0])
    kernel = np.exp(-p.lam * np.abs(grid[:, None] - grid[None, :]))
    cos_out = np.cos(p.g * (t - grid))
    sin_out = np.sin(p.g * (t - grid))
    weighted = (w * green)[:, None] * (w * np.conj(green))[None, :] * kernel

    w0 = p.omega0_sq
    pop_b = w0 * np.real(cos_out @ weighted @ cos_out)
    pop_m = w0 * np.real(sin_out @ weighted @ sin_out)
    coh = 1j * w0 * (cos_out @ weighted @ sin_out)
    return BathMoments(pop_b=float(pop_b), pop_m=float(pop_m),
                       coh_bm=complex(coh), time=float(t))


def _damped_prefix(x: np.ndarray, decay: float) -> np.ndarray:
    """L[i] = sum_{j<=i} decay^(i-j) x[j], computed by a stable recursion."""
    return lfilter([1.0], [1.0, -decay], x)


def _damped_prefix_strict(x: np.ndarray, decay: float) -> np.ndarray:
    """M[i] = sum_{j<i} decay^(i-j) x[j] (diagonal excluded)."""
    return lfilter([0.0, decay], [1.0, -decay], x)


def _pair_sums(phi: np.ndarray, psi: np.ndarray, decay_step: float,
               decay_from_zero: np.ndarray, h: float) -> np.ndarray:
    """Trapezoid double sum ``sum w_i w_j K_ij phi_i psi_j`` for every prefix.

    Exactly reproduces the brute-force composite trapezoid (endpoint-halved
    weights included) by splitting the kernel at the diagonal and folding both
    triangles into damped prefix recursions; O(n) overall.
    """
    lower = _damped_prefix(psi, decay_step)          # sum_{j<=i} K_ij psi_j
    upper = _damped_prefix_strict(phi, decay_step)   # sum_{i<j} K_ji phi_i
    lower_phi = _damped_prefix(phi, decay_step)

    full = np.cumsum(phi * lower) + np.cumsum(psi * upper)
    # endpoint-weight corrections: rows/columns i=0, i=k enter with half weight
    row0 = phi[0] * np.cumsum(decay_from_zero * psi)
    col0 = psi[0] * np.cumsum(decay_from_zero * phi)
    rowk = phi * lower
    colk = psi * lower_phi
    corners = 0.25 * (phi[0] * psi[0]
                      + (phi[0] * psi + psi[0] * phi) * decay_from_zero
                      + phi * psi)
    out = (full - 0.5 * (row0 + col0 + rowk + colk) + corners) * h * h
    out[0] = 0.0
    return out


def bath_moments_fast(grid: TimeGrid, green: np.ndarray, p: ModelParams) -> BathMomentsTable:
    """All three bath moments at every grid point, O(n) overall.

    Expands the trig factors of the double integrals by angle-difference
    identities into combinations of four time-independent pair sums, each
    accumulated by exponentially damped prefix recursions.  Agrees with
    :func:`bath_moments_bruteforce` to rounding on the same grid.
    """
    green = np.asarray(green, dtype=complex)
    if green.size != grid.n:
        raise ValueError(f"green has {green.size} samples for a {grid.n}-point grid")
    if grid.n < MIN_GRID_POINTS:
        raise GridTooCoarse(f"need at least {MIN_GRID_POINTS} grid points, got {grid.n}")
    if p.lam * grid.t_max > RESCALE_HORIZON:
        warnings.warn(
            "lam * t_max exceeds the naive prefix-integral horizon; "
            "rescaled damped-recursion accumulation in use",
            OverflowRiskWarning,
            stacklevel=2,
        )

    times = grid.times
    h = grid.step
    decay_step = np.exp(-p.lam * h)
    decay_from_zero = np.exp(-p.lam * times)
    cos_g = np.cos(p.g * times)
    sin_g = np.sin(p.g * times)

    phi = {"c": green * cos_g, "s": green * sin_g}
    psi = {"c": np.conj(green) * cos_g, "s": np.conj(green) * sin_g}
    pair = {
        u + v: p.omega0_sq * _pair_sums(phi[u], psi[v], decay_step, decay_from_zero, h)
        for u in "cs"
        for v in "cs"
    }

    cross = pair["cs"] + pair["sc"]
    pop_b = np.real(cos_g**2 * pair["cc"] + cos_g * sin_g * cross + sin_g**2 * pair["ss"])
    pop_m = np.real(sin_g**2 * pair["cc"] - cos_g * sin_g * cross + cos_g**2 * pair["ss"])
    coh = 1j * (cos_g * sin_g * (pair["cc"] - pair["ss"])
                - cos_g**2 * pair["cs"] + sin_g**2 * pair["sc"])

    for arr in (times, pop_b, pop_m, coh):
        arr.flags.writeable = False
    return BathMomentsTable(times=times, pop_b=pop_b, pop_m=pop_m, coh_bm=coh)
