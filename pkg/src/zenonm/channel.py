"""Reduced 3x3 channel: state assembly, trace distance, pair trajectories.

The reduced map is linear in the initial two-level block and is fully
described by scalar coefficient tables on a time grid (survival amplitude,
control rotation, bath moments), so no superoperator matrix is ever built.
Trace distances use a closed-form eigenvalue routine for 3x3 Hermitian
matrices (polished by two Newton steps on the characteristic cubic) because
the direction sweep evaluates it on every grid point for every sampled
direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .amplitudes import survival_amplitude
from .bath import BathMomentsTable, bath_moments_fast
from .model import ModelParams, TimeGrid

__all__ = [
    "InvalidInitialState",
    "DensityMatrix3",
    "ChannelCoefficients",
    "channel_coefficients",
    "evolve_state",
    "hermitian_eigenvalues_3x3",
    "trace_distance",
    "trace_distance_trajectory",
    "as_direction",
]


class InvalidInitialState(ValueError):
    """Raised when an initial two-level block is not a valid density matrix."""


@dataclass(frozen=True)
class DensityMatrix3:
    """A 3x3 density matrix over the basis (excited, ground, metastable)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)  # own copy, never the caller's
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def validate(self, hermitian_tol: float = 1e-10, trace_tol: float = 1e-10,
                 psd_tol: float = 1e-8) -> "DensityMatrix3":
        m = self.matrix
        if np.abs(m - m.conj().T).max() > hermitian_tol:
            raise ValueError("matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > trace_tol or abs(np.trace(m).imag) > trace_tol:
            raise ValueError("trace differs from 1 beyond tolerance")
        if hermitian_eigenvalues_3x3(m).min() < -psd_tol:
            raise ValueError("matrix has an eigenvalue below the PSD tolerance")
        return self

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))


@dataclass(frozen=True)
class ChannelCoefficients:
    """Scalar functions on a grid that fully define the reduced channel."""

    params: ModelParams
    grid: TimeGrid
    green: np.ndarray       # survival amplitude G(t_k)
    cos_gt: np.ndarray
    sin_gt: np.ndarray
    moments: BathMomentsTable  # unit initial excited amplitude

    def __post_init__(self) -> None:
        for arr in (self.green, self.cos_gt, self.sin_gt):
            arr.flags.writeable = False


@lru_cache(maxsize=64)
def channel_coefficients(p: ModelParams, grid: TimeGrid) -> ChannelCoefficients:
    """Build (and cache) the coefficient tables for one parameter set and grid.

    Direction sampling reuses the cached tables: the channel is linear, so
    the same moments serve every initial state.
    """
    times = grid.times
    green = survival_amplitude(times, p)
    moments = bath_moments_fast(grid, green, p)
    return ChannelCoefficients(
        params=p,
        grid=grid,
        green=green,
        cos_gt=np.cos(p.g * times),
        sin_gt=np.sin(p.g * times),
        moments=moments,
    )


def _check_initial_block(rho0: np.ndarray) -> np.ndarray:
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (2, 2):
        raise InvalidInitialState(f"initial block must be 2x2, got {rho0.shape}")
    if np.abs(rho0 - rho0.conj().T).max() > 1e-10:
        raise InvalidInitialState("initial block is not Hermitian")
    if abs(np.trace(rho0) - 1.0) > 1e-10:
        raise InvalidInitialState("initial block trace must be 1")
    eig_low = min(np.linalg.eigvalsh(rho0))
    if eig_low < -1e-8:
        raise InvalidInitialState("initial block is not positive semidefinite")
    return rho0


def evolve_state(rho0_block: np.ndarray, coeffs: ChannelCoefficients, k: int) -> DensityMatrix3:
    """Evolve an initial two-level block to the 3x3 state at grid index ``k``.

    The metastable level starts empty; populations fed through the bath scale
    with the initial excited population, coherences with the initial
    excited-ground coherence, and the ground-block part rotates unitarily.
    """
    rho0 = _check_initial_block(rho0_block)
    p_aa = float(np.real(rho0[0, 0]))
    p_bb = float(np.real(rho0[1, 1]))
    p_ab = complex(rho0[0, 1])

    green = coeffs.green[k]
    c = coeffs.cos_gt[k]
    s = coeffs.sin_gt[k]
    mom = coeffs.moments.at(k)

    out = np.zeros((3, 3), dtype=complex)
    out[0, 0] = np.abs(green) ** 2 * p_aa
    out[0, 1] = green * c * p_ab
    out[0, 2] = 1j * green * s * p_ab
    out[1, 1] = c * c * p_bb + mom.pop_b * p_aa
    out[2, 2] = s * s * p_bb + mom.pop_m * p_aa
    out[1, 2] = 1j * c * s * p_bb + mom.coh_bm * p_aa
    out[1, 0] = np.conj(out[0, 1])
    out[2, 0] = np.conj(out[0, 2])
    out[2, 1] = np.conj(out[1, 2])
    return DensityMatrix3(out)


def _eig3_entries(a, b, c, d, e, f):
    """Eigenvalues of Hermitian [[a, d, e], [d*, b, f], [e*, f*, c]].

    Broadcasts over arbitrarily shaped entry arrays (a, b, c real).  Uses the
    trigonometric closed form for the shifted traceless matrix, then two
    Newton steps on the characteristic cubic.
    """
    q = (a + b + c) / 3.0
    p1 = np.abs(d) ** 2 + np.abs(e) ** 2 + np.abs(f) ** 2
    p2 = (a - q) ** 2 + (b - q) ** 2 + (c - q) ** 2 + 2.0 * p1
    p = np.sqrt(p2 / 6.0)
    scale = np.where(p > 0.0, p, 1.0)

    an, bn, cn = (a - q) / scale, (b - q) / scale, (c - q) / scale
    dn, en, fn = d / scale, e / scale, f / scale
    det_shift = (an * bn * cn + 2.0 * np.real(dn * fn * np.conj(en))
                 - an * np.abs(fn) ** 2 - bn * np.abs(en) ** 2 - cn * np.abs(dn) ** 2)
    phi = np.arccos(np.clip(det_shift / 2.0, -1.0, 1.0)) / 3.0

    e1 = q + 2.0 * p * np.cos(phi)
    e3 = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    e2 = 3.0 * q - e1 - e3

    # characteristic cubic x^3 - tr x^2 + m2 x - det for the Newton polish
    tr = a + b + c
    m2 = (a * b + a * c + b * c
          - np.abs(d) ** 2 - np.abs(e) ** 2 - np.abs(f) ** 2)
    det = (a * b * c + 2.0 * np.real(d * f * np.conj(e))
           - a * np.abs(f) ** 2 - b * np.abs(e) ** 2 - c * np.abs(d) ** 2)
    eigs = [e1, e2, e3]
    for idx in range(3):
        x = eigs[idx]
        for _ in range(2):
            fx = ((x - tr) * x + m2) * x - det
            dfx = (3.0 * x - 2.0 * tr) * x + m2
            ok = np.abs(dfx) > 1e-30
            x = np.where(ok, x - fx / np.where(ok, dfx, 1.0), x)
        eigs[idx] = x
    return eigs[0], eigs[1], eigs[2]


def hermitian_eigenvalues_3x3(m: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of stacked 3x3 Hermitian matrices, ascending."""
    m = np.asarray(m, dtype=complex)
    e1, e2, e3 = _eig3_entries(m[..., 0, 0].real, m[..., 1, 1].real, m[..., 2, 2].real,
                               m[..., 0, 1], m[..., 0, 2], m[..., 1, 2])
    return np.sort(np.stack([e1, e2, e3], axis=-1), axis=-1)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix3):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def trace_distance(rho1, rho2) -> float:
    """Half the trace norm of the difference of two density matrices."""
    diff = _as_matrix(rho1) - _as_matrix(rho2)
    eigs = hermitian_eigenvalues_3x3(diff)
    return float(0.5 * np.abs(eigs).sum())


def as_direction(r) -> np.ndarray:
    """Validate a unit Bloch vector (norm within 1e-12 of one)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("a Bloch direction is a 3-vector")
    if abs(np.linalg.norm(r) - 1.0) > 1e-12:
        raise ValueError("Bloch direction must have unit norm")
    return r


def _pair_difference_entries(directions: np.ndarray, coeffs: ChannelCoefficients):
    """Entries of the evolved difference of the antipodal pair for each direction.

    By linearity the pair (1 +- r.sigma)/2 evolves to a difference whose
    entries are linear in r; shapes broadcast as (n_directions, n_times).
    """
    rx = directions[:, 0:1]
    ry = directions[:, 1:2]
    rz = directions[:, 2:3]
    r_minus = rx - 1j * ry

    g2 = (np.abs(coeffs.green) ** 2)[None, :]
    c = coeffs.cos_gt[None, :]
    s = coeffs.sin_gt[None, :]
    pop_b = coeffs.moments.pop_b[None, :]
    pop_m = coeffs.moments.pop_m[None, :]
    coh = coeffs.moments.coh_bm[None, :]
    green = coeffs.green[None, :]

    a = g2 * rz
    b = (pop_b - c * c) * rz
    cc = (pop_m - s * s) * rz
    d = green * c * r_minus
    e = 1j * green * s * r_minus
    f = (coh - 1j * c * s) * rz
    return a, b, cc, d, e, f


def _pair_trajectories(directions: np.ndarray, coeffs: ChannelCoefficients,
                       chunk: int = 128) -> np.ndarray:
    """Trace-distance trajectories for many directions, (n_dir, n_times)."""
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    out = np.empty((directions.shape[0], coeffs.grid.n))
    for start in range(0, directions.shape[0], chunk):
        block = directions[start:start + chunk]
        a, b, cc, d, e, f = _pair_difference_entries(block, coeffs)
        e1, e2, e3 = _eig3_entries(a, b, cc, d, e, f)
        out[start:start + chunk] = 0.5 * (np.abs(e1) + np.abs(e2) + np.abs(e3))
    return out


def trace_distance_trajectory(direction, coeffs: ChannelCoefficients) -> np.ndarray:
    """D(t_k) for the antipodal pure pair selected by a Bloch direction.

    The pair (1 + r.sigma)/2 versus (1 - r.sigma)/2 starts orthogonal in the
    qubit block, so the sequence begins at 1 and never exceeds it.
    """
    r = as_direction(direction)
    return _pair_trajectories(r[None, :], coeffs)[0]
