"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from zenonm import ModelParams


def two_level_survival(t: np.ndarray, p: ModelParams) -> np.ndarray:
    """Damped two-level survival amplitude, valid only for g = 0.

    Independent reference derived by inverting the factored two-root
    transform (s + lam) / (s^2 + lam s + omega0_sq):

        exp(-lam t / 2) * (cosh(d t / 2) + (lam / d) sinh(d t / 2)),
        d = sqrt(lam^2 - 4 omega0_sq)

    with d taken complex so both over- and underdamped regimes are covered.
    """
    d = np.sqrt(complex(p.lam**2 - 4.0 * p.omega0_sq))
    t = np.asarray(t, dtype=float)
    if abs(d) < 1e-8 * p.lam:
        # critically damped limit of cosh + (lam/d) sinh
        return np.exp(-p.lam * t / 2.0) * (1.0 + p.lam * t / 2.0)
    return np.exp(-p.lam * t / 2.0) * (np.cosh(d * t / 2.0)
                                       + (p.lam / d) * np.sinh(d * t / 2.0))


def random_density_matrix(rng: np.random.Generator, dim: int = 3) -> np.ndarray:
    """Random full-rank density matrix from a Ginibre draw."""
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_qubit_block(rng: np.random.Generator) -> np.ndarray:
    """Random valid 2x2 initial block (mixed states included)."""
    return random_density_matrix(rng, dim=2)
