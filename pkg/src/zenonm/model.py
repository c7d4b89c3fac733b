"""Physical parameters, spectral density, and memory kernels.

The model is a three-level system: an excited level decays into the ground
level through a structured bosonic environment with a Lorentzian spectral
density, while the ground level is coherently coupled (strength ``g``) to a
third, metastable level.  Everything downstream parametrises time in units of
the inverse spectral width, i.e. all reported times are ``lam * t`` and all
rates are multiples of ``lam``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "CavityRegime",
    "TimeGrid",
    "lorentzian_density",
    "memory_kernel",
    "dressed_kernel",
]

GOOD_CAVITY_RATIO = 10.0
BAD_CAVITY_RATIO = 0.1


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the model, in units where ``lam`` sets the scale.

    Parameters
    ----------
    lam : float
        Spectral width of the Lorentzian bath (inverse time). Must be > 0.
    gamma : float
        Dissipation rate of the bare excited-to-ground decay. Must be >= 0.
    g : float
        Coherent coupling strength between the two lower levels. Must be >= 0.
    delta0 : float
        Transition frequency of the decaying pair; it only enters as the
        center of the Lorentzian and cancels from all reduced dynamics.
        Kept so a discretized bath can be centered correctly.

    Notes
    -----
    The effective vacuum Rabi scale ``omega0_sq = lam * gamma / 2`` is always
    derived from ``lam`` and ``gamma``; it is deliberately not a free field so
    inconsistent inputs are impossible.
    """

    lam: float = 1.0
    gamma: float = 0.0
    g: float = 0.0
    delta0: float = 0.0

    def __post_init__(self) -> None:
        if not self.lam > 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if self.g < 0.0:
            raise ValueError(f"g must be nonnegative, got {self.g}")

    @property
    def omega0_sq(self) -> float:
        """Squared coupling scale ``lam * gamma / 2`` (rate squared)."""
        return self.lam * self.gamma / 2.0


@dataclass(frozen=True)
class CavityRegime:
    """Named dissipation regime, expressed through the ratio ``gamma / lam``.

    ``good`` corresponds to ratio 10 (slow spectral width, strong memory),
    ``bad`` to ratio 1/10 (fast bath, nearly Markovian decay), and ``custom``
    carries a user-chosen ratio.
    """

    tag: str
    ratio: float

    def __post_init__(self) -> None:
        if self.tag == "good":
            if self.ratio != GOOD_CAVITY_RATIO:
                raise ValueError("good cavity fixes gamma/lam = 10")
        elif self.tag == "bad":
            if self.ratio != BAD_CAVITY_RATIO:
                raise ValueError("bad cavity fixes gamma/lam = 1/10")
        elif self.tag == "custom":
            if self.ratio < 0.0:
                raise ValueError("gamma/lam must be nonnegative")
        else:
            raise ValueError(f"unknown regime tag {self.tag!r}")

    @classmethod
    def good(cls) -> "CavityRegime":
        return cls("good", GOOD_CAVITY_RATIO)

    @classmethod
    def bad(cls) -> "CavityRegime":
        return cls("bad", BAD_CAVITY_RATIO)

    @classmethod
    def custom(cls, ratio: float) -> "CavityRegime":
        return cls("custom", float(ratio))

    def params(self, g: float, lam: float = 1.0, delta0: float = 0.0) -> ModelParams:
        """Build :class:`ModelParams` for this regime and coupling ``g``."""
        return ModelParams(lam=lam, gamma=self.ratio * lam, g=g, delta0=delta0)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid on ``[0, t_max]`` with ``n`` points (hashable)."""

    t_max: float
    n: int

    def __post_init__(self) -> None:
        if not self.t_max > 0.0:
            raise ValueError("t_max must be positive")
        if self.n < 2:
            raise ValueError("grid needs at least two points")

    @property
    def step(self) -> float:
        return self.t_max / (self.n - 1)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n)


def lorentzian_density(omega, p: ModelParams):
    """Spectral density ``J(omega)`` of the bath.

    A Lorentzian of half-width ``lam`` centered on ``delta0``, normalised so
    that its total weight is ``omega0_sq``.  Strictly positive and symmetric
    about the center; accepts scalars or arrays.
    """
    omega = np.asarray(omega, dtype=float)
    out = p.omega0_sq * p.lam / (np.pi * ((omega - p.delta0) ** 2 + p.lam**2))
    return out if out.ndim else float(out)


def memory_kernel(tau, p: ModelParams):
    """Bath correlation function ``f(tau) = omega0_sq * exp(-lam |tau|)``.

    This is the Fourier transform of the Lorentzian density relative to its
    center; for the resonant (centered) case implemented here it is real and
    even in ``tau``.
    """
    tau = np.asarray(tau, dtype=float)
    out = p.omega0_sq * np.exp(-p.lam * np.abs(tau))
    return out if out.ndim else float(out)


def dressed_kernel(tau, p: ModelParams):
    """Control-dressed kernel ``F(tau) = f(tau) * cos(g tau)`` (real, even)."""
    tau = np.asarray(tau, dtype=float)
    out = memory_kernel(tau, p) * np.cos(p.g * tau)
    return out if out.ndim else float(out)
