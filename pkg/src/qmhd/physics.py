"""Ideal-gas MHD state algebra: conversions, wave speeds, ideal flux tensors.

Magnetic fields are in rationalized units throughout (magnetic pressure
``B^2/2``); total energy per unit volume is

    E = p/(gamma - 1) + rho*|u|^2/2 + |B|^2/2.

All functions here are pure and pointwise; grid-wide array variants used by
the stepping loop live in the compiled kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class PositivityError(ValueError):
    """A state lost positivity; carries the offending location if known.

    The solver neither floors nor clips: a non-positive density or pressure
    aborts the run loudly so scheme bugs cannot hide behind a limiter.
    """

    def __init__(self, quantity: str, value: float, where: tuple | None = None,
                 time: float | None = None, step: int | None = None):
        self.quantity = quantity
        self.value = value
        self.where = where
        self.time = time
        self.step = step
        loc = f" at cell {where}" if where is not None else ""
        at = f", t={time:.6g}" if time is not None else ""
        st = f", step {step}" if step is not None else ""
        super().__init__(f"non-positive {quantity} ({value:.6g}){loc}{at}{st}")


class NonPositiveDensityError(PositivityError):
    def __init__(self, value, where=None, time=None, step=None):
        super().__init__("density", value, where, time, step)


class NonPositivePressureError(PositivityError):
    def __init__(self, value, where=None, time=None, step=None):
        super().__init__("pressure", value, where, time, step)


@dataclass(frozen=True)
class GasParams:
    """Ideal-gas and transport-closure numbers.

    R is fixed at 1 in code units, so temperature is p/rho.  Pr and Sc feed
    the artificial heat-conduction and viscosity closures.
    """

    gamma: float
    R: float = 1.0
    Pr: float = 1.0
    Sc: float = 1.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"adiabatic index must exceed 1, got {self.gamma}")
        if not (self.Pr > 0.0 and self.Sc > 0.0):
            raise ValueError("Pr and Sc must be positive")


def _vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    return a


@dataclass
class PrimitiveState:
    """(rho, u, p, B) with positive density and pressure."""

    rho: float
    u: np.ndarray
    p: float
    B: np.ndarray

    def __post_init__(self):
        self.u = _vec3(self.u)
        self.B = _vec3(self.B)
        if not self.rho > 0.0:
            raise NonPositiveDensityError(self.rho)
        if not self.p > 0.0:
            raise NonPositivePressureError(self.p)


@dataclass
class ConservedState:
    """(rho, momentum, total energy, B)."""

    rho: float
    m: np.ndarray
    en: float
    B: np.ndarray

    def __post_init__(self):
        self.m = _vec3(self.m)
        self.B = _vec3(self.B)


def to_conserved(w: PrimitiveState, gas: GasParams) -> ConservedState:
    """Primitive -> conserved under the ideal-gas closure."""
    en = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * float(w.u @ w.u) + 0.5 * float(w.B @ w.B)
    return ConservedState(rho=w.rho, m=w.rho * w.u, en=en, B=w.B.copy())


def to_primitive(U: ConservedState, gas: GasParams) -> PrimitiveState:
    """Conserved -> primitive; raises on non-positive density or pressure."""
    if not U.rho > 0.0:
        raise NonPositiveDensityError(U.rho)
    u = U.m / U.rho
    p = (gas.gamma - 1.0) * (U.en - 0.5 * float(U.m @ U.m) / U.rho - 0.5 * float(U.B @ U.B))
    if not p > 0.0:
        raise NonPositivePressureError(p)
    return PrimitiveState(rho=U.rho, u=u, p=p, B=U.B.copy())


def total_enthalpy(w: PrimitiveState, gas: GasParams) -> float:
    """Total specific enthalpy (E + p)/rho."""
    en = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * float(w.u @ w.u) + 0.5 * float(w.B @ w.B)
    return (en + w.p) / w.rho


def mhd_wave_speeds(w: PrimitiveState, gas: GasParams, axis: int) -> tuple[float, float, float]:
    """(slow, Alfven, fast) speeds along the given axis (0=x, 1=y, 2=z).

    All three come from the same discriminant, so the ordering
    slow <= Alfven <= fast holds exactly.
    """
    a2 = gas.gamma * w.p / w.rho
    b2 = float(w.B @ w.B) / w.rho
    bn2 = w.B[axis] ** 2 / w.rho
    s = a2 + b2
    disc = max(s * s - 4.0 * a2 * bn2, 0.0)
    cf2 = 0.5 * (s + np.sqrt(disc))
    # product of the squared roots is a2*bn2; dividing avoids the
    # cancellation the direct 0.5*(s - sqrt(disc)) form suffers
    cs2 = a2 * bn2 / cf2 if cf2 > 0.0 else 0.0
    return float(np.sqrt(cs2)), float(np.sqrt(bn2)), float(np.sqrt(cf2))


def fast_magnetosonic_speed(w: PrimitiveState, gas: GasParams, axis: int) -> float:
    """Fast magnetosonic speed along the given axis."""
    return mhd_wave_speeds(w, gas, axis)[2]


def ideal_fluxes(w: PrimitiveState, gas: GasParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unregularized flux tensors (T, Q, Tm) of the ideal system.

    T[i, j] is the flux of i-momentum along j; Q[j] the energy flux along j,
    u_j*(E + p + B^2/2) - B_j*(u.B), i.e. advection of total energy plus
    total pressure work plus the Poynting part; Tm[i, j] = u_j B_i - u_i B_j
    the induction flux (antisymmetric).  The dissipative contributions
    (viscous stress, heat flux) are identically zero here; the
    regularization module owns every dissipative term.
    """
    u, B = w.u, w.B
    b2 = float(B @ B)
    ub = float(u @ B)
    en = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * float(u @ u) + 0.5 * b2
    T = w.rho * np.outer(u, u) + (w.p + 0.5 * b2) * np.eye(3) - np.outer(B, B)
    Q = (en + w.p + 0.5 * b2) * u - ub * B
    Tm = np.outer(B, u) - np.outer(u, B)  # Tm[i, j] = u_j B_i - u_i B_j
    return T, Q, Tm
