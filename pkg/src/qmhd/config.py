"""Run configuration shared by the problem catalog, workbench and CLI."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, fields, replace
from typing import Any

VALID_FORMATS = ("csv", "vtk")
VALID_BC = ("periodic", "fixed", "zero-gradient")


@dataclass
class RunConfig:
    """Everything needed to launch a run.

    Problem builders fill physics defaults; file and CLI overrides are layered
    on top by the workbench (defaults < file < flags).
    """

    problem: str
    n: int
    ny: int | None = None           # builder default when None
    gamma: float = 5.0 / 3.0
    alpha: float = 0.5
    beta: float = 0.2
    sc: float = 1.0
    pr: float = 1.0
    t_end: float = 1.0
    bc_x: str = "periodic"
    bc_y: str = "periodic"
    outdir: str | None = None       # None -> $QMHD_OUT or ./qmhd-out
    cadence_steps: int | None = None
    cadence_time: float | None = None
    formats: tuple[str, ...] = ("csv",)
    workers: int | None = None

    def validate(self) -> "RunConfig":
        """Range-check every field; returns self for chaining."""
        if self.n < 1:
            raise ValueError(f"n: resolution must be positive, got {self.n}")
        if self.ny is not None and self.ny < 1:
            raise ValueError(f"ny: resolution must be positive, got {self.ny}")
        if not self.gamma > 1.0:
            raise ValueError(f"gamma: must exceed 1, got {self.gamma}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha: must be in (0, 1], got {self.alpha}")
        if self.alpha > 0.5:
            warnings.warn(f"alpha={self.alpha} is above the usual 0.1-0.5 range",
                          stacklevel=2)
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta: must be in (0, 1], got {self.beta}")
        if not (self.sc > 0.0 and self.pr > 0.0):
            raise ValueError("sc, pr: must be positive")
        if not self.t_end >= 0.0:
            raise ValueError(f"t_end: must be non-negative, got {self.t_end}")
        for key, val in (("bc_x", self.bc_x), ("bc_y", self.bc_y)):
            if val not in VALID_BC:
                raise ValueError(f"{key}: unknown boundary kind {val!r}")
        if self.cadence_steps is not None and self.cadence_steps < 1:
            raise ValueError("cadence_steps: must be positive")
        if self.cadence_time is not None and not self.cadence_time > 0.0:
            raise ValueError("cadence_time: must be positive")
        for f in self.formats:
            if f not in VALID_FORMATS:
                raise ValueError(f"formats: unknown format {f!r}")
        if self.workers is not None and self.workers < 1:
            raise ValueError("workers: must be positive")
        return self

    def with_overrides(self, overrides: dict[str, Any] | None) -> "RunConfig":
        """Replace fields from a dict, rejecting unknown keys."""
        if not overrides:
            return self
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise KeyError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(self, **overrides)
        return cfg

    def to_dict(self) -> dict[str, Any]:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out
