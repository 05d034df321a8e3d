"""Quasi-gasdynamic solver for ideal compressible MHD.

Explicit central-difference scheme regularized by relaxation-time (tau)
dissipation, with a constrained-transport update that keeps the staggered
magnetic field divergence-free to round-off, plus a benchmark workbench
covering the standard 1D/2D test problems.
"""

from .config import RunConfig
from .diagnostics import (ErrorReport, Monitors, cp_alfven_error,
                          convergence_rates, monitors, riemann_error,
                          snapshot_profile, wave_error)
from .mesh import (BoundaryCondition, Grid, apply_boundaries,
                   cell_b_from_faces, div_b, max_div_b, new_grid)
from .physics import (ConservedState, GasParams, NonPositiveDensityError,
                      NonPositivePressureError, PositivityError,
                      PrimitiveState, fast_magnetosonic_speed, ideal_fluxes,
                      mhd_wave_speeds, to_conserved, to_primitive)
from .problems import PROBLEMS, build, exact_reference
from .regularization import (DeltaTerms, FaceFluxes, RegParams, compute_tau,
                             delta_terms_at_face, heat_coefficient,
                             regularized_face_fluxes)
from .stepper import (RunSummary, StepReport, Workspace, cfl_dt, run_until,
                      step, validate_positivity)

__version__ = "0.1.0"
