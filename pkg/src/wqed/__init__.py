"""Scattering of microwaves on a transmon in an open transmission line."""
from .errors import (AmbiguousSteadyStateError, ConfigError, NumericalError, ParameterError,
                     TruncationError, UnsupportedCaseError, WQEDError, ZeroOccupationError)
from .params import CircuitParams, DerivedParams, derive_params, map_ports
from .transmon import TransmonSpectrum, solve_transmon
from .rates import RateSet, transition_rates
from .scatter2 import DriveSpec, ScatterResult, analytic_rt, numeric_rt
from .scatter3 import ThreeLevelDrive, analytic_r_probe, numeric_r_probe
from .g2corr import G2Config, g2

__version__ = "0.1.0"
