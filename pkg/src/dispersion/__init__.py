"""Largest empty axis-parallel boxes among points in the unit cube."""

from .bounds import BoundsReport, bounds_report, c_d_bounds, inverse_N_lower, lower_bounds, upper_bounds
from .geometry import (
    AxisBox,
    DyadicBox,
    DyadicInterval,
    PointSet,
    Semantics,
    contains,
    largest_dyadic_subbox,
    largest_dyadic_subinterval,
    volume,
)
from .nets import (
    GeneratingMatrices,
    NetCheckReport,
    digital_net,
    hammersley,
    net_dispersion_bound,
    van_der_corput,
    verify_net_parameter,
)
from .optimizer import SearchConfig, SearchTrace, cd_trace, minimize_dispersion
from .solver import (
    CapacityError,
    DispersionResult,
    Method,
    candidate_grid,
    dispersion_bruteforce,
    dispersion_exact,
    is_empty,
)
from .witness import WitnessCertificate, chi, crucial_box, guaranteed_box, slab_select, tau_matrix

__version__ = "0.1.0"
