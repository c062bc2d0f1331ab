"""bubblekit: exact weighted-blow-up bubbling of polynomial degenerations."""

from .bubbler import critical_weight, generic_fiber_check, rescale_step, run_bubble, smoothness_at_origin
from .groebner import (
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    initial_ideal,
    normal_form,
    standard_monomial_count,
)
from .polycore import (
    FamilyPresentation,
    Polynomial,
    format_polynomial,
    parse_polynomial,
    poly_arith,
    substitute_scaling,
)
from .valprofile import family_nvol, log_discrepancy, profile
from .volmin import VolResult, minimize_nvol, nvol_ambient, nvol_hypersurface, vol_bruteforce
from .weightfilt import WeightData, graded_family_ideal, initial_form, weighted_degree

__version__ = "0.1.0"
