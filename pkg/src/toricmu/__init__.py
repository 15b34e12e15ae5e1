"""Exact equivariant-cohomology tools for simplicial multi-fans and the
mu-coefficient decomposition of Todd classes."""
from .errors import (
    DegenerateError,
    FanError,
    GenericityError,
    IdentityError,
    NotRationalError,
    ToricError,
    TruncationError,
)
from .multifan import SimplicialMultiFan, degree, is_complete, project, todd_genus, validate
from .eq_cohomology import CohClass, GradedQuotient, XiClass, p_star, pushforward_series
from .polytope import HRepPolytope, brute_count, ehrhart_interpolate, normal_fan
from .dh import MultiPolytope, count_points, count_via_todd, ehrhart, todd_class, volume
from .morelli import GrassmannPoint, mu, mu_todd, sample_generic_E
from .verdict import Verdict

__all__ = [
    "CohClass", "DegenerateError", "FanError", "GenericityError", "GradedQuotient",
    "GrassmannPoint", "HRepPolytope", "IdentityError", "MultiPolytope", "NotRationalError",
    "SimplicialMultiFan", "ToricError", "TruncationError", "Verdict", "XiClass",
    "brute_count", "count_points", "count_via_todd", "degree", "ehrhart",
    "ehrhart_interpolate", "is_complete", "mu", "mu_todd", "normal_fan", "p_star",
    "project", "pushforward_series", "sample_generic_E", "todd_class", "todd_genus",
    "validate", "volume",
]
