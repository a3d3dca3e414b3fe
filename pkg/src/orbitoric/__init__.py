"""Exact lattice, cone and monoid computations for orbit gluing on toric and
horospherical varieties."""

__version__ = "0.1.0"

from .lattice import AbelianGroup, hermite_normal_form, smith_normal_form  # noqa: E402
from .polyhedral import Cone, Fan, cone_from_rays, dual_cone, face_dual, validate_fan  # noqa: E402
from .intfeas import FeasibilityProblem, Verdict, integer_feasible  # noqa: E402
from .divclass import horospherical_class_group, toric_class_group  # noqa: E402
from .monoid import gamma_of_orbit, is_saturated, monoid_equal  # noqa: E402
from .roots import enumerate_roots, tau_root_exists  # noqa: E402
from .orbits import (AffineHoroDatum, ToricFanDatum, affine_horospherical, affine_toric,  # noqa: E402
                     analyze, bazhov_partition, connectivity_partition, orbits_of)

__all__ = [
    "AbelianGroup", "hermite_normal_form", "smith_normal_form",
    "Cone", "Fan", "cone_from_rays", "dual_cone", "face_dual", "validate_fan",
    "FeasibilityProblem", "Verdict", "integer_feasible",
    "horospherical_class_group", "toric_class_group",
    "gamma_of_orbit", "is_saturated", "monoid_equal",
    "enumerate_roots", "tau_root_exists",
    "AffineHoroDatum", "ToricFanDatum", "affine_horospherical", "affine_toric",
    "analyze", "bazhov_partition", "connectivity_partition", "orbits_of",
]
