"""Bridge-arc systems on the six-punctured sphere and the rectangle condition."""

from .arrangement import Arrangement, NotMinimal, face_census, intersection_matrix, minimal_arrangement, superpose
from .criteria import (
    IsotopicDegenerate,
    certify_no_rc_partner,
    classify_adjacent_pairs,
    connecting_pairs,
    find_waves,
    normal_form_report,
    rectangle_report,
    rectangle_tuples_by_scan,
)
from .moves import BudgetExceeded, TwistSpec, apply_twist, apply_twists, enumerate_replacements, enumerate_systems
from .sphere import EPSILON, ArcCoord, ArcSystem, InvalidSystem, Path, are_isotopic, canonicalize_system, validate_system

__all__ = [name for name in dir() if not name.startswith("_")]
