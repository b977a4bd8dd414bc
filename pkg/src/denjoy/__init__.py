"""Exact itineraries of rigid circle rotations relative to regular open sets.

Points and arc endpoints live in Q + Q*alpha for a fixed quadratic irrational
alpha, so languages, cylinder measures and distances are computed exactly.
"""

from .circleset import (Arc, RegularOpenSet, dstar_distance, dual, from_intervals, intersect,
                        normalize, parse_openset, quotient_distance, rho, rotate,
                        sym_diff_distance, symmetric_quotient, symmetry, symmetry_order)
from .errors import (AllZeroBlockError, DenjoyError, EmptyGammaError, EmptySetError,
                     FullCircleError, LengthMismatchError, NotInBError, RationalRotationError)
from .exactreal import (Alpha, QuadraticAffine, RotationNumber, alpha_convergents, parse_alpha,
                        parse_point)
from .families import GammaVector, approximating_rotations, density_openset, gamma_openset
from .itinerary import ConstructionContext, context, in_B, itinerary, orbit_points
from .measure import (CylinderTable, PeriodicDecomposition, WeakDistance, birkhoff_ones, blown_orbit_count,
                      cylinder_measure, cylinder_table, discrepancy_envelope, discrepancy_report,
                      extrinsic_rotation, intrinsic_rotation, rational_decomposition, weak_distance)
from .subshift import LanguageTable, block_set, hausdorff_resolution, language

__version__ = "0.1.0"
