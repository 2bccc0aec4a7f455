"""Decorated fans for toric supervarieties with one odd dimension.

The modules build on each other in this order: :mod:`lattice`,
:mod:`polyhedral`, :mod:`semigroup`, :mod:`supertorus`,
:mod:`decorated_fan`, :mod:`embedding`, :mod:`category`, and the text
formats and command line in :mod:`fileio` and :mod:`cli`.
"""

from .lattice import CParam, Subspace, kernel_saturated, pair, quotient_lattice, saturate
from .polyhedral import Cone, FaceDescriptor, cone, dual_cone, faces, intersect
from .semigroup import (AffineSemigroup, SIdeal, complement_is_finite, enumerate_complement,
                        enumerate_intermediate_ideals, is_admissible, jc_generators, minimalize)
from .supertorus import SupertorusDatum, SupertorusMorphism, decompose, is_indecomposable
from .decorated_fan import (DecoratedFan, Fan, admissible_c_space, ds_invariant, fiber_of_J,
                            is_smooth, is_split, localize_decoration, orbit_closure,
                            orbit_stabilizer, validate_decorations, validate_fan)
from .embedding import MonomialData, binomials_in_box, kernel_L, verify_vanishing
from .category import (DecoratedFanMorphism, FiberProductUnsupported, fiber_product,
                       is_isomorphism, validate_morphism)

__version__ = "0.1.0"
