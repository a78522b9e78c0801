"""Higher topological complexity: cohomological bounds and an odd-sphere planner."""

from .algebra import (GradedAlgebra, SpaceDescriptor, load_space, mk_cp, mk_point, mk_rp,
                      mk_sphere, mk_torus, product, save_space, tensor_product)
from .bounds import (MetadataError, bounds_report, gap_demo, tc_lower, tc_upper,
                     zero_divisor_cup_length)
from .scalar import FieldSpec, Q
from .sphere_planner import continuity_probe, domain_count, geodesic, plan
from .tensor import TensorAlgebra, diagonal_pullback, kernel_of_diagonal, slot_class, tensor_power

__version__ = "0.1.0"
