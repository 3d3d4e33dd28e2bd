"""Connected étale algebras in modular fusion categories of small rank."""

from .fusion_ring import FusionRing, automorphisms, fpdim, tensor_product, validate_ring
from .modular_data import (ModularData, build_modular, central_charge, enumerate_modular_data,
                           is_modular, quantum_dim_solutions)

__version__ = "0.1.0"
