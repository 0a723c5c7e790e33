"""Exact computation of the Heegaard Floer homology of a surface times a
circle, over Z, Q and prime fields, through integer linear algebra on the
symplectic exterior algebra of the surface.
"""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, DomainError, ExtendedScaleRequired,
                     GenusMismatch, UnsupportedOperation)
from .exterior import (Multivector, contract, eta, hodge_lefschetz_star,
                       interior, omega, wedge)
from .lefschetz import (op_H, op_L, op_lambda, primitive_basis,
                        primitive_decomposition, self_dual_lattice)
from .linalg import (GroupPresentation, SparseExactMatrix, cokernel,
                     kernel_basis, kernel_rank, rank, smith_normal_form)
from .cfk import GradedElement, SliceBasis, j_infinity, slice_basis, slice_map
from .engine import (FloerTable, XModel, eg_cohomology, h1_action, hf_hat,
                     hf_infinity, hf_plus_nontorsion, hf_plus_reduced,
                     hf_plus_torsion, triple_cup_beta, u_action_red)
from .rings import GF, QQ, ZZ, Ring, parse_ring
