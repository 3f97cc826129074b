"""Degree of the Dieudonne determinant for matrices over skew polynomial rings.

Rings are ``k[x; alpha, delta]`` with ``x*a = alpha(a)*x + delta(a)``; see
:mod:`skewdet.field` for the supported coefficient fields and twists.
"""

from .endos import (KernelRankReport, TModuleRankReport, evaluate_t_poly, kernel_rank,
                    t_module_rank)
from .errors import (DegreeZero, DivisionByZero, DivisionByZeroPoly, InfiniteDegDet,
                     InvalidDescriptor, MixedContexts, MixedDescriptors, NotAUnit, NotCommutative,
                     OracleMismatch, ParseError, PropertyFailure, SizeMismatch, SkewDetError,
                     WrongTwist)
from .field import (DERIVATIVE, FROBENIUS, IDENTITY, Q_SHIFT, ZERO, FieldDescriptor, FieldElement,
                    apply_alpha, apply_delta, extension_field, fe_arith, parse_field_element,
                    prime_field, rational_functions, rationals)
from .matrix import (INFINITY, AddLeftMultiple, DegDetValue, EchelonResult, OreMatrix, Pivot,
                     ScaleUnit, Swap, deg_det, diagonal, elementary, identity, invert, mat_mul,
                     replay, row_echelon)
from .ode import OdeDimReport, assemble_system, companion_system, solution_dimension
from .oracles import UNSTABLE, commutative_oracle, quotient_dim_oracle
from .ore import BOTTOM, OrePoly, OreRing, left_divmod, poly_add, poly_degree, poly_mul

__version__ = "0.1.0"
