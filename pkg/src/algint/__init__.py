"""Integration over finite-dimensional self-conjugated associative algebras."""

from .algebra import (Algebra, AlgebraElement, AlgebraError, find_identity, identity_first,
                      is_associative, multiply, new_algebra, regular_reps, unitalize)
from .catalog import (cyclic_group_algebra, lookup, matrix_algebra, noncommutative_torus,
                      quaternions)
from .conjugation import (CMatrix, involution_check, pick_invertible_c, solve_c_space,
                          verify_self_conjugated)
from .derivations import (Automorphism, Derivation, derivation_space, exp_automorphism,
                          ibp_holds, inner_derivation, is_derivation, measure_invariant,
                          theorem_roundtrip)
from .integration import (IntegralFunctional, integral_functional, integrate, scalar_product,
                          trace_integral_matrix_algebra, verify_completeness)
from .linalg import SquareMatrix
from .paragrassmann import (decompose, embed, equivalence_check, paragrassmann_algebra,
                            projector, trace_integral)
from .scalars import Cyclotomic, Field

__version__ = "0.1.0"
