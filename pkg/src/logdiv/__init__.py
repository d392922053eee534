"""Exact computer algebra for logarithmic derivations, symmetric algebras
and the V-filtration along a divisor."""

from .poly import (DEGREVLEX, LEX, BlockElim, Degrevlex, Lex, ModuleOrder,
                   Polynomial, PotOrder, SyzElimOrder, TermOrder, TopOrder,
                   divide_exact, divmod_single)
from .grammar import ParseError, parse_operator, parse_polynomial
from .weyl import (WeylOperator, affine_transform, apply_op, commutator,
                   compose, symbol)
from .groebner import (FreeModuleVector, GroebnerBasis, buchberger, codim,
                       eliminate, ideal_gb, ideal_member, ideal_quotient,
                       in_submodule, is_groebner_basis,
                       local_membership_at_origin, module_lift, normal_form,
                       saturation, syzygies)
from .logder import (DerivationModule, InvalidDivisor, ann_theta, euler_field,
                     log_derivations, polynomiality_det, saito_freeness_test,
                     split_check)
from .symalg import (GradeCertificate, ReesKernel, SymPresentation,
                     TorsionReport, depth_via_resolution, grade_criterion,
                     pi_injectivity_test, rees_kernel, sym_presentation,
                     torsion_test_symk)
from .vfilt import (GradedOperatorSpace, NonHomogeneousError,
                    VMembershipQuery, compare_v0, logder_generated_graded,
                    v0_graded_basis, v_member, v_membership, vk_graded_basis)
from .arrangements import (Arrangement, DnArrangement, example9_objects,
                           generic_dn, lemma19_check, prop17_check)

__version__ = "0.1.0"
