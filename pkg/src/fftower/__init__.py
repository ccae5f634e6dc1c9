"""Function-field towers over F_q(T) with class number indivisible by a prime.

The package constructs explicit degree-m extensions of the rational function
field whose class numbers a chosen odd prime ell provably fails to divide,
and machine-checks every desk-scale ingredient: cyclic-polynomial structure,
the gamma search with its counting bounds, admissibility thresholds,
ramification and genus, and the final verdict via exact zeta-function point
counting. See the CLI (``fftower --help``) for the certificate pipeline.
"""

__version__ = "0.1.0"

from .admissible import (corollary_checks, decompose_m, enumerate_candidates,
                         eq5_certificate, is_admissible, kummer_cyclic)
from .errors import (BudgetError, FFTowerError, InputError, NoGammaFound,
                     VerificationError)
from .fields import (FieldElement, FieldSpec, is_kth_power, make_field,
                     norm_to_subfield, primitive_root_of_unity, subfield_map)
from .gammasearch import (GammaCertificate, PowerSetReport, SquareCompletion,
                          complete_square, count_curve_points, find_gamma,
                          lang_test, power_sets)
from .poly import (Poly, RatFunc, compose_rat, count_monic_irreducibles,
                   discriminant, factor, factor_oracle, gcd, is_irreducible,
                   resultant, squarefree_decomposition)
from .rikuna import (RikunaSystem, build_rikuna, iterate_r, specialize_F,
                     structural_checks, verify_discriminant)
from .tower import (KummerCurve, RamificationReport, TowerSpec, build_tower,
                    constant_field_check, genus_riemann_hurwitz,
                    inertness_check, level_checks, ramification_report_m1)
from .zeta import (ClassNumberReport, LPolynomial, PointCounts, class_number,
                   count_degree_one_places, indivisibility_verdict,
                   l_polynomial, naive_affine_count, verdict_for_tower)
