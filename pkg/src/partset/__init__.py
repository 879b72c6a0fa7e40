"""Computational model category of finite partitioned sets."""

from .errors import (BoundExceeded, CompositionError, MalformedError, ParseError, PartsetError,
                     PostconditionError, PreconditionError, ShapeError, UnknownElementError)
from .tokens import Tag, format_token, order_key, parse_token
from .objects import (PartitionedSet, QuotientSet, are_equivalent, codiscrete, discrete, empty,
                      enumerate_objects, enumerate_objects_upto, interval, point, quotient)
from .morphisms import (ClassificationReport, Morphism, check_retract, classify, compose,
                        enumerate_morphisms, identity, induced_quotient_map)
from .lifting import (LiftingProblem, has_llp, has_rlp, solve_lift_constructive,
                      solve_lift_search)
from .factorization import (Factorization, cylinder_factorization, path_object,
                            pathspace_factorization)
from .categories import Diagram, FiniteCategory, NatTrans
from .limits import (Cocone, Cone, colimit, coequalizer, coproduct, equalizer, limit, product,
                     pullback, pushout)
from .enrichment import (composition_morphism, evaluation_morphism, exponential_law, hom_object,
                         sm7_map)
from .homotopy import (ComparisonResult, PairMap, check_colimit_acyclicity, equalizer_comparison,
                       equalizer_witness, homotopy_equalizer, homotopy_inverse, homotopy_pullback,
                       is_effective_mono)
from .presheaves import (Presheaf, classify_pointwise, d_diagram_fibrancy, generating_cofibration,
                         power_object, presheaf_colimit, presheaf_exponential_law, presheaf_hom,
                         presheaf_homotopy_equalizer, presheaf_limit, presheaf_sm7_map)

__version__ = "0.1.0"
