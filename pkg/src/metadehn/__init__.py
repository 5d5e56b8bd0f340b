"""Exact computations for metabelian groups given as quotients of Z^m wr Z^k.

Module norms and areas, module Dehn profiles, word and subgroup lengths in
wreath products, distortion profiles, and certified relative-area bounds.
"""

__version__ = "0.1.0"

from .errors import (CertificateError, LeadingTermError, MembershipError, MetadehnError, NotIdentityError,
                     ParseError, ResourceLimitError, UsageError)
from .group_ring import (RingElement, compare_monomials, compare_ring_elements, format_ring_element,
                         leading_term_and_degree, one_norm, parse_ring_element)
from .walks import reach, walk_length
from .free_module import (GroupWord, ModuleElement, OrderedForm, commutator, format_word, module_norm,
                          ordered_form, ordered_form_cost_bound, parse_module_element, parse_word,
                          word_to_module)
from .membership import (AreaResult, DehnProfile, SubmodulePresentation, area_search, laurent_divide,
                         membership, module_dehn_profile)
from .wreath import (DistortionProfile, SubgroupSpec, WreathElement, bfs_oracle, distortion_profile,
                     subgroup_length, subgroup_membership, witness_family, wreath_inverse, wreath_length,
                     wreath_multiply)
from .rewriting import (CancellationState, Certificate, CostTable, Presentation, bs_area_certificate,
                        commutator_cost, l2_area_certificate, l2_game_reduce, l2_sequence,
                        lm_area_certificate, sample_identity_word, verify_certificate)
from .experiments import FitResult, RunConfig, fit_growth_exponent

__all__ = [
    "CertificateError", "LeadingTermError", "MembershipError", "MetadehnError", "NotIdentityError",
    "ParseError", "ResourceLimitError", "UsageError", "RingElement", "compare_monomials",
    "compare_ring_elements", "format_ring_element", "leading_term_and_degree", "one_norm",
    "parse_ring_element", "reach", "walk_length", "GroupWord", "ModuleElement", "OrderedForm", "commutator",
    "format_word", "module_norm", "ordered_form", "ordered_form_cost_bound", "parse_module_element",
    "parse_word", "word_to_module", "AreaResult", "DehnProfile", "SubmodulePresentation", "area_search",
    "laurent_divide", "membership", "module_dehn_profile", "DistortionProfile", "SubgroupSpec",
    "WreathElement", "bfs_oracle", "distortion_profile", "subgroup_length", "subgroup_membership",
    "witness_family", "wreath_inverse", "wreath_length", "wreath_multiply", "CancellationState",
    "Certificate", "CostTable", "Presentation", "bs_area_certificate", "commutator_cost",
    "l2_area_certificate", "l2_game_reduce", "l2_sequence", "lm_area_certificate", "sample_identity_word",
    "verify_certificate", "FitResult", "RunConfig", "fit_growth_exponent",
    "__version__",
]
