"""Boxicity of Kneser graphs and line-graph complements: generators, interval
covers, common-neighbourhood profiles, closed-form bounds and an exact search.
"""

from ._kernels import BACKEND, available_backends
from .bounds import (BoundEntry, BoundReport, acs_lower_bound, bound_report, c_sum_upper_linegraph,
                     kneser2_range, kneser_lower_bound_closed, kneser_upper_bound,
                     linegraph_complement_bounds, poset_remark_bounds, range0_sum_bound,
                     write_bound_report)
from .errors import (BoxkitError, BudgetExceeded, FormulaNotApplicable, GraphFormatError,
                     InconsistencyError, ParameterError)
from .exactbox import (BoxicityCertificate, Decision, ExactBoxicity, LowerBounded, SearchBudget,
                       decide_boxicity_leq, exact_boxicity, read_certificate, verify_certificate,
                       write_certificate, write_result)
from .graphcore import (Graph, KneserParams, complement, disjoint_union, extended_double_cover,
                        kneser_graph, line_graph, random_graph, read_graph, standard_graph,
                        write_graph)
from .intervals import (Cover, IntervalRep, VerificationReport, build_upper_cover,
                        intersection_graph, is_interval_rep_of, read_cover, verify_cover,
                        write_cover)
from .profile import (CommonNeighborProfile, Exact, NotApplicable, SumBoundRegion,
                      area_identity_check, c_closed_form_kneser, c_value, check_neighbor_implication,
                      check_young_symmetry, common_neighbors, conjugate, max_balanced_biclique,
                      profile, t_kneser_closed, t_value, write_profile)

__version__ = "0.1.0"
