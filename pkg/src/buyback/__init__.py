"""Online algorithms for the matroid buyback problem.

Greedy selling with value-ordered swaps, the random filtering reduction,
randomized value rounding with the Lambert-W optimal base, plus a numerical
lab for the continuous-time single-item lower-bound game.
"""

from .algorithms import (FilteredInstance, PayoffLedger, RoundingParams,
                         Trace, TraceEvent, is_r_structured, payoff,
                         prefix_nets, round_value, run_filter, run_gma,
                         run_randalg)
from .harness import (GeneratorSpec, RatioReport, estimate_expected_payoff,
                      generate, prefix_profile, worst_prefix_ratio)
from .kernels import backend_name
from .lowerbound import (GeometricStrategy, MarkStrategy, StopDistribution,
                         best_geometric, brute_force_optimal_marks,
                         discretize_to_bids, expected_payoff, prophet_value,
                         realized_payoff, sample_stop_time)
from .matroids import (ExplicitMatroid, GraphicMatroid, Instance,
                       MatroidOracle, PartitionMatroid, UniformMatroid,
                       find_swap_candidate, load_instance, make_oracle,
                       max_weight_basis, save_instance)
from .ratios import (RatioConstants, competitive_ratio, gma_ratio_bound,
                     lambert_w_lower, optimal_r, ratio_formula)
from .rng import SplitMix64, trial_seed

__version__ = "0.1.0"
