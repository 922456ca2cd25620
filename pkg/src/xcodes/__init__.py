"""Construction, verification and bounds for X-codes of constant weight 3 tolerating two unknowable bits."""

from .bounds import (ALPHA, BETA, GAMMA, BoundReport, asymptotic_lower_bound, bound_report,
                     expected_codewords, optimal_p, recommended_p, upper_bound_d1)
from .catalog import (WitnessCatalog, WitnessConfig, enumerate_witnesses, incident_witnesses,
                      is_forbidden_config, span_bound)
from .codefile import CodeFile
from .columns import (BitColumn, Triple, contains, gf2_add, odd_point_union, superimposed_sum,
                      triple_to_column)
from .compaction import TernaryVector, compact, detect_discrepancy, simulate_detection
from .derandomized import (ConstructionCertificate, DecisionState, conditional_expectation,
                           construct_derandomized, decide_next, score_s)
from .errors import ResourceLimitError
from .oracle import OracleResult, forbidden_sets_bruteforce, max_code_exhaustive
from .randomized import SampleRun, construct_random, repair, sample_triples
from .verify import ViolationWitness, XCode, check_constant_weight, find_violation, is_xcode

__version__ = "0.1.0"
