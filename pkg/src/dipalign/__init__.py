"""Diploid alignment, two-path covering alignment of labeled DAGs, and an
executable LCS hardness reduction with exhaustive verification oracles."""

from .errors import DipalignError, InputError, InstanceTooLarge, VerificationFailure
from .strings_core import (BINARY, COROLLARY, GAP, NEG_INFINITY, Alphabet, ScoringScheme,
                           edit_distance, global_alignment, global_alignment_score,
                           is_subsequence, lcs_multi)
from .diploid import (DiploidInstance, DiploidSolution, PairwiseAlignment, apply_mask,
                      reachable_recombinations, recombine, solve_diploid_bruteforce)
from .labeled_dag import (LabeledDag, encode_diploid, expand, parse_dag, read,
                          two_path_cover, two_path_coverable)
from .cover_solvers import (CoverSolution, Objective, SolverOptions, evaluate_solution,
                            solve_bruteforce, solve_relaxed_dp)

__version__ = "0.1.0"
