"""Discourse-tree similarity metrics for machine translation evaluation.

The toolkit compares RST-style discourse trees of hypothesis and reference
sentences with a convolution tree kernel, combines the resulting scores
with external metric scores (uniformly or with discriminatively tuned
weights), and measures correlation with human judgments at the segment
and system level.
"""

from discoeval.dtree import (DiscourseTree, DTNode, Nuclearity, parse_dtree,
                             read_tree_file, serialize_dtree)
from discoeval.represent import ReprKind, ReprNode, ReprTree, to_repr
from discoeval.kernel import (KernelConfig, KernelScore, kernel_score_corpus,
                              strip_nuc, tree_kernel)
from discoeval.scores import (ScoreMatrix, combine_uniform, ingest_segment_scores,
                              ingest_system_scores, minmax_normalize,
                              write_segment_scores, write_system_scores)
from discoeval.judgments import (FoldAssignment, PairwiseJudgment, RankingRecord,
                                 expand_all, expand_pairs, make_folds, read_rankings)
from discoeval.tuning import (TrainConfig, WeightVector, build_instances,
                              crossval_tau, feature_vector, predict_segment,
                              predict_system, read_weights, train, write_weights)
from discoeval.stats import (TiePolicy, average_over_langpairs,
                             human_system_scores, kendall_tau, pearson, spearman)
from discoeval.tiebreak import TieBreakReport, break_ties
from discoeval.errors import DataError, DiscoEvalError, NoValueError, ParseError

__version__ = "0.1.0"
