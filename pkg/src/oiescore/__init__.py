"""Reference-based evaluation of Open Information Extraction output."""

__version__ = "0.1.0"

from .model import GoldSet, Part, PredictionSet, Sentence, Token, TupleRecord, scored_bag, tuple_length  # noqa: E402
from .scorer import ScoreReport, exact_match, greedy_match, may_match, pair_score, score, system_scores  # noqa: E402
