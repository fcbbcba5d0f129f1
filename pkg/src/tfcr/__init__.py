"""Citation recommendation by BM25 reweighted with term-function profiles."""

from .bm25 import Bm25Params, Index, RankedEntry, bm25_score, build_index, idf, index_from_terms, rank_all
from .corpus import (
    RANKING_TF,
    CandidateDocument,
    Corpus,
    CorpusError,
    OriginalDocument,
    Paragraph,
    TermFunction,
    dump_corpus,
    load_corpus,
    validate_corpus,
)
from .textpipe import tokenize
from .tfrank import (
    Query,
    TermFunctionProfile,
    Variant,
    build_profiles,
    dump_profiles,
    load_profiles,
    recommend,
    tf_weight,
    tfw_score,
)

__version__ = "0.1.0"
