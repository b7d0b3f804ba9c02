"""graphaug: co-occurrence graph construction and training-data augmentation
for knowledge-grounded dialogue corpora, plus the matching evaluation metrics."""

from .augment import (
    GRAPH_MARKER,
    NER_MARKER,
    AugmentConfig,
    Task,
    TrainingInstance,
    augment_corpus,
    augment_dialogue,
    emit_jsonl,
    make_dialogue_instances,
    make_graph_instances,
    make_ner_instances,
    read_jsonl,
    tag_token,
)
from .cograph import (
    CoGraph,
    CoGraphBuilder,
    GraphFileError,
    GraphFinalizedError,
    NeighborWeight,
    NodeUnknownError,
    build_graph,
)
from .corpus import (
    Corpus,
    CorpusError,
    Dialogue,
    Document,
    DocumentOrigin,
    Speaker,
    Utterance,
    load_corpus,
    parse_corpus,
    split_seen_unseen,
)
from .metrics import (
    LogProbRecord,
    MetricReport,
    corpus_perplexity,
    f1_report,
    perplexity,
    ppl_report,
    read_logprobs,
    rouge_n,
    rouge_report,
    unigram_f1,
)
from .textproc import (
    AlignmentError,
    ExternalTagger,
    HeuristicTagger,
    KeywordSet,
    NerTag,
    TaggedSentence,
    Token,
    detect_proper_nouns,
    extract_keywords,
    ner_tag,
    tokenize,
)

__version__ = "0.1.0"
