"""lexfit: specialize word embeddings with lexical constraints and evaluate them.

The library refines pre-trained embedding vectors with synonym, antonym, and
hypernym pairs via margin-based metric learning (plus closed-form retrofitting
as a baseline), and evaluates the result on similarity correlation, hypernymy
detection and directionality, and graded entailment protocols.
"""

__version__ = "0.1.0"

from .constraints import (
    ConstraintSet,
    PairFileError,
    PairLoadReport,
    constraint_stats,
    hypernym_closure,
    load_pairs,
)
from .embeddings import (
    EmbeddingFormatError,
    EmbeddingStore,
    LookupResult,
    backoff_lookup,
    cosine,
    distance,
    load_embeddings,
    nearest_neighbors,
    save_embeddings,
)
from .evaluate import (
    EvalReport,
    RelationDataset,
    RelationEntry,
    SimilarityDataset,
    average_ranks,
    bibless_classify,
    bless_directionality,
    eval_similarity,
    hyper_score,
    hyperlex_eval,
    load_relation_dataset,
    load_similarity_dataset,
    spearman,
    wbless_classify,
)
from .losses import (
    LossResult,
    Margins,
    asymmetric_norm_loss,
    asymmetric_norm_score,
    attract_repel_reg_loss,
    contrastive_loss,
    counterfit_preserve_loss,
    distance_with_grads,
    hypernym_triplet_loss,
    preservation_loss,
    quadruplet_hierarchy_loss,
    triplet_attract_loss,
    triplet_repel_loss,
)
from .sampling import (
    MiniBatch,
    SampledTriplet,
    classify_negative,
    emit_pair_triplets,
    plan_epoch,
    quad_join,
    select_negatives,
    select_positives,
)
from .specializer import (
    PRESETS,
    NonFiniteGradientError,
    SpecializeConfig,
    TrainLog,
    adagrad_step,
    counterfit,
    retrofit,
    specialize,
)

__all__ = [
    "__version__",
    "ConstraintSet", "PairFileError", "PairLoadReport", "constraint_stats",
    "hypernym_closure", "load_pairs",
    "EmbeddingFormatError", "EmbeddingStore", "LookupResult", "backoff_lookup",
    "cosine", "distance", "load_embeddings", "nearest_neighbors", "save_embeddings",
    "EvalReport", "RelationDataset", "RelationEntry", "SimilarityDataset",
    "average_ranks", "bibless_classify", "bless_directionality", "eval_similarity",
    "hyper_score", "hyperlex_eval", "load_relation_dataset", "load_similarity_dataset",
    "spearman", "wbless_classify",
    "LossResult", "Margins", "asymmetric_norm_loss", "asymmetric_norm_score",
    "attract_repel_reg_loss", "contrastive_loss", "counterfit_preserve_loss",
    "distance_with_grads", "hypernym_triplet_loss", "preservation_loss",
    "quadruplet_hierarchy_loss", "triplet_attract_loss", "triplet_repel_loss",
    "MiniBatch", "SampledTriplet", "classify_negative", "emit_pair_triplets",
    "plan_epoch", "quad_join", "select_negatives", "select_positives",
    "PRESETS", "NonFiniteGradientError", "SpecializeConfig", "TrainLog",
    "adagrad_step", "counterfit", "retrofit", "specialize",
]
