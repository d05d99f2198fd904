"""Opinion spam detection with cumulative relative frequency features.

The heavy lifting lives in the compiled ``crfdspam._core`` module; this
package re-exports its public surface.
"""

from crfdspam._core import (
    ClassifierSpec,
    ColumnTransforms,
    Dataset,
    EvaluationReport,
    FrequencyTable,
    LabeledMatrix,
    Model,
    __version__,
    auc,
    averaged_importance,
    build_matrix,
    compare_feature_sets,
    confusion,
    correlation_matrix,
    cross_validate,
    cross_validate_matrix,
    default_algorithms,
    derive_business_stats,
    eval_crfd,
    feature_names,
    fit_crfd,
    fit_model,
    fit_transforms,
    generate,
    gini_importance,
    load_dataset,
    mcc,
    predict_labels,
    predict_scores,
    preprocessing_ms,
    prf,
    select_top_k,
    stratified_folds,
    summarize,
    tag_reviewers,
    transform_matrix,
)

__all__ = [
    "ClassifierSpec",
    "ColumnTransforms",
    "Dataset",
    "EvaluationReport",
    "FrequencyTable",
    "LabeledMatrix",
    "Model",
    "__version__",
    "auc",
    "averaged_importance",
    "build_matrix",
    "compare_feature_sets",
    "confusion",
    "correlation_matrix",
    "cross_validate",
    "cross_validate_matrix",
    "default_algorithms",
    "derive_business_stats",
    "eval_crfd",
    "feature_names",
    "fit_crfd",
    "fit_model",
    "fit_transforms",
    "generate",
    "gini_importance",
    "load_dataset",
    "mcc",
    "predict_labels",
    "predict_scores",
    "preprocessing_ms",
    "prf",
    "select_top_k",
    "stratified_folds",
    "summarize",
    "tag_reviewers",
    "transform_matrix",
]
