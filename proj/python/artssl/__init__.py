from ._core import (
    Artmap,
    ConfigError,
    DataError,
    Ensemble,
    InternalError,
    SslArt,
    evaluate,
    inject_label_noise,
    load_csv,
    load_model,
    make_synthetic,
    rules,
    rules_text,
    save_model,
    split,
    train_ensemble,
)

__all__ = [
    "Artmap",
    "ConfigError",
    "DataError",
    "Ensemble",
    "InternalError",
    "SslArt",
    "evaluate",
    "inject_label_noise",
    "load_csv",
    "load_model",
    "make_synthetic",
    "rules",
    "rules_text",
    "save_model",
    "split",
    "train_ensemble",
]
