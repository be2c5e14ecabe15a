"""Small I-functions of GIT quotients by exact computation."""

from ._core import (
    SCHEMA_VERSION,
    ConfigError,
    Error,
    IntegrityError,
    UnboundedEnumeration,
    parse_rational,
    render,
    run_corpus,
    series,
    validate_preset,
)

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "Error",
    "IntegrityError",
    "UnboundedEnumeration",
    "parse_rational",
    "render",
    "run_corpus",
    "series",
    "validate_preset",
]
