"""Bundled domains, their loaders and validators."""
from .bundle import (
    DATA_DIR,
    BundleError,
    DomainBundle,
    ValidationReport,
    bundled_names,
    load_bundle,
    needs_operator,
    read_manifest,
    require_valid,
    validate_bundle,
)

__all__ = [
    "DATA_DIR",
    "BundleError",
    "DomainBundle",
    "ValidationReport",
    "bundled_names",
    "load_bundle",
    "needs_operator",
    "read_manifest",
    "require_valid",
    "validate_bundle",
]
