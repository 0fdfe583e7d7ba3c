"""Curvature nullity of left-invariant metrics on Lie groups."""

import json

from ._nullitylab import (
    DEFAULT_SEED,
    MetricLieAlgebra,
    NullityError,
    __version__,
    curvature_operator,
    custom_example,
    default_scale,
    example,
    is_valid,
    nomizu_operators,
    nullity_basis,
    parse_algebra,
    ricci_eigenvalues,
)
from . import _nullitylab as _core


def analyze(alg, **kwargs):
    """Full analysis report as a dict."""
    return json.loads(_core.analyze_json(alg, **kwargs))


def certify(d, **kwargs):
    return json.loads(_core.certify_json(d, **kwargs))


def transport(d, v, z, t):
    """v and z are 1-based basis indices."""
    return json.loads(_core.transport_json(d, v, z, list(t)))


__all__ = [
    "DEFAULT_SEED",
    "MetricLieAlgebra",
    "NullityError",
    "analyze",
    "certify",
    "curvature_operator",
    "custom_example",
    "default_scale",
    "example",
    "is_valid",
    "nomizu_operators",
    "nullity_basis",
    "parse_algebra",
    "ricci_eigenvalues",
    "transport",
]
