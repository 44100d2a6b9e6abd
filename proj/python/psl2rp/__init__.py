"""Replacement-property engine for PSL(2,p)."""

from ._core import (
    Group,
    certify,
    check_rp,
    compute_m,
    jambor_m,
    maximal_census,
    predict_rp,
    predict_witness_orders,
    replay,
    __version__,
)

__all__ = [
    "Group",
    "certify",
    "check_rp",
    "compute_m",
    "jambor_m",
    "maximal_census",
    "predict_rp",
    "predict_witness_orders",
    "replay",
    "__version__",
]
