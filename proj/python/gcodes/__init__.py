"""Linear codes as vertices of the Grassmann graph."""

import json

from ._core import (
    Code,
    GcodesError,
    bound_satisfied,
    count_step_codes,
    enumerate_class,
    geodesic_path,
    grassmann_distance,
    intersection_dim,
    opposite_code,
    shrink,
    step_toward,
    vandermonde_mds,
    verify_instance_json,
)

__all__ = [
    "Code",
    "GcodesError",
    "bound_satisfied",
    "count_step_codes",
    "enumerate_class",
    "geodesic_path",
    "grassmann_distance",
    "intersection_dim",
    "opposite_code",
    "shrink",
    "step_toward",
    "vandermonde_mds",
    "verify_instance",
]


def verify_instance(q, n, k, t, **caps):
    """Connectivity, isometry and diameters of the class graph, as a report dict."""
    return json.loads(verify_instance_json(q, n, k, t, **caps))
