"""KMS matrices, numerical ranges and Kippenhahn polynomials."""

import json

from ._core import (
    Error,
    IndexOutOfRange,
    InvalidParameter,
    NotContained,
    affine_class_map,
    boundary_sample,
    boundary_span_rank,
    boundary_touch,
    check_ids,
    circle_touch_points,
    det,
    detect_segment,
    disc_check,
    factor_probe,
    hermitian_eigs,
    interior_gap,
    jordan,
    kipp_coeffs,
    kms,
    krylov_rank,
    numerical_radius,
    principal_submatrix,
    run_suite,
    sine_roots,
    snm1_standard,
    support,
)


def verify(n_values=range(2, 10), a_values=(0.3, 0.5, 0.9, 1.0, 1.2, 2.0, 1 + 1j), **kwargs):
    """Run the check suite and return the parsed report."""
    return json.loads(run_suite(list(n_values), [complex(a) for a in a_values], **kwargs))


__all__ = [name for name in dir() if not name.startswith("_")]
