"""Dense linear algebra used by the analysis modules.

Thin wrappers over LAPACK (through numpy/scipy) that pin down error
behaviour: exact zero pivots raise :class:`SingularMatrixError`, failed SVDs
raise :class:`NumericalFailureError`.
"""

import warnings

import numpy as np
import scipy.linalg

from ._validation import check_matrix, check_square
from .errors import InvalidArgumentError, NumericalFailureError, SingularMatrixError


def as_dense(matrix):
    """Validate a 2-d array with finite entries (the assembled-matrix contract)."""
    return check_matrix(matrix)


def solve(matrix, rhs):
    """Solve ``A x = b`` by LU factorization with partial pivoting."""
    a = check_square(matrix)
    b = np.asarray(rhs)
    if b.shape[0] != a.shape[0]:
        raise InvalidArgumentError(f"rhs has length {b.shape[0]}, matrix has {a.shape[0]} rows")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    zero = np.flatnonzero(np.diag(lu) == 0)
    if zero.size:
        raise SingularMatrixError(int(zero[0]))
    if np.iscomplexobj(b) and not np.iscomplexobj(lu):
        return scipy.linalg.lu_solve((lu, piv), b.real) + 1j * scipy.linalg.lu_solve((lu, piv), b.imag)
    return scipy.linalg.lu_solve((lu, piv), b)


def singular_values(matrix):
    """Singular values in descending order."""
    a = check_matrix(matrix)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc


def condition_number_2(matrix):
    """Spectral condition number ``sigma_max / sigma_min`` (``inf`` if singular)."""
    sv = singular_values(check_square(matrix))
    if sv[-1] == 0.0:
        return np.inf
    return float(sv[0] / sv[-1])
