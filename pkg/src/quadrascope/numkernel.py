"""Dense symmetric/hermitian linear-algebra kernels.

Everything downstream (pencils, certificates, estimates) reduces to four
operations on small dense matrices: eigendecomposition, smallest generalized
eigenvalue against a positive-definite metric, minimum-norm consistent solves
with an explicit kernel residual, and definiteness tests.  All operations are
pure; matrices are immutable after construction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InvalidInput, InvalidMatrix, NotPositiveDefinite, NotPSD

# An eigenvalue of a PSD matrix B counts as "zero" (kernel member) when
# lam <= KERNEL_TOL * max(1, lam_max(B)).  Operations that branch on rank
# accept this tolerance explicitly; this is only the default.
KERNEL_TOL = 1e-8

_REAL = "real"
_COMPLEX = "complex"


@dataclass(frozen=True)
class SymMatrix:
    """A real-symmetric or complex-hermitian matrix, exactly equal to its adjoint."""

    entries: np.ndarray
    field: str

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def is_complex(self) -> bool:
        return self.field == _COMPLEX


def sym_matrix(values, asym_warn_tol: float = 1e-10, field: str | None = None) -> SymMatrix:
    """Build a SymMatrix, symmetrizing (M + M*)/2 and validating entries.

    Warns if the input's asymmetry exceeds ``asym_warn_tol`` relative to its
    norm; downstream algebra assumes exact symmetry.  ``field`` forces the
    storage field ("real" or "complex"); by default it is inferred from the
    input dtype.
    """
    arr = np.asarray(values)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidMatrix(f"expected a square matrix, got shape {arr.shape}")
    if field is None:
        field = _COMPLEX if np.iscomplexobj(arr) else _REAL
    if field == _REAL and np.iscomplexobj(arr):
        if np.any(arr.imag != 0.0):
            raise InvalidMatrix("real field requires real matrix entries")
        arr = arr.real
    if field == _COMPLEX:
        arr = arr.astype(np.complex128)
        if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
            raise InvalidMatrix("matrix has non-finite entries")
    elif field == _REAL:
        arr = arr.astype(np.float64)
        if not np.all(np.isfinite(arr)):
            raise InvalidMatrix("matrix has non-finite entries")
    else:
        raise InvalidMatrix(f"unknown field {field!r}")
    adj = arr.conj().T
    scale = max(1.0, float(np.linalg.norm(arr)))
    asym = float(np.linalg.norm(arr - adj))
    if asym > asym_warn_tol * scale:
        warnings.warn(
            f"matrix asymmetry {asym:.3e} exceeds {asym_warn_tol:.1e}; symmetrizing",
            stacklevel=2,
        )
    sym = (arr + adj) / 2.0
    sym.setflags(write=False)
    return SymMatrix(entries=sym, field=field)


@dataclass(frozen=True)
class Metric:
    """A positive-definite matrix A+ with its cached factorization A+ = U* U.

    Defines the ellipsoidal norm ``|x|+^2 = x* A+ x``.  ``lam`` is the
    whitening factor, lam = U^{-*}, satisfying lam* lam = A+^{-1}; conjugating
    by ``lam`` maps the metric geometry to the Euclidean one.
    """

    plus_matrix: SymMatrix
    factor: np.ndarray = field(repr=False)  # upper-triangular U with A+ = U* U
    lam: np.ndarray = field(repr=False)     # U^{-*}, lower-triangular

    @property
    def n(self) -> int:
        return self.plus_matrix.n

    def whiten_matrix(self, m: np.ndarray) -> np.ndarray:
        """Return lam @ m @ lam*."""
        return self.lam @ np.asarray(m) @ self.lam.conj().T

    def whiten_vector(self, v: np.ndarray) -> np.ndarray:
        return self.lam @ np.asarray(v)

    def unwhiten_vector(self, v: np.ndarray) -> np.ndarray:
        """Inverse of whiten in the vector sense: returns lam* @ v."""
        return self.lam.conj().T @ np.asarray(v)


def metric_from(plus: SymMatrix) -> Metric:
    """Factor a positive-definite matrix into a Metric; raises if not PD."""
    try:
        lower = np.linalg.cholesky(plus.entries)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("matrix is not positive-definite") from exc
    upper = lower.conj().T
    eye = np.eye(plus.n, dtype=upper.dtype)
    lam = scipy.linalg.solve_triangular(lower, eye, lower=True)
    upper.setflags(write=False)
    lam.setflags(write=False)
    return Metric(plus_matrix=plus, factor=upper, lam=lam)


@dataclass(frozen=True)
class ConsistentSolve:
    """Result of a minimum-norm solve of B x = w for PSD B.

    ``solution`` lies in range(B) (orthogonal to ker B), ``kernel_residual``
    is the norm of w's projection onto ker(B), and ``consistent`` says the
    residual is within tolerance so the solve is exact up to round-off.
    """

    solution: np.ndarray
    kernel_residual: float
    consistent: bool


def sym_eig(m: SymMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvectors (columns)."""
    vals, vecs = np.linalg.eigh(m.entries)
    return vals, vecs


def gen_eig_min(m: SymMatrix, p: Metric, space_tol: float = KERNEL_TOL) -> tuple[float, np.ndarray]:
    """Smallest generalized eigenvalue of (m, p) and a p-orthonormal basis of its eigenspace.

    Solves m x = lambda (A+) x.  Eigenvectors returned satisfy V* A+ V = I.
    """
    if m.n != p.n:
        raise InvalidInput(f"dimension mismatch: matrix is {m.n}, metric is {p.n}")
    a = m.entries
    b = p.plus_matrix.entries
    if np.iscomplexobj(a) and not np.iscomplexobj(b):
        b = b.astype(np.complex128)
    elif np.iscomplexobj(b) and not np.iscomplexobj(a):
        a = a.astype(np.complex128)
    vals, vecs = scipy.linalg.eigh(a, b)
    lam_min = float(vals[0])
    spread = max(1.0, float(vals[-1] - vals[0]))
    members = vals <= vals[0] + space_tol * spread
    return lam_min, vecs[:, members]


def min_norm_solve(b: SymMatrix, w, tol: float = KERNEL_TOL) -> ConsistentSolve:
    """Spectral-pseudoinverse solve of B x = w for PSD B.

    Works in the eigenbasis of B: the right-hand side splits into range and
    kernel parts, the range part is inverted, and the kernel part's norm is
    reported exactly as ``kernel_residual``.
    """
    w = np.asarray(w)
    if w.shape != (b.n,):
        raise InvalidInput(f"rhs has shape {w.shape}, expected ({b.n},)")
    vals, vecs = sym_eig(b)
    lam_max = float(vals[-1]) if len(vals) else 0.0
    scale = max(1.0, abs(lam_max))
    if vals[0] < -tol * scale:
        raise NotPSD(f"matrix has eigenvalue {vals[0]:.3e} below -tol*scale")
    coeffs = vecs.conj().T @ w.astype(vecs.dtype)
    in_kernel = vals <= tol * max(1.0, lam_max)
    kernel_residual = float(np.linalg.norm(coeffs[in_kernel]))
    inv = np.zeros_like(coeffs)
    keep = ~in_kernel
    inv[keep] = coeffs[keep] / vals[keep]
    solution = vecs @ inv
    if not np.iscomplexobj(w) and np.iscomplexobj(solution):
        solution = solution.real
    consistent = kernel_residual <= tol * (1.0 + float(np.linalg.norm(w)))
    return ConsistentSolve(solution=solution, kernel_residual=kernel_residual, consistent=consistent)


def is_positive_definite(m: SymMatrix) -> tuple[bool, float]:
    """(verdict, lambda_min): verdict is True iff the smallest eigenvalue is > 0."""
    vals, _ = sym_eig(m)
    lam_min = float(vals[0])
    return lam_min > 0.0, lam_min


def plus_norm2(x, p: Metric) -> float:
    """The squared ellipsoidal norm x* A+ x (real, nonnegative)."""
    x = np.asarray(x)
    if x.shape != (p.n,):
        raise InvalidInput(f"vector has shape {x.shape}, expected ({p.n},)")
    val = float(np.real(x.conj() @ (p.plus_matrix.entries @ x)))
    return max(val, 0.0)


def kernel_basis(b: SymMatrix, tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of a PSD matrix at tolerance tol."""
    vals, vecs = sym_eig(b)
    lam_max = float(vals[-1])
    members = vals <= tol * max(1.0, lam_max)
    return vecs[:, members]
