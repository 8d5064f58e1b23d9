"""Quadratic maps, supporting frames, homogenization, and JSON (de)serialization.

A map f: V -> R^m with V = R^n or C^n is the tuple (A_i, v_i, f0_i):

    f_i(x) = x* A_i x - v_i* x - x* v_i + f0_i

Components are always real (the quadratic and linear parts are hermitian
forms).  A supporting frame packages a coefficient direction c+ whose
combination A+ = c+.A is positive-definite, together with the touch point
x0 = A+^{-1} v+ and the support offset z0 = -v+* x0.  The master identity

    c+.f(x) - c+.f0 = z0 + |x - x0|+^2

turns every metric sphere around x0 into a hyperplane slice of the image; it
is the algebraic backbone of the whole package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .errors import InvalidInput, NotDefiniteDirection

REAL = "real"
COMPLEX = "complex"

SCHEMA_VERSION = "quadrascope/1"


@dataclass(frozen=True)
class QuadraticMap:
    """m-tuple of quadratic forms with linear terms and offsets over R^n or C^n."""

    A: tuple[nk.SymMatrix, ...]
    v: np.ndarray   # (m, n), real or complex
    f0: np.ndarray  # (m,), real
    field: str

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return self.A[0].n


def quadratic_map(A_list, v_list=None, f0=None, field: str | None = None) -> QuadraticMap:
    """Validating constructor; symmetrizes matrices and checks dimensions."""
    if field is None:
        probe_complex = any(np.iscomplexobj(np.asarray(a)) for a in A_list)
        if v_list is not None:
            probe_complex = probe_complex or any(np.iscomplexobj(np.asarray(u)) for u in v_list)
        field = COMPLEX if probe_complex else REAL
    if field not in (REAL, COMPLEX):
        raise InvalidInput(f"unknown field {field!r}")
    mats = tuple(nk.sym_matrix(a, field=field) for a in A_list)
    m = len(mats)
    if m < 1:
        raise InvalidInput("a quadratic map needs at least one component")
    n = mats[0].n
    for i, a in enumerate(mats):
        if a.n != n:
            raise InvalidInput(f"A[{i}] is {a.n}x{a.n}, expected {n}x{n}")
    dtype = np.complex128 if field == COMPLEX else np.float64
    if v_list is None:
        v = np.zeros((m, n), dtype=dtype)
    else:
        v = np.asarray(v_list)
        if v.shape != (m, n):
            raise InvalidInput(f"v has shape {v.shape}, expected ({m}, {n})")
        if field == REAL and np.iscomplexobj(v):
            if np.any(v.imag != 0.0):
                raise InvalidInput("real field requires real v entries")
            v = v.real
        v = v.astype(dtype)
    if f0 is None:
        f0_arr = np.zeros(m)
    else:
        f0_arr = np.asarray(f0, dtype=np.float64)
        if f0_arr.shape != (m,):
            raise InvalidInput(f"f0 has shape {f0_arr.shape}, expected ({m},)")
    v.setflags(write=False)
    f0_arr.setflags(write=False)
    return QuadraticMap(A=mats, v=v, f0=f0_arr, field=field)


def evaluate(qmap: QuadraticMap, x) -> np.ndarray:
    """f(x) as a real m-vector."""
    x = np.asarray(x)
    if x.shape != (qmap.n,):
        raise InvalidInput(f"x has shape {x.shape}, expected ({qmap.n},)")
    if qmap.field == REAL and np.iscomplexobj(x):
        raise InvalidInput("real-field map evaluated at complex point")
    out = np.empty(qmap.m)
    for i, a in enumerate(qmap.A):
        quad = np.real(x.conj() @ (a.entries @ x))
        lin = 2.0 * np.real(qmap.v[i].conj() @ x)
        out[i] = quad - lin + qmap.f0[i]
    return out


def combine(mats: tuple[nk.SymMatrix, ...], c) -> nk.SymMatrix:
    """The coefficient combination c.A as a SymMatrix (c real)."""
    c = np.asarray(c, dtype=np.float64)
    acc = np.zeros_like(mats[0].entries)
    for ci, a in zip(c, mats):
        acc = acc + ci * a.entries
    return nk.sym_matrix(acc, field=mats[0].field)


@dataclass(frozen=True)
class SupportFrame:
    """Supporting-hyperplane frame for a definite coefficient direction.

    The hyperplane orthogonal to c+ at offset z0 touches the image only at
    f(x0); every metric sphere |x - x0|+^2 = z maps into the parallel
    hyperplane at offset z0 + z.
    """

    c_plus: np.ndarray
    metric: nk.Metric
    v_plus: np.ndarray
    x0: np.ndarray
    z0: float


def support_frame(qmap: QuadraticMap, c_plus) -> SupportFrame:
    """Build the frame for direction c_plus; raises if c+.A is not positive-definite."""
    c_plus = np.asarray(c_plus, dtype=np.float64)
    if c_plus.shape != (qmap.m,):
        raise InvalidInput(f"c_plus has shape {c_plus.shape}, expected ({qmap.m},)")
    a_plus = combine(qmap.A, c_plus)
    ok, lam_min = nk.is_positive_definite(a_plus)
    if not ok:
        raise NotDefiniteDirection(
            f"c_plus gives lambda_min = {lam_min:.3e}; need a positive-definite combination"
        )
    metric = nk.metric_from(a_plus)
    v_plus = qmap.v.T @ c_plus
    x0 = np.linalg.solve(a_plus.entries, v_plus)
    z0 = -float(np.real(v_plus.conj() @ x0))
    c_plus = c_plus.copy()
    c_plus.setflags(write=False)
    return SupportFrame(c_plus=c_plus, metric=metric, v_plus=v_plus, x0=x0, z0=z0)


@dataclass(frozen=True)
class Hyperplane:
    """The set {y: c.y = F} in coefficient space."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        if float(np.linalg.norm(self.normal)) <= 0.0:
            raise InvalidInput("hyperplane normal must be nonzero")


@dataclass(frozen=True)
class HomogenizedMap:
    """The (m+1)-tuple of (n+1)x(n+1) forms whose cone slices recover the image.

    big_A[i] embeds (A_i, -v_i) for i < m; big_A[m] is the slice marker with a
    single 1 in the corner.  The offsets f0 are shifted away and recorded.
    """

    big_A: tuple[nk.SymMatrix, ...]
    source: QuadraticMap
    f0_shift: np.ndarray


def homogenize(qmap: QuadraticMap) -> HomogenizedMap:
    """Lift to homogeneous forms in one extra variable (offsets shifted to zero)."""
    n = qmap.n
    dtype = np.complex128 if qmap.field == COMPLEX else np.float64
    mats = []
    for i in range(qmap.m):
        big = np.zeros((n + 1, n + 1), dtype=dtype)
        big[:n, :n] = qmap.A[i].entries
        big[:n, n] = -qmap.v[i]
        big[n, :n] = -qmap.v[i].conj()
        mats.append(nk.sym_matrix(big, field=qmap.field))
    marker = np.zeros((n + 1, n + 1), dtype=dtype)
    marker[n, n] = 1.0
    mats.append(nk.sym_matrix(marker, field=qmap.field))
    return HomogenizedMap(big_A=tuple(mats), source=qmap, f0_shift=qmap.f0.copy())


def evaluate_homogenized(hom: HomogenizedMap, xs) -> np.ndarray:
    """The lifted map at a point of the extended domain (real (m+1)-vector)."""
    xs = np.asarray(xs)
    out = np.empty(len(hom.big_A))
    for i, a in enumerate(hom.big_A):
        out[i] = np.real(xs.conj() @ (a.entries @ xs))
    return out


def extend_cplus(frame: SupportFrame, margin: float) -> np.ndarray:
    """Extend c+ to the lifted coefficient space so the lifted combination stays PD.

    The last component must exceed v+* A+^{-1} v+ (the Schur-complement
    threshold); ``margin`` is the excess.
    """
    if not margin > 0.0:
        raise InvalidInput("margin must be positive")
    threshold = -frame.z0  # v+* A+^{-1} v+
    return np.concatenate([frame.c_plus, [threshold + margin]])


# --- problem JSON schema ----------------------------------------------------
#
# {"field": "real"|"complex", "n": int, "m": int,
#  "A": [matrix, ...], "v": [vector, ...], "f0": [real, ...]}
#
# A matrix is a row-major list of rows.  For the complex field every matrix
# and vector entry is a two-element list [re, im]; f0 entries stay real.
# JNR tuples use the same schema without "v"/"f0".


def _entry_to_number(entry, field: str, where: str):
    if field == COMPLEX:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise InvalidInput(f"{where}: complex entries must be [re, im] pairs")
        return complex(float(entry[0]), float(entry[1]))
    if isinstance(entry, (list, dict)):
        raise InvalidInput(f"{where}: real field requires plain numeric entries")
    return float(entry)


def _number_to_entry(value, field: str):
    if field == COMPLEX:
        z = complex(value)
        return [z.real, z.imag]
    return float(value)


def _parse_matrix(rows, n: int, field: str, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise InvalidInput(f"{where} is not square: expected {n} rows")
    dtype = np.complex128 if field == COMPLEX else np.float64
    out = np.zeros((n, n), dtype=dtype)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidInput(f"{where} is not square: row {r} has length "
                               f"{len(row) if isinstance(row, list) else 'n/a'}, expected {n}")
        for s, entry in enumerate(row):
            out[r, s] = _entry_to_number(entry, field, f"{where}[{r}][{s}]")
    return out


def parse_problem_dict(doc: dict, require_v: bool = True):
    """Parse the problem schema into (field, n, m, A, v, f0); v/f0 may be None."""
    for key in ("field", "n", "m", "A"):
        if key not in doc:
            raise InvalidInput(f"missing required key {key!r}")
    field = doc["field"]
    if field not in (REAL, COMPLEX):
        raise InvalidInput(f"field must be 'real' or 'complex', got {field!r}")
    n = doc["n"]
    m = doc["m"]
    if not (isinstance(n, int) and n >= 1):
        raise InvalidInput("n must be a positive integer")
    if not (isinstance(m, int) and m >= 1):
        raise InvalidInput("m must be a positive integer")
    if not isinstance(doc["A"], list) or len(doc["A"]) != m:
        raise InvalidInput(f"A must be a list of {m} matrices")
    mats = [_parse_matrix(rows, n, field, f"A[{i}]") for i, rows in enumerate(doc["A"])]
    v = None
    f0 = None
    if "v" in doc and doc["v"] is not None:
        if not isinstance(doc["v"], list) or len(doc["v"]) != m:
            raise InvalidInput(f"v must be a list of {m} vectors")
        dtype = np.complex128 if field == COMPLEX else np.float64
        v = np.zeros((m, n), dtype=dtype)
        for i, vec in enumerate(doc["v"]):
            if not isinstance(vec, list) or len(vec) != n:
                raise InvalidInput(f"v[{i}] has length "
                                   f"{len(vec) if isinstance(vec, list) else 'n/a'}, expected {n}")
            for s, entry in enumerate(vec):
                v[i, s] = _entry_to_number(entry, field, f"v[{i}][{s}]")
    elif require_v:
        v = None  # defaults to zero in quadratic_map
    if "f0" in doc and doc["f0"] is not None:
        if not isinstance(doc["f0"], list) or len(doc["f0"]) != m:
            raise InvalidInput(f"f0 must be a list of {m} reals")
        f0 = np.array([float(t) for t in doc["f0"]])
    return field, n, m, mats, v, f0


def parse_map(text: str) -> QuadraticMap:
    """Parse problem JSON into a QuadraticMap."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise InvalidInput("problem JSON must be an object")
    field, _, _, mats, v, f0 = parse_problem_dict(doc, require_v=True)
    return quadratic_map(mats, v, f0, field=field)


def serialize_map(qmap: QuadraticMap) -> str:
    """Problem JSON for a map; parse(serialize(m)) is value-identical."""
    doc = {
        "field": qmap.field,
        "n": qmap.n,
        "m": qmap.m,
        "A": [[[_number_to_entry(a.entries[r, s], qmap.field) for s in range(qmap.n)]
               for r in range(qmap.n)] for a in qmap.A],
        "v": [[_number_to_entry(qmap.v[i, s], qmap.field) for s in range(qmap.n)]
              for i in range(qmap.m)],
        "f0": [float(t) for t in qmap.f0],
    }
    return json.dumps(doc, sort_keys=True)
