"""Convexity radii and certificates for quadratic-map images.

The certified slab height ``z_max`` is the minimum, over coefficient
directions orthogonal to the supporting direction, of the squared metric
distance from the support point to the contact set of a "flat edge" (a
supporting hyperplane touching the image in more than one point).  A
direction contributes only when its shifted pencil

    B(c) = c.A - lambda_plus_min(c.A) A+        (PSD and singular)

admits solutions of B(c) y = c.(v - A x0); the Fredholm alternative decides
between a finite contribution and an unbounded direction.  The search is
therefore inverted: we scan for zeros of the consistency residual rho(c)
(the kernel projection of the right-hand side) and evaluate the distance
only there.  All algebra happens in whitened coordinates (conjugation by
the metric factor), where the metric is Euclidean and the pencil shift is
an ordinary identity shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.optimize

from . import numkernel as nk
from . import quadmap as qm
from .definiteness import DefinitenessConfig, DefinitenessReport, find_positive_direction
from .errors import DegenerateDirection, InvalidInput, UnsupportedDomain

FULL_IMAGE_CONVEX = "full_image_convex"
SLAB_CONVEX = "slab_convex"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExtendedReal:
    """A nonnegative real or +infinity (the value of a possibly divergent limit)."""

    finite: bool
    value: float = 0.0

    def __post_init__(self):
        if self.finite and not self.value >= 0.0:
            raise InvalidInput(f"ExtendedReal value must be >= 0, got {self.value}")

    def as_float(self) -> float:
        return self.value if self.finite else math.inf

    @staticmethod
    def of(value: float) -> "ExtendedReal":
        return ExtendedReal(finite=True, value=float(value))

    @staticmethod
    def infinite() -> "ExtendedReal":
        return ExtendedReal(finite=False, value=0.0)


@dataclass(frozen=True)
class ScanConfig:
    """Knobs for the residual-zero scan; every threshold lands in the certificate."""

    starts: int | None = None        # default 20*k*(k+1) for coefficient dimension k
    kernel_tol: float = nk.KERNEL_TOL
    rho_tol: float = 1e-7            # residual-zero threshold, scaled by the data size
    seed: int = 0
    method: str = "auto"             # auto | exact | scan (exact only when k == 1)
    cross_check: bool = True
    nm_maxiter: int = 600


@dataclass(frozen=True)
class ShiftedPencil:
    """A direction c with its PSD singular combination and right-hand side."""

    c: np.ndarray
    bc: np.ndarray            # c - lambda_plus_min(c.A) * c_plus
    B: nk.SymMatrix           # bc.A, positive-semidefinite with nontrivial kernel
    w: np.ndarray             # c.(v - A x0) = bc.(v - A x0)
    kernel: np.ndarray        # orthonormal basis of ker(B), columns
    lambda_plus_min: float


@dataclass(frozen=True)
class SingularDirection:
    """A consistency-residual zero with its pencil data and distance value."""

    c: np.ndarray
    bc: np.ndarray
    pencil: nk.SymMatrix
    kernel: np.ndarray
    residual: float
    z: ExtendedReal
    eps_check: float | None = None   # Richardson-extrapolated regularized value
    cross_check_ok: bool | None = None


@dataclass(frozen=True)
class SupportClass:
    """How the supporting hyperplane orthogonal to a direction meets the image."""

    kind: str  # strict_support | unbounded | no_support | flat_edge
    touch_point: np.ndarray | None = None
    solution_space_point: np.ndarray | None = None
    z_value: float | None = None


@dataclass(frozen=True)
class ConvexityCertificate:
    status: str
    z_max: ExtendedReal | None
    frame: qm.SupportFrame | None
    witnesses: tuple[SingularDirection, ...]
    tolerances: dict
    scan: dict
    epsilon_max: ExtendedReal | None = None
    caveats: tuple[str, ...] = ()
    reason: str | None = None
    definiteness: DefinitenessReport | None = None


@dataclass(frozen=True)
class CertifyConfig:
    c_plus: np.ndarray | None = None
    seed: int = 0
    scan: ScanConfig = field(default_factory=ScanConfig)
    definiteness: DefinitenessConfig = field(default_factory=DefinitenessConfig)
    with_epsilon_max: bool = False


# --- pencils and per-direction objective -------------------------------------


def shifted_pencil(qmap: qm.QuadraticMap, frame: qm.SupportFrame, c,
                   kernel_tol: float = nk.KERNEL_TOL) -> ShiftedPencil:
    """Shift c.A down by its smallest generalized eigenvalue so it lands on the PSD cone boundary."""
    c = np.asarray(c, dtype=np.float64)
    if c.shape != (qmap.m,):
        raise InvalidInput(f"direction has shape {c.shape}, expected ({qmap.m},)")
    cn = float(np.linalg.norm(c))
    pn = float(np.linalg.norm(frame.c_plus))
    if cn == 0.0 or abs(float(c @ frame.c_plus)) >= (1.0 - 1e-12) * cn * pn:
        raise DegenerateDirection("direction is parallel to the supporting direction")
    lam_plus, _ = nk.gen_eig_min(qm.combine(qmap.A, c), frame.metric)
    bc = c - lam_plus * frame.c_plus
    pencil = qm.combine(qmap.A, bc)
    shifted = qmap.v - np.stack([a.entries @ frame.x0 for a in qmap.A])
    w = shifted.T @ c
    w_bc = shifted.T @ bc
    if np.linalg.norm(w - w_bc) > 1e-10 * (1.0 + np.linalg.norm(w)):
        raise ArithmeticError("pencil right-hand sides disagree; frame is inconsistent")
    kern = nk.kernel_basis(pencil, kernel_tol)
    return ShiftedPencil(c=c, bc=bc, B=pencil, w=w, kernel=kern, lambda_plus_min=lam_plus)


def zmax_objective(pencil: ShiftedPencil, metric: nk.Metric,
                   kernel_tol: float = nk.KERNEL_TOL) -> ExtendedReal:
    """The vanishing-regularization limit of the metric norm of the pencil solve.

    Infinite when the right-hand side has a component in ker(B) above the
    kernel tolerance (the limit diverges); otherwise the squared metric norm
    of the minimum-metric-norm solution, computed exactly in whitened
    coordinates.
    """
    b_white = nk.sym_matrix(metric.whiten_matrix(pencil.B.entries), asym_warn_tol=1e-8)
    w_white = metric.whiten_vector(pencil.w)
    solve = nk.min_norm_solve(b_white, w_white, kernel_tol)
    if not solve.consistent:
        return ExtendedReal.infinite()
    return ExtendedReal.of(float(np.real(solve.solution.conj() @ solve.solution)))


def eps_sequence_value(pencil: ShiftedPencil, metric: nk.Metric,
                       eps=(1e-4, 1e-6, 1e-8)) -> float:
    """Richardson-extrapolated regularized evaluation |(B + eps*A+)^{-1} w|+^2.

    Independent of the pseudoinverse path: solves the regularized systems at
    the given eps values and extrapolates the linear-in-eps error away.
    """
    b_white = metric.whiten_matrix(pencil.B.entries)
    w_white = metric.whiten_vector(pencil.w)
    eye = np.eye(b_white.shape[0], dtype=b_white.dtype)
    vals = []
    for e in eps:
        sol = np.linalg.solve(b_white + e * eye, w_white)
        vals.append(float(np.real(sol.conj() @ sol)))
    # Linear Richardson step on the last pair.
    e1, e2 = eps[-2], eps[-1]
    v1, v2 = vals[-2], vals[-1]
    return (e1 * v2 - e2 * v1) / (e1 - e2)


# --- the residual-zero scan ---------------------------------------------------


def _direction_data(bfA: np.ndarray, bfv: np.ndarray, chat: np.ndarray,
                    kernel_tol: float) -> tuple[float, float, float]:
    """(rho, z, lam_min) for a unit coefficient vector over an identity-metric tuple."""
    mat = np.tensordot(chat, bfA, axes=1)
    vals, vecs = np.linalg.eigh(mat)
    lam_min = float(vals[0])
    shifted = vals - lam_min
    spread = float(shifted[-1])
    in_kernel = shifted <= kernel_tol * max(1.0, spread)
    w = bfv.T @ chat
    coeffs = vecs.conj().T @ w
    rho = float(np.linalg.norm(coeffs[in_kernel]))
    keep = ~in_kernel
    if np.any(keep):
        z = float(np.sum(np.abs(coeffs[keep]) ** 2 / shifted[keep] ** 2))
    else:
        z = 0.0
    return rho, z, lam_min


@dataclass(frozen=True)
class _ScanHit:
    chat: np.ndarray
    rho: float
    z: float
    lam_min: float


@dataclass(frozen=True)
class _ScanOutcome:
    min_z: ExtendedReal
    hits: tuple[_ScanHit, ...]
    min_residual: float
    threshold: float
    starts_used: int
    method: str


def _dedupe(cands: list[np.ndarray], tol: float = 1e-6) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for c in cands:
        if all(np.linalg.norm(c - k) > tol for k in kept):
            kept.append(c)
    return kept


def _scan_tuple(bfA: np.ndarray, bfv: np.ndarray, config: ScanConfig,
                require_nonpositive_lambda: bool = False) -> _ScanOutcome:
    """Minimize the consistency residual over the unit coefficient sphere.

    When ``require_nonpositive_lambda`` is set only directions with
    lambda_min(c.A) <= 0 are admissible (the ball-convexity constraint set);
    otherwise the whole sphere is scanned.
    """
    k = bfA.shape[0]
    if k == 0:
        return _ScanOutcome(ExtendedReal.infinite(), (), math.inf, 0.0, 0, "empty")
    scale_v = max((float(np.linalg.norm(v)) for v in bfv), default=0.0)
    scale_a = max((float(np.linalg.norm(a)) for a in bfA), default=0.0)
    threshold = config.rho_tol * max(1.0, scale_v)
    lam_slack = 1e-9 * max(1.0, scale_a)

    def admissible(lam_min: float) -> bool:
        return (not require_nonpositive_lambda) or lam_min <= lam_slack

    candidates: list[np.ndarray] = []
    min_residual = math.inf
    starts_used = 0
    if k == 1:
        method = "exact"
        candidates = [np.array([1.0]), np.array([-1.0])]
    else:
        method = "scan"
        rng = np.random.default_rng(config.seed)
        n_starts = config.starts if config.starts is not None else 20 * k * (k + 1)
        starts: list[np.ndarray] = []
        for j in range(k):
            starts.append(np.eye(k)[j])
            starts.append(-np.eye(k)[j])
        while len(starts) < n_starts:
            raw = rng.standard_normal(k)
            starts.append(raw / np.linalg.norm(raw))
        starts = starts[:max(n_starts, 2 * k)]
        starts_used = len(starts)
        penalty_weight = 10.0 * max(1.0, scale_v) / max(1.0, scale_a)

        def objective(raw: np.ndarray) -> float:
            nrm = float(np.linalg.norm(raw))
            if nrm < 1e-12:
                return 1e6 * max(1.0, scale_v)
            chat = raw / nrm
            rho, _, lam_min = _direction_data(bfA, bfv, chat, config.kernel_tol)
            pen = penalty_weight * max(0.0, lam_min) if require_nonpositive_lambda else 0.0
            return rho + pen

        found: list[np.ndarray] = []
        for s in starts:
            s0 = s
            if require_nonpositive_lambda:
                _, _, lam0 = _direction_data(bfA, bfv, s0, config.kernel_tol)
                if lam0 > 0.0:
                    s0 = -s0  # the antipode always satisfies lambda_min <= 0
            res = scipy.optimize.minimize(
                objective, s0, method="Nelder-Mead",
                options={"maxiter": config.nm_maxiter, "xatol": 1e-12, "fatol": 1e-15},
            )
            point = res.x / np.linalg.norm(res.x)
            # One polishing round tightens the simplex around the minimum.
            res = scipy.optimize.minimize(
                objective, point, method="Nelder-Mead",
                options={"maxiter": config.nm_maxiter, "xatol": 1e-14, "fatol": 0.0},
            )
            point = res.x / np.linalg.norm(res.x)
            found.append(point)
        candidates = _dedupe(found)

    hits: list[_ScanHit] = []
    for chat in candidates:
        rho, z, lam_min = _direction_data(bfA, bfv, chat, config.kernel_tol)
        if admissible(lam_min):
            min_residual = min(min_residual, rho)
            if rho <= threshold:
                hits.append(_ScanHit(chat=chat, rho=rho, z=z, lam_min=lam_min))
    hits.sort(key=lambda h: (h.z, tuple(np.round(h.chat, 12))))
    if hits:
        min_z = ExtendedReal.of(hits[0].z)
    else:
        min_z = ExtendedReal.infinite()
    return _ScanOutcome(min_z=min_z, hits=tuple(hits), min_residual=min_residual,
                        threshold=threshold, starts_used=starts_used, method=method)


# --- whitened projected tuples ------------------------------------------------


def _whitened_tuple(qmap: qm.QuadraticMap, metric: nk.Metric, x0) -> tuple[np.ndarray, np.ndarray]:
    """All components conjugated by the metric factor, linear parts re-centered at x0."""
    a_t = np.stack([metric.whiten_matrix(a.entries) for a in qmap.A])
    v_t = np.stack([metric.whiten_vector(qmap.v[i] - qmap.A[i].entries @ np.asarray(x0))
                    for i in range(qmap.m)])
    return a_t, v_t


def _orth_complement_basis(c: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis (columns) of the complement of c in R^m."""
    m = len(c)
    u = c / np.linalg.norm(c)
    full, _ = np.linalg.qr(np.hstack([u[:, None], np.eye(m)]))
    cols = full[:, 1:m]
    fixed = []
    for j in range(cols.shape[1]):
        col = cols[:, j]
        lead = int(np.argmax(np.abs(col)))
        fixed.append(-col if col[lead] < 0 else col)
    return np.column_stack(fixed) if fixed else np.zeros((m, 0))


@dataclass(frozen=True)
class ZmaxResult:
    z_max: ExtendedReal
    witnesses: tuple[SingularDirection, ...]
    scan: dict


def _witness_from_hit(qmap: qm.QuadraticMap, frame: qm.SupportFrame, c: np.ndarray,
                      hit: _ScanHit, config: ScanConfig) -> SingularDirection:
    pencil = shifted_pencil(qmap, frame, c, config.kernel_tol)
    eps_val = None
    ok = None
    if config.cross_check:
        eps_val = eps_sequence_value(pencil, frame.metric)
        ok = abs(eps_val - hit.z) <= 1e-6 * max(1.0, hit.z)
    return SingularDirection(c=c, bc=pencil.bc, pencil=pencil.B, kernel=pencil.kernel,
                             residual=hit.rho, z=ExtendedReal.of(hit.z),
                             eps_check=eps_val, cross_check_ok=ok)


def compute_zmax_detailed(qmap: qm.QuadraticMap, frame: qm.SupportFrame,
                          config: ScanConfig = ScanConfig()) -> ZmaxResult:
    """z_max plus witnesses and scan-coverage metadata."""
    if qmap.field == qm.REAL and qmap.n == 1:
        raise UnsupportedDomain("certification requires n >= 2 over the real field")
    if config.method not in ("auto", "exact", "scan"):
        raise InvalidInput(f"unknown scan method {config.method!r}")
    a_t, v_t = _whitened_tuple(qmap, frame.metric, frame.x0)
    basis = _orth_complement_basis(frame.c_plus)
    k = basis.shape[1]
    if config.method == "exact" and k > 1:
        raise InvalidInput("exact enumeration is only available for m == 2")
    bfA = np.stack([np.tensordot(basis[:, j], a_t, axes=1) for j in range(k)]) \
        if k else np.zeros((0, qmap.n, qmap.n))
    bfv = np.stack([v_t.T @ basis[:, j] for j in range(k)]) if k else np.zeros((0, qmap.n))
    outcome = _scan_tuple(bfA, bfv, config)
    witnesses = tuple(
        _witness_from_hit(qmap, frame, basis @ hit.chat, hit, config)
        for hit in outcome.hits
    )
    scan_meta = {
        "method": outcome.method,
        "starts": outcome.starts_used,
        "min_residual": None if math.isinf(outcome.min_residual) else outcome.min_residual,
        "residual_threshold": outcome.threshold,
        "kernel_tol": config.kernel_tol,
        "rho_tol": config.rho_tol,
    }
    return ZmaxResult(z_max=outcome.min_z, witnesses=witnesses, scan=scan_meta)


def compute_zmax(qmap: qm.QuadraticMap, frame: qm.SupportFrame,
                 config: ScanConfig = ScanConfig()) -> tuple[ExtendedReal, tuple[SingularDirection, ...]]:
    """Certified slab height for the frame: min distance value over residual zeros.

    Infinite (at the scan resolution) when no consistent singular direction
    is found; then the whole image is convex by the full-image criterion.
    """
    res = compute_zmax_detailed(qmap, frame, config)
    return res.z_max, res.witnesses


def compute_epsilon_max(qmap: qm.QuadraticMap, x0, metric: nk.Metric,
                        config: ScanConfig = ScanConfig()) -> ExtendedReal:
    """Largest squared metric-ball radius around x0 whose image is certified convex.

    Scans the admissible region lambda_plus_min(c.A) <= 0 of the unit
    coefficient sphere for vanishing kernel projections; returns the minimum
    distance value, or infinity when the vanishing set is empty at the scan
    resolution (then every ball image is convex).
    """
    if qmap.field == qm.REAL and qmap.n == 1:
        raise UnsupportedDomain("certification requires n >= 2 over the real field")
    a_t, v_t = _whitened_tuple(qmap, metric, np.asarray(x0))
    outcome = _scan_tuple(a_t, v_t, config, require_nonpositive_lambda=True)
    return outcome.min_z


def stable_convexity_margin(bfA, bfv, config: ScanConfig = ScanConfig()) -> ExtendedReal:
    """The identity-metric stable-convexity margin of an inhomogeneous tuple.

    This is the square root of the minimal distance value over the whole unit
    coefficient sphere; the sphere image is stably convex at squared radii up
    to its square.  The slab computation is this margin applied to the
    whitened tuple projected onto the complement of the supporting direction.
    """
    mats = [a.entries if isinstance(a, nk.SymMatrix) else np.asarray(a) for a in bfA]
    if len(mats) == 0:
        return ExtendedReal.infinite()
    a_arr = np.stack(mats)
    v_arr = np.stack([np.asarray(v) for v in bfv])
    outcome = _scan_tuple(a_arr, v_arr, config)
    if not outcome.min_z.finite:
        return ExtendedReal.infinite()
    return ExtendedReal.of(math.sqrt(outcome.min_z.value))


# --- classification and support values ----------------------------------------


def classify_direction(qmap: qm.QuadraticMap, frame: qm.SupportFrame, c,
                       tol: float = nk.KERNEL_TOL) -> SupportClass:
    """Which of the four supporting-hyperplane scenarios direction c falls into.

    Sign-definite combination: unique touch point.  Indefinite: the image is
    unbounded both ways along c.  Semidefinite singular (after flipping the
    sign so the combination is PSD): a flat edge when the stationarity system
    is consistent, otherwise no supporting hyperplane.
    """
    c = np.asarray(c, dtype=np.float64)
    if float(np.linalg.norm(c)) == 0.0:
        raise InvalidInput("direction must be nonzero")
    mat = qm.combine(qmap.A, c)
    vals, _ = nk.sym_eig(mat)
    scale = max(1.0, float(np.max(np.abs(vals))))
    has_neg = vals[0] < -tol * scale
    has_pos = vals[-1] > tol * scale
    if has_neg and has_pos:
        return SupportClass(kind="unbounded")
    if has_pos and not has_neg and vals[0] > tol * scale:
        touch = np.linalg.solve(mat.entries, qmap.v.T @ c)
        return SupportClass(kind="strict_support", touch_point=touch)
    if has_neg and not has_pos and vals[-1] < -tol * scale:
        c = -c
        mat = qm.combine(qmap.A, c)
        vals, _ = nk.sym_eig(mat)
        if vals[0] > tol * scale:
            touch = np.linalg.solve(mat.entries, qmap.v.T @ c)
            return SupportClass(kind="strict_support", touch_point=touch)
    elif has_neg and not has_pos:
        c = -c
        mat = qm.combine(qmap.A, c)
    # PSD with a nontrivial kernel: Fredholm alternative on (c.A) x = c.v.
    rhs = qmap.v.T @ c
    centered = rhs - mat.entries @ frame.x0
    b_white = nk.sym_matrix(frame.metric.whiten_matrix(mat.entries), asym_warn_tol=1e-8)
    solve = nk.min_norm_solve(b_white, frame.metric.whiten_vector(centered), tol)
    if not solve.consistent:
        return SupportClass(kind="no_support")
    point = frame.x0 + frame.metric.unwhiten_vector(solve.solution)
    z_val = float(np.real(solve.solution.conj() @ solve.solution))
    return SupportClass(kind="flat_edge", solution_space_point=point, z_value=z_val)


def slab_support_value(qmap: qm.QuadraticMap, frame: qm.SupportFrame, c, z: float,
                       kernel_tol: float = nk.KERNEL_TOL) -> tuple[float, np.ndarray]:
    """min of c.f over the metric ball |x - x0|+^2 <= z, with its minimizer.

    Trust-region style: in whitened coordinates the problem is an ordinary
    ball-constrained quadratic.  The interior stationary point is used when
    the combination is positive-definite and the point fits in the ball;
    otherwise the boundary multiplier is found by monotone bisection on the
    norm equation, falling back to the degenerate (kernel-contact) branch
    when the norm saturates below z.
    """
    c = np.asarray(c, dtype=np.float64)
    if z < 0.0:
        raise InvalidInput("z must be nonnegative")
    if z == 0.0:
        return float(c @ qm.evaluate(qmap, frame.x0)), frame.x0.copy()
    metric = frame.metric
    mat = metric.whiten_matrix(qm.combine(qmap.A, c).entries)
    shifted = qmap.v - np.stack([a.entries @ frame.x0 for a in qmap.A])
    w = metric.whiten_vector(shifted.T @ c)
    vals, vecs = np.linalg.eigh((mat + mat.conj().T) / 2.0)
    beta = vecs.conj().T @ w
    nu_min = float(vals[0])
    spread = float(vals[-1] - vals[0])
    scale = max(1.0, float(np.max(np.abs(vals))))

    def norm2_at(lam: float) -> float:
        return float(np.sum(np.abs(beta) ** 2 / (vals - lam) ** 2))

    def point_at(lam: float) -> np.ndarray:
        return vecs @ (beta / (vals - lam))

    y = None
    if nu_min > kernel_tol * scale:
        if norm2_at(0.0) <= z:
            y = point_at(0.0)
        else:
            hi = 0.0
    if y is None:
        bottom = (vals - nu_min) <= kernel_tol * max(1.0, spread)
        beta_bottom = float(np.linalg.norm(beta[bottom]))
        if nu_min > kernel_tol * scale:
            hi = 0.0
            n_hi = norm2_at(hi)
        else:
            hi = nu_min - 1e-13 * scale
            n_hi = norm2_at(hi)
        if n_hi < z:
            # Degenerate contact: saturate the ball along the bottom eigenspace.
            lam = nu_min
            keep = ~bottom
            y_range = vecs[:, keep] @ (beta[keep] / (vals[keep] - nu_min))
            deficit = z - float(np.real(y_range.conj() @ y_range))
            t = math.sqrt(max(deficit, 0.0))
            y = y_range + t * vecs[:, int(np.argmax(bottom))]
        else:
            lo = hi - max(1.0, abs(hi), spread)
            while norm2_at(lo) > z:
                lo = hi - 2.0 * (hi - lo)
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if norm2_at(mid) > z:
                    hi = mid
                else:
                    lo = mid
                if hi - lo <= 1e-16 * max(1.0, abs(lo)):
                    break
            y = point_at(0.5 * (lo + hi))
    x = frame.x0 + metric.unwhiten_vector(y)
    if qmap.field == qm.REAL:
        x = np.real(x)
    return float(c @ qm.evaluate(qmap, x)), x


# --- certificate assembly -------------------------------------------------------


def certify(qmap: qm.QuadraticMap, config: CertifyConfig = CertifyConfig()) -> ConvexityCertificate:
    """Full pipeline: find a definite direction, frame it, scan, and report."""
    if qmap.field == qm.REAL and qmap.n == 1:
        raise UnsupportedDomain("certification requires n >= 2 over the real field")
    tolerances = {
        "kernel_tol": config.scan.kernel_tol,
        "rho_tol": config.scan.rho_tol,
        "definiteness_tol": config.definiteness.tol,
    }
    defin = None
    if config.c_plus is not None:
        c_plus = np.asarray(config.c_plus, dtype=np.float64)
    else:
        defin = find_positive_direction(qmap.A, replace(config.definiteness, seed=config.seed))
        if not defin.found:
            return ConvexityCertificate(
                status=INCONCLUSIVE, z_max=None, frame=None, witnesses=(),
                tolerances=tolerances, scan={},
                reason="no positive-definite combination found within the search budget",
                definiteness=defin,
            )
        c_plus = defin.c_plus
    frame = qm.support_frame(qmap, c_plus)
    result = compute_zmax_detailed(qmap, frame, replace(config.scan, seed=config.seed))
    caveats: tuple[str, ...] = ()
    if qmap.field == qm.REAL and qmap.n < qmap.m:
        caveats = ("real field with n < m: check the sphere-image convexity hypotheses",)
    eps = None
    if config.with_epsilon_max:
        eps = compute_epsilon_max(qmap, frame.x0, frame.metric,
                                  replace(config.scan, seed=config.seed + 1))
    status = FULL_IMAGE_CONVEX if not result.z_max.finite else SLAB_CONVEX
    return ConvexityCertificate(
        status=status, z_max=result.z_max, frame=frame, witnesses=result.witnesses,
        tolerances=tolerances, scan=result.scan, epsilon_max=eps, caveats=caveats,
        definiteness=defin,
    )
