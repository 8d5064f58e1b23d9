"""Search for a positive-definite coefficient combination of a matrix tuple.

The objective lambda_min(c.A) is concave in c; we maximize it over the unit
sphere by multistart projected supergradient ascent (the supergradient at c
is the vector of Rayleigh quotients u* A_i u of a bottom eigenvector u).
A found direction is only reported after an independent eigenvalue check, so
the search is heuristic but the verdict is sound.  "Not found" is a budget
statement, never a proof of indefiniteness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from . import quadmap as qm


@dataclass(frozen=True)
class DefinitenessConfig:
    starts: int | None = None      # default 4*m
    max_iter: int = 500
    tol: float = 1e-10
    seed: int = 0


@dataclass(frozen=True)
class DefinitenessReport:
    found: bool
    c_plus: np.ndarray | None
    lambda_min_at_c: float
    iterations: int


def _lambda_min(mats, c) -> tuple[float, np.ndarray]:
    vals, vecs = nk.sym_eig(qm.combine(mats, c))
    return float(vals[0]), vecs[:, 0]


def find_positive_direction(
    mats: tuple[nk.SymMatrix, ...],
    config: DefinitenessConfig = DefinitenessConfig(),
) -> DefinitenessReport:
    """Look for a unit c with c.A positive-definite.

    Every ``found=True`` report has passed an a-posteriori eigenvalue check;
    ``found=False`` only means the search budget was exhausted.
    """
    m = len(mats)
    if m == 1:
        # The unit sphere in R^1 is the pair {+1, -1}; enumerate it.
        best_c, best_val, iters = None, -np.inf, 2
        for c in (np.array([1.0]), np.array([-1.0])):
            val, _ = _lambda_min(mats, c)
            if val > best_val:
                best_c, best_val = c, val
    else:
        rng = np.random.default_rng(config.seed)
        starts = config.starts if config.starts is not None else 4 * m
        start_list = [np.eye(m)[j] for j in range(min(m, starts))]
        while len(start_list) < starts:
            raw = rng.standard_normal(m)
            start_list.append(raw / np.linalg.norm(raw))
        best_c, best_val, iters = None, -np.inf, 0
        for c0 in start_list:
            c = c0.copy()
            val, u = _lambda_min(mats, c)
            step = 1.0
            for _ in range(config.max_iter):
                iters += 1
                grad = np.array([float(np.real(u.conj() @ (a.entries @ u))) for a in mats])
                tangent = grad - (grad @ c) * c
                tnorm = float(np.linalg.norm(tangent))
                if tnorm <= config.tol * max(1.0, abs(val)):
                    break
                improved = False
                trial_step = step
                for _ in range(30):
                    cand = c + trial_step * tangent / tnorm
                    cand = cand / np.linalg.norm(cand)
                    cand_val, cand_u = _lambda_min(mats, cand)
                    if cand_val > val + config.tol * max(1.0, abs(val)):
                        c, val, u = cand, cand_val, cand_u
                        step = trial_step * 1.5
                        improved = True
                        break
                    trial_step *= 0.5
                if not improved:
                    break
            if val > best_val:
                best_c, best_val = c, val
    if best_val > 0.0 and best_c is not None:
        ok, lam = nk.is_positive_definite(qm.combine(mats, best_c))
        if ok:
            c_unit = best_c / np.linalg.norm(best_c)
            return DefinitenessReport(found=True, c_plus=c_unit,
                                      lambda_min_at_c=lam, iterations=iters)
    return DefinitenessReport(found=False, c_plus=None,
                              lambda_min_at_c=float(best_val), iterations=iters)
