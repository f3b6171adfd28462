"""Link between matrix powers and the dominant eigenvector.

For a connected similarity graph the square roots of the diagonal of
``S^k`` line up with the Perron eigenvector ``u1`` of ``S`` as ``k``
grows: ``u1[j] / u1[i] -> sqrt(S^k[j, j] / S^k[i, i])``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import InputError, ParameterError
from .evolution import PowerState, power_step
from .similarity import SimilarityMatrix


@dataclass(frozen=True, eq=False)
class EigenEstimate:
    vector: np.ndarray
    eigenvalue: float
    iterations: int
    residual: float
    converged: bool


def principal_eigenvector(
    S: SimilarityMatrix | np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 10000,
    start: np.ndarray | None = None,
) -> EigenEstimate:
    """Power iteration for the dominant eigenpair.

    Starts from the normalized all-ones vector unless ``start`` is given.
    Iteration runs on ``S`` divided by its largest entry and stops once
    ``||A u - lambda u|| <= tol`` there; the reported eigenvalue and
    residual are in the units of ``S``. Non-convergence is flagged in the
    result, not raised.
    """
    A = np.asarray(S, dtype=float)
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")
    scale = np.abs(A).max() if A.size else 0.0
    if scale == 0:
        raise InputError("power iteration on a zero matrix")
    A = A / scale
    n = A.shape[0]
    u = np.ones(n) if start is None else np.array(start, dtype=float)
    norm = np.linalg.norm(u)
    if norm == 0:
        raise ParameterError("start vector is zero")
    u /= norm

    converged = False
    it = 0
    while True:
        w = A @ u
        lam = float(u @ w)
        residual = float(np.linalg.norm(w - lam * u))
        if residual <= tol:
            converged = True
            break
        if it >= max_iter:
            break
        wn = np.linalg.norm(w)
        if wn == 0:
            raise InputError("start vector lies in the null space of S")
        u = w / wn
        it += 1

    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    return EigenEstimate(u, lam * scale, it, residual * scale, converged)


def diag_sqrt_direction(state: PowerState) -> np.ndarray:
    """Unit vector along ``sqrt(diag(S^k))``.

    Works in log space from the rescaled state so that neither the
    rescaling nor overflow of ``S^k`` affects the result.
    """
    d = state.diagonal
    if (d < 0).any():
        raise InputError("negative diagonal entry in matrix power")
    if not d.any():
        raise InputError("diagonal of the matrix power is identically zero")
    with np.errstate(divide="ignore"):
        logs = 0.5 * (np.log(d) + state.log_scale)
    w = np.exp(logs - logs.max())
    return w / np.linalg.norm(w)


@dataclass(frozen=True, eq=False)
class TheoremReport:
    """Comparison of ``sqrt(diag(S^k))`` with the dominant eigenvector.

    ``max_deviation`` is the largest ``|u1[j]/u1[i] - sqrt(s_jj/s_ii)|``
    over ``i`` with ``u1[i] > 0``. When ``converged`` is False the
    number is still reported but does not measure the theorem; ``status``
    says why.
    """

    k: int
    max_deviation: float
    eigen: EigenEstimate
    direction: np.ndarray
    n_components: int
    converged: bool
    status: str

    @property
    def difference(self) -> np.ndarray:
        return self.direction - self.eigen.vector


def _max_ratio_deviation(u: np.ndarray, w: np.ndarray) -> float:
    rows = u > 0
    if not rows.any():
        return float("nan")
    if (w[rows] <= 0).any():
        return float("inf")
    ru = u[None, :] / u[rows][:, None]
    rw = w[None, :] / w[rows][:, None]
    return float(np.abs(ru - rw).max())


def verify_theorem(
    S: SimilarityMatrix,
    k: int,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> TheoremReport:
    """Check the diagonal-of-powers / eigenvector identity at finite ``k``."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    A = np.asarray(S.entries)
    eigen = principal_eigenvector(S, tol=tol, max_iter=max_iter)

    state = PowerState.initial(S)
    while state.k < k:
        state = power_step(state)
    w = diag_sqrt_direction(state)
    deviation = _max_ratio_deviation(eigen.vector, w)

    n_comp, comp = connected_components(A > 0, directed=False)
    if n_comp > 1:
        radii = sorted(
            (
                principal_eigenvector(A[np.ix_(m, m)], tol, max_iter).eigenvalue
                if A[np.ix_(m, m)].any() else 0.0
                for m in (comp == c for c in range(n_comp))
            ),
            reverse=True,
        )
        if np.isclose(radii[0], radii[1], rtol=1e-9, atol=0):
            status = "non-convergent: dominant eigenvalue not simple"
        else:
            status = f"non-convergent: graph has {n_comp} connected components"
    elif not eigen.converged:
        status = "non-convergent: power iteration did not converge"
    else:
        status = "ok"
    return TheoremReport(k, deviation, eigen, w, n_comp, status == "ok", status)
