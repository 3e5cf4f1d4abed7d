"""
Brute-force reference dynamics on the tensor-product space.

The full Lindblad generator

    gamma (nbar + 1) D[J-] + gamma nbar D[J+],
    D[X] rho = 2 X rho X^dag - X^dag X rho - rho X^dag X,

with collective ``J- = J-_A (x) I + I (x) J-_B`` is written out as a dense
superoperator on column-stacked ``vec(rho)`` and propagated with a matrix
exponential. Nothing here shares code with ``dynamics``: the collective
operators are assembled from ladder elements, not from the coupled basis.

Column stacking means ``vec(A rho B) = (B^T (x) A) vec(rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .angular_momentum import ladder_element_2
from .state_space import TENSOR_PRODUCT, DensityMatrix

MAX_DIM = 512


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Liouvillian:
    matrix: np.ndarray
    n_a: int
    n_b: int
    gamma: float
    nbar: float

    @property
    def dim(self) -> int:
        return (self.n_a + 1) * (self.n_b + 1)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """``L rho`` as a matrix."""
        return unvec(self.matrix @ vec(rho), self.dim)

    def trace_residual(self) -> float:
        """Largest entry of ``vec(I)^T L``; zero for a trace-preserving generator."""
        return float(np.max(np.abs(vec(np.eye(self.dim)) @ self.matrix)))


def vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape(d, d, order="F")


def lowering(n: int) -> np.ndarray:
    """``J-`` for spin ``n/2`` in the ``m``-descending basis."""
    d = n + 1
    op = np.zeros((d, d))
    for k in range(d - 1):
        tm = n - 2 * k  # column state m, lowered to row k+1
        op[k + 1, k] = ladder_element_2(n, tm, "lower")
    return op


def collective_lowering(n_a: int, n_b: int) -> np.ndarray:
    ja, jb = lowering(n_a), lowering(n_b)
    return np.kron(ja, np.eye(n_b + 1)) + np.kron(np.eye(n_a + 1), jb)


def _dissipator(x: np.ndarray) -> np.ndarray:
    d = x.shape[0]
    eye = np.eye(d)
    xdx = x.conj().T @ x
    return 2 * np.kron(x.conj(), x) - np.kron(eye, xdx) - np.kron(xdx.T, eye)


def build_liouvillian(n_a: int, n_b: int, gamma: float = 1.0, nbar: float = 0.0) -> Liouvillian:
    d = (n_a + 1) * (n_b + 1)
    if d > MAX_DIM:
        raise OracleError(f"dimension {d} exceeds the oracle guard of {MAX_DIM}")
    if gamma <= 0 or nbar < 0:
        raise ValueError("need gamma > 0 and nbar >= 0")
    jm = collective_lowering(n_a, n_b).astype(complex)
    mat = gamma * (nbar + 1) * _dissipator(jm)
    if nbar > 0:
        mat = mat + gamma * nbar * _dissipator(jm.conj().T)
    return Liouvillian(mat, n_a, n_b, float(gamma), float(nbar))


def _check(l: Liouvillian, rho0: DensityMatrix) -> None:
    rho0.require(TENSOR_PRODUCT)
    if (rho0.n_a, rho0.n_b) != (l.n_a, l.n_b):
        raise ValueError("state and Liouvillian sizes differ")


def evolve_oracle(l: Liouvillian, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """``exp(L t) rho0`` by dense scaling-and-squaring."""
    _check(l, rho0)
    if t == 0:
        return DensityMatrix(rho0.data.copy(), TENSOR_PRODUCT, l.n_a, l.n_b)
    out = scipy.linalg.expm(l.matrix * t) @ vec(rho0.data)
    return DensityMatrix(unvec(out, l.dim), TENSOR_PRODUCT, l.n_a, l.n_b)


def evolve_oracle_many(l: Liouvillian, rho0: DensityMatrix, times) -> list[DensityMatrix]:
    """States at each of ``times`` (non-decreasing), propagating between them."""
    _check(l, rho0)
    v, t_prev, out = vec(rho0.data).astype(complex), 0.0, []
    cache = {}  # evenly spaced grids reuse one propagator
    for t in times:
        if t < t_prev:
            raise ValueError("times must be non-decreasing")
        if t > t_prev:
            dt = round(t - t_prev, 12)
            if dt not in cache:
                cache[dt] = scipy.linalg.expm(l.matrix * (t - t_prev))
            v = cache[dt] @ v
        out.append(DensityMatrix(unvec(v, l.dim), TENSOR_PRODUCT, l.n_a, l.n_b))
        t_prev = t
    return out


def residual(l: Liouvillian, rho: DensityMatrix) -> float:
    return float(np.max(np.abs(l.matrix @ vec(rho.data))))


def steady_state_oracle(l: Liouvillian, rho0: DensityMatrix, tol: float = 1e-10,
                        t_max: float = 200.0, chunk: float = 10.0) -> DensityMatrix:
    """Stationary state reached from ``rho0``.

    At ``nbar = 0`` the zero eigenspace is degenerate (every ``|j; -j>>`` is
    dark), so the answer depends on ``rho0`` and is found by evolving in
    chunks of ``chunk`` until ``max |L vec(rho)| <= tol``. For ``nbar > 0`` the
    null vector of ``L`` is taken directly.
    """
    _check(l, rho0)
    if l.nbar > 0:
        _, s, vh = np.linalg.svd(l.matrix)
        v = vh[-1].conj()
        rho = unvec(v, l.dim)
        rho = rho / np.trace(rho)
        rho = 0.5 * (rho + rho.conj().T)
        out = DensityMatrix(rho, TENSOR_PRODUCT, l.n_a, l.n_b)
        if residual(l, out) > tol:
            raise OracleError(f"null-space residual {residual(l, out):.3g} above {tol:g}")
        return out
    step = scipy.linalg.expm(l.matrix * chunk)
    v, t = vec(rho0.data).astype(complex), 0.0
    while True:
        rho = DensityMatrix(unvec(v, l.dim), TENSOR_PRODUCT, l.n_a, l.n_b)
        res = residual(l, rho)
        if res <= tol:
            return rho
        if t >= t_max:
            raise OracleError(f"not stationary by t~={t:g}: residual {res:.3g} > {tol:g}")
        v = step @ v
        t += chunk
