"""Partial transpose, trace norm, logarithmic negativity and von Neumann entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state_space import TENSOR_PRODUCT, DensityMatrix


@dataclass(frozen=True)
class BipartiteDims:
    d_a: int
    d_b: int

    @classmethod
    def of(cls, n_a: int, n_b: int) -> "BipartiteDims":
        return cls(n_a + 1, n_b + 1)

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b


def _matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        rho.require(TENSOR_PRODUCT)
        return rho.data
    return np.asarray(rho)


def partial_transpose(rho, dims: BipartiteDims, subsystem: str = "A") -> np.ndarray:
    """Transpose the indices of one subsystem of an A-major bipartite matrix.

    ``(rho^T_A)[(a, b), (a', b')] = rho[(a', b), (a, b')]``.
    """
    m = _matrix(rho)
    if m.shape != (dims.dim, dims.dim):
        raise ValueError(f"matrix shape {m.shape} does not match dims {dims.d_a}x{dims.d_b}")
    t = m.reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(dims.dim, dims.dim)


def trace_norm(m: np.ndarray, herm_tol: float = 1e-10) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    m = np.asarray(m)
    if np.max(np.abs(m - m.conj().T), initial=0.0) > herm_tol:
        raise ValueError("trace_norm expects a Hermitian matrix")
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def log_negativity(rho, dims: BipartiteDims) -> float:
    """``log2 || rho^T_A ||_1``, clamped to 0 for round-off just below zero."""
    e = math.log2(trace_norm(partial_transpose(rho, dims, "A")))
    if -1e-12 < e < 0:
        return 0.0
    return e


def negativity_closed_form_nb1(n_a: int) -> float:
    """Logarithmic negativity of the ``n_b = 1`` steady state."""
    n = float(n_a)
    return math.log2((math.sqrt(4 * n**3 + (n + 1) ** 2) + n * n + n) / (n + 1) ** 2)


def von_neumann_entropy(rho, neg_tol: float = 1e-8) -> float:
    """``-sum(lambda log2 lambda)``, with eigenvalues in ``[-1e-12, 0]`` taken as 0."""
    m = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho)
    lam = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if lam[0] < -neg_tol:
        raise ValueError(f"invalid state: eigenvalue {lam[0]:.3g} below -{neg_tol:g}")
    lam = lam[lam > 1e-12]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def entropy_closed_form_nb1(n_a: int) -> float:
    """Entropy of the ``n_b = 1`` steady state (weights ``1/(N+1)``, ``N/(N+1)``)."""
    n = float(n_a)
    return -(math.log2(1 / (n + 1)) + n * math.log2(n / (n + 1))) / (n + 1)
