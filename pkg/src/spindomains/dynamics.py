"""
Zero-temperature equations of motion in the direct-sum basis.

Collective decay conserves total spin, so every matrix element
``rho[(i, m), (l, m')]`` is driven only by its up-shifted neighbour
``rho[(i, m+1), (l, m'+1)]``:

    d/dt rho = 2 gamma A(j_i, m) A(j_l, m') rho[(i, m+1), (l, m'+1)]
               - gamma (B(j_i, m) + B(j_l, m')) rho[(i, m), (l, m')]

with ``A(j, m) = sqrt((j - m)(j + m + 1))`` and ``B(j, m) = (j + m)(j - m + 1)``.
The feeding term is absent at the top of a block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .state_space import DIRECT_SUM, BlockLayout, DensityMatrix, Trajectory


class IntegrationError(RuntimeError):
    """Integration became unstable (trace drift above the abort threshold)."""


ABORT_DRIFT = 1e-6


@dataclass(frozen=True)
class EvolutionParams:
    """Integration settings in dimensionless time ``t~ = gamma t``.

    ``t_end`` and ``step`` are in units of ``t~``; ``gamma`` only converts
    sample times back to physical time. ``step=None`` picks
    ``1e-3 * min(1, 1/n_a)``.
    """

    t_end: float
    gamma: float = 1.0
    step: float | None = None
    sample_every: int = 1

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.t_end >= 0:
            raise ValueError("t_end must be non-negative")
        if self.step is not None and not self.step > 0:
            raise ValueError("step must be positive")
        if int(self.sample_every) < 1:
            raise ValueError("sample_every must be >= 1")


def default_step(n_a: int) -> float:
    return 1e-3 * min(1.0, 1.0 / n_a)


@lru_cache(maxsize=64)
def _coefficients(n_a: int, n_b: int):
    """Feeding and decay coefficient matrices for unit gamma."""
    lay = BlockLayout.of(n_a, n_b)
    tj = lay.twice_j_of.astype(float)
    tm = lay.twice_m_of.astype(float)
    # A(j, m) uses doubled arguments: (2j - 2m)(2j + 2m + 2) / 4
    a = np.sqrt((tj - tm) * (tj + tm + 2)) / 2
    b = (tj + tm) * (tj - tm + 2) / 4
    feed = 2.0 * np.outer(a, a)
    # no predecessor at the top of a block
    top = tm == tj
    feed[top, :] = 0.0
    feed[:, top] = 0.0
    decay = b[:, None] + b[None, :]
    feed.setflags(write=False)
    decay.setflags(write=False)
    return feed, decay


def _rhs_array(data: np.ndarray, n_a: int, n_b: int, gamma: float) -> np.ndarray:
    feed, decay = _coefficients(n_a, n_b)
    out = -decay * data
    # the predecessor of flat (p, q) is (p-1, q-1); feed is zero wherever it would cross a block
    out[1:, 1:] += feed[1:, 1:] * data[:-1, :-1]
    return gamma * out


def eom_rhs(rho: DensityMatrix, gamma: float = 1.0) -> np.ndarray:
    """Time derivative of every direct-sum matrix element."""
    rho.require(DIRECT_SUM)
    return _rhs_array(rho.data, rho.n_a, rho.n_b, gamma)


def generator(n_a: int, n_b: int, gamma: float = 1.0) -> sp.csr_matrix:
    """Sparse matrix of the equations of motion acting on row-major ``vec(rho)``."""
    feed, decay = _coefficients(n_a, n_b)
    d = feed.shape[0]
    diag = -(decay.ravel())
    p, q = np.nonzero(feed)
    rows = p * d + q
    cols = (p - 1) * d + (q - 1)
    lower = sp.csr_matrix((feed[p, q], (rows, cols)), shape=(d * d, d * d))
    return (gamma * (sp.diags(diag) + lower)).tocsr()


def rk4_propagator(n_a: int, n_b: int, gamma: float, h: float) -> sp.csr_matrix:
    """One classical RK4 step for the linear system, as a sparse matrix.

    For ``y' = L y`` the four RK4 stages collapse to
    ``y + hLy + (hL)^2 y/2 + (hL)^3 y/6 + (hL)^4 y/24``.
    """
    hl = h * generator(n_a, n_b, gamma)
    d2 = hl.shape[0]
    eye = sp.identity(d2, format="csr")
    term = eye
    prop = eye.copy()
    for k in range(1, 5):
        term = (term @ hl) / k
        prop = prop + term
    return prop.tocsr()


def integrate(rho0: DensityMatrix, params: EvolutionParams) -> Trajectory:
    """Fixed-step RK4 integration from ``rho0`` up to ``params.t_end``.

    The sample grid is ``k * sample_every * step`` plus the end time; the last
    step is shortened so ``t_end`` is hit exactly. Raises
    :class:`IntegrationError` if the trace drifts by more than 1e-6.
    """
    rho0.require(DIRECT_SUM)
    n_a, n_b = rho0.n_a, rho0.n_b
    d = rho0.dim
    h = params.step if params.step is not None else default_step(n_a)
    every = int(params.sample_every)
    t_end = float(params.t_end)

    n_full = int(math.floor(t_end / h + 1e-9))
    rest = t_end - n_full * h
    if rest < 1e-12 * max(1.0, t_end):
        rest = 0.0

    prop = rk4_propagator(n_a, n_b, 1.0, h)
    y = rho0.data.reshape(-1).astype(complex).copy()
    tr0 = np.trace(rho0.data)

    times = [0.0]
    samples = [rho0.data.copy()]
    n_blocks, n_tail = divmod(n_full, every)
    # `every` steps between samples are applied as one precomputed power of the step map
    stride = _matrix_power(prop, every) if n_blocks and every > 1 else prop
    for b in range(1, n_blocks + 1):
        y = stride @ y
        _guard(y, d, tr0, b * every * h, h)
        times.append(b * every * h)
        samples.append(y.reshape(d, d).copy())
    for _ in range(n_tail):
        y = prop @ y
    if n_tail and rest == 0.0:
        _guard(y, d, tr0, t_end, h)
        times.append(t_end)
        samples.append(y.reshape(d, d).copy())
    if rest > 0.0:
        y = rk4_propagator(n_a, n_b, 1.0, rest) @ y
        _guard(y, d, tr0, t_end, h)
        times.append(t_end)
        samples.append(y.reshape(d, d).copy())
    if rest == 0.0 and n_tail == 0 and n_full > 0:
        times[-1] = t_end
    return Trajectory(np.array(times), np.array(samples), DIRECT_SUM, n_a, n_b)


def _matrix_power(m: sp.csr_matrix, k: int) -> sp.csr_matrix:
    result, base = None, m
    while k:
        if k & 1:
            result = base if result is None else (result @ base).tocsr()
        k >>= 1
        if k:
            base = (base @ base).tocsr()
    return result


def _guard(y, d, tr0, t, h):
    drift = abs(np.trace(y.reshape(d, d)) - tr0)
    if not np.all(np.isfinite(y)) or drift > ABORT_DRIFT:
        raise IntegrationError(
            f"trace drift {drift:.3g} at t~={t:.6g} with step {h:.3g}; reduce the step size"
        )


def is_stationary(rho: DensityMatrix, gamma: float = 1.0, tol: float = 1e-12) -> bool:
    return float(np.max(np.abs(eom_rhs(rho, gamma)))) < tol


def relax(rho0: DensityMatrix, gamma: float = 1.0, step: float | None = None,
          chunk: float = 1.0, t_max: float = 200.0, tol: float = 1e-12) -> tuple[DensityMatrix, float]:
    """Integrate until ``max |eom_rhs| < tol``; returns the state and the ``t~`` reached."""
    rho, t = rho0, 0.0
    while not is_stationary(rho, gamma, tol):
        if t >= t_max:
            res = float(np.max(np.abs(eom_rhs(rho, gamma))))
            raise IntegrationError(f"no steady state by t~={t:g} (max |rhs| = {res:.3g})")
        traj = integrate(rho, EvolutionParams(t_end=chunk, step=step, sample_every=1000))
        rho, t = traj.final, t + chunk
    return rho, t


ANALYTIC_KINDS = ("rho22_nb1", "rho_coh_nb1", "rho33_nb2")


def analytic_element(kind: str, n_a: int, t: float) -> float:
    """Closed-form solutions for three directly solvable elements.

    ``rho22_nb1``
        ``rho_{2,2}`` for ``n_b = 1``: ``exp(-4N t)/(N+1)``.
    ``rho_coh_nb1``
        ``rho_{2,N+3}`` for ``n_b = 1``: ``-(sqrt(N)/(N+1)) exp(-(3N-1) t)``.
    ``rho33_nb2``
        ``rho_{3,3}`` for ``n_b = 2``: ``2 exp(-6N t)/((N+1)(N+2))``.

    ``t`` is dimensionless (``gamma = 1``).
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    n = n_a
    if kind == "rho22_nb1":
        return math.exp(-4 * n * t) / (n + 1)
    if kind == "rho_coh_nb1":
        return -math.sqrt(n) / (n + 1) * math.exp(-(3 * n - 1) * t)
    if kind == "rho33_nb2":
        return 2.0 / ((n + 1) * (n + 2)) * math.exp(-6 * n * t)
    raise ValueError(f"unknown kind {kind!r}; choose from {ANALYTIC_KINDS}")
