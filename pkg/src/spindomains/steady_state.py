"""
Closed-form steady states and the observables derived from them.

At zero temperature each total-spin block relaxes to its own lowest state
``|j_i; -j_i>>`` while keeping the population it started with, so the steady
state is diagonal with block weights read off the initial state. For
``n_b = 1`` and ``n_b = 2`` this is a derived result; for larger ``n_b`` it is
a conjecture, checked against the Liouvillian oracle in ``oracle``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .entanglement import BipartiteDims, log_negativity, von_neumann_entropy
from .state_space import (
    DIRECT_SUM,
    BlockLayout,
    DensityMatrix,
    fmt,
    initial_state,
    observable_jz,
    to_tensor_product,
)


@dataclass(frozen=True)
class SteadyStateReport:
    rho_ss: DensityMatrix
    weights: tuple
    jz_a: float
    jz_b: float
    negativity: float
    entropy: float

    @property
    def n_a(self) -> int:
        return self.rho_ss.n_a

    @property
    def n_b(self) -> int:
        return self.rho_ss.n_b

    def to_dict(self) -> dict:
        return {
            "n_a": self.n_a,
            "n_b": self.n_b,
            "weights": list(self.weights),
            "jz_a": self.jz_a,
            "jz_b": self.jz_b,
            "negativity": self.negativity,
            "entropy": self.entropy,
        }

    def to_json(self) -> str:
        """JSON with every float written to 17 significant digits."""
        d = self.to_dict()
        parts = [f'"n_a": {d["n_a"]}', f'"n_b": {d["n_b"]}',
                 '"weights": [' + ", ".join(fmt(w) for w in d["weights"]) + "]"]
        parts += [f'"{k}": {fmt(d[k])}' for k in ("jz_a", "jz_b", "negativity", "entropy")]
        return "{" + ", ".join(parts) + "}\n"

    @classmethod
    def from_json(cls, s: str) -> dict:
        return json.loads(s)


def steady_weights(layout: BlockLayout) -> np.ndarray:
    """Per-block populations of the anti-parallel initial state."""
    return layout.block_weights(initial_state(layout).data)


def steady_state_matrix(layout: BlockLayout, weights=None) -> DensityMatrix:
    w = steady_weights(layout) if weights is None else np.asarray(weights, dtype=float)
    rho = np.zeros((layout.dim, layout.dim), dtype=complex)
    for b, tj in enumerate(layout.spec.twice_j):
        k = layout.index(b, -tj)
        rho[k, k] = w[b]
    return DensityMatrix(rho, DIRECT_SUM, layout.n_a, layout.n_b)


def report(rho_ss: DensityMatrix) -> SteadyStateReport:
    """Weights and observables of a direct-sum steady state."""
    rho_ss.require(DIRECT_SUM)
    lay = rho_ss.layout
    tp = to_tensor_product(rho_ss)
    return SteadyStateReport(
        rho_ss=rho_ss,
        weights=tuple(float(w) for w in lay.block_weights(rho_ss.data)),
        jz_a=observable_jz(tp, "A"),
        jz_b=observable_jz(tp, "B"),
        negativity=log_negativity(tp, BipartiteDims.of(lay.n_a, lay.n_b)),
        entropy=von_neumann_entropy(rho_ss),
    )


def steady_state(layout: BlockLayout) -> SteadyStateReport:
    return report(steady_state_matrix(layout))


def polarization_closed_form(n_a: int, n_b: int, domain: str) -> float:
    """Rational steady-state polarizations for ``n_b`` in {1, 2}."""
    n = float(n_a)
    if domain not in ("A", "B"):
        raise ValueError(f"domain must be 'A' or 'B', got {domain!r}")
    if n_b == 1:
        if domain == "A":
            return -(n / 2) * ((n + 1) ** 2 - 2) / (n + 1) ** 2
        return ((n - 1) ** 2 - 2) / (2 * (n + 1) ** 2)
    if n_b == 2:
        if domain == "A":
            return -(n**5 + 5 * n**4 + 4 * n**3 - 16 * n**2 - 8 * n + 16) / (
                2 * n * (n + 1) * (n + 2) ** 2
            )
        return (n * (n + 1) * (n**2 - 12) + 8) / (n * (n + 1) * (n + 2) ** 2)
    raise ValueError(
        f"no closed form for n_b={n_b}; use steady_state + observable_jz instead"
    )


def negative_temperature_threshold(n_b: int, max_n_a: int = 10_000) -> int:
    """Smallest ``n_a >= n_b`` whose steady state has ``<J^z_B> > 0``."""
    if n_b < 1:
        raise ValueError("n_b must be >= 1")
    for n_a in range(n_b, max_n_a + 1):
        lay = BlockLayout.of(n_a, n_b)
        jz_b = observable_jz(to_tensor_product(steady_state_matrix(lay)), "B")
        if jz_b > 0:
            return n_a
    raise RuntimeError(f"no sign flip found up to n_a={max_n_a}")
