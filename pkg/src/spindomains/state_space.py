"""
Basis bookkeeping, density-matrix container and basis conversion.

Two bases are used for the ``(n_a + 1)(n_b + 1)`` dimensional space of the two
collective spins:

``direct_sum``
    Coupled states ``|j; m>>`` grouped into total-spin blocks, largest ``j``
    first. Inside a block the flat index grows as ``m`` goes from ``+j`` down
    to ``-j``.
``tensor_product``
    Product states ``|m_A> (x) |m_B>`` with flat index
    ``(j_A - m_A) * (n_b + 1) + (j_B - m_B)`` (A-major, ``m`` descending).

Flat indices are 0-based in code. Human-facing labels (``rho_i_j``, CSV and
JSON output) are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .angular_momentum import DecompositionSpec, clebsch_gordan_2, decompose

DIRECT_SUM = "direct_sum"
TENSOR_PRODUCT = "tensor_product"
BASES = (DIRECT_SUM, TENSOR_PRODUCT)


class BasisError(ValueError):
    """An operation received a density matrix in the wrong basis."""


@dataclass(frozen=True)
class BlockLayout:
    spec: DecompositionSpec
    offsets: tuple = field(init=False)

    def __post_init__(self):
        offs, pos = [], 0
        for d in self.spec.block_dims:
            offs.append(pos)
            pos += d
        object.__setattr__(self, "offsets", tuple(offs))

    @classmethod
    def of(cls, n_a: int, n_b: int) -> "BlockLayout":
        return _layout(int(n_a), int(n_b))

    @property
    def n_a(self) -> int:
        return self.spec.n_a

    @property
    def n_b(self) -> int:
        return self.spec.n_b

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def n_blocks(self) -> int:
        return len(self.spec.twice_j)

    def index(self, block: int, twice_m: int) -> int:
        """Flat 0-based index of ``|j_block; m>>``."""
        tj = self.spec.twice_j[block]
        if abs(twice_m) > tj or (tj - twice_m) % 2:
            raise ValueError(f"2m={twice_m} not in block {block} (2j={tj})")
        return self.offsets[block] + (tj - twice_m) // 2

    def block_slice(self, block: int) -> slice:
        start = self.offsets[block]
        return slice(start, start + self.spec.block_dims[block])

    @cached_property
    def block_of(self) -> np.ndarray:
        """Block number of every flat index."""
        return np.repeat(np.arange(self.n_blocks), self.spec.block_dims)

    @cached_property
    def twice_j_of(self) -> np.ndarray:
        return np.repeat(np.array(self.spec.twice_j), self.spec.block_dims)

    @cached_property
    def twice_m_of(self) -> np.ndarray:
        return np.concatenate([np.arange(tj, -tj - 1, -2) for tj in self.spec.twice_j])

    def label(self, i: int) -> str:
        """Human-readable ``|j; m>>`` for 0-based flat index ``i``."""
        return f"|{_half(self.twice_j_of[i])};{_half(self.twice_m_of[i])}>>"

    @cached_property
    def change_of_basis(self) -> np.ndarray:
        """Real orthogonal ``U`` with ``U[tp, ds] = <m_A, m_B | j; m>>``."""
        return _cg_matrix(self.n_a, self.n_b)

    def block_weights(self, data: np.ndarray) -> np.ndarray:
        """Total population of each block for a direct-sum matrix."""
        diag = np.real(np.diagonal(data))
        return np.array([diag[self.block_slice(b)].sum() for b in range(self.n_blocks)])


def _half(t2: int) -> str:
    return str(t2 // 2) if t2 % 2 == 0 else f"{t2}/2"


@lru_cache(maxsize=None)
def _layout(n_a: int, n_b: int) -> BlockLayout:
    return BlockLayout(decompose(n_a, n_b))


def tp_index(n_a: int, n_b: int, twice_m_a: int, twice_m_b: int) -> int:
    """Flat 0-based tensor-product index of ``|m_A> (x) |m_B>``."""
    return ((n_a - twice_m_a) // 2) * (n_b + 1) + (n_b - twice_m_b) // 2


@lru_cache(maxsize=64)
def _cg_matrix(n_a: int, n_b: int) -> np.ndarray:
    layout = _layout(n_a, n_b)
    u = np.zeros((layout.dim, layout.dim))
    for col in range(layout.dim):
        tj, tm = int(layout.twice_j_of[col]), int(layout.twice_m_of[col])
        for tm_b in range(-n_b, n_b + 1, 2):
            tm_a = tm - tm_b
            if abs(tm_a) > n_a:
                continue
            row = tp_index(n_a, n_b, tm_a, tm_b)
            u[row, col] = clebsch_gordan_2(n_a, n_b, tm_a, tm_b, tj, tm)
    u.setflags(write=False)
    return u


@dataclass(frozen=True)
class DensityMatrix:
    """A density matrix together with the basis it is written in."""

    data: np.ndarray
    basis: str
    n_a: int
    n_b: int

    def __post_init__(self):
        if self.basis not in BASES:
            raise BasisError(f"unknown basis {self.basis!r}")
        arr = np.asarray(self.data, dtype=complex)
        d = (self.n_a + 1) * (self.n_b + 1)
        if arr.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @property
    def layout(self) -> BlockLayout:
        return BlockLayout.of(self.n_a, self.n_b)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def min_eigenvalue(self) -> float:
        h = 0.5 * (self.data + self.data.conj().T)
        return float(np.linalg.eigvalsh(h)[0])

    def check(self, herm_tol=1e-12, trace_tol=1e-10, pos_tol=1e-9) -> None:
        """Raise ``ValueError`` if the matrix is not a valid state."""
        if self.hermiticity_error() > herm_tol:
            raise ValueError(f"not Hermitian (error {self.hermiticity_error():.3g})")
        if abs(self.trace() - 1) > trace_tol:
            raise ValueError(f"trace {self.trace()} != 1")
        if self.min_eigenvalue() < -pos_tol:
            raise ValueError(f"negative eigenvalue {self.min_eigenvalue():.3g}")

    def require(self, basis: str) -> None:
        if self.basis != basis:
            raise BasisError(f"expected a {basis} matrix, got {self.basis}")

    def element(self, label: str) -> complex:
        i, j = parse_label(label, self.dim)
        return complex(self.data[i, j])

    def to_dict(self) -> dict:
        if self.basis == DIRECT_SUM:
            lay = self.layout
            labels = [f"e_{i + 1} {lay.label(i)}" for i in range(self.dim)]
        else:
            labels = [
                f"e_{i + 1} |{_half(self.n_a - 2 * (i // (self.n_b + 1)))}>A"
                f"|{_half(self.n_b - 2 * (i % (self.n_b + 1)))}>B"
                for i in range(self.dim)
            ]
        return {
            "basis": self.basis,
            "n_a": self.n_a,
            "n_b": self.n_b,
            "labels": labels,
            "re": self.data.real.tolist(),
            "im": self.data.imag.tolist(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "DensityMatrix":
        data = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(data, d["basis"], int(d["n_a"]), int(d["n_b"]))

    @classmethod
    def from_json(cls, s: str) -> "DensityMatrix":
        return cls.from_dict(json.loads(s))


def parse_label(label: str, dim: int | None = None) -> tuple[int, int]:
    """Turn ``rho_<i>_<j>`` (1-based) into a 0-based index pair."""
    parts = label.strip().split("_")
    if len(parts) != 3 or parts[0] != "rho" or not (parts[1].isdigit() and parts[2].isdigit()):
        raise ValueError(f"bad element label {label!r}; expected rho_<i>_<j>")
    i, j = int(parts[1]), int(parts[2])
    if i < 1 or j < 1 or (dim is not None and (i > dim or j > dim)):
        raise ValueError(f"element label {label!r} out of range 1..{dim}")
    return i - 1, j - 1


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of density matrices in one basis.

    ``data`` has shape ``(len(times), dim, dim)``.
    """

    times: np.ndarray
    data: np.ndarray
    basis: str
    n_a: int
    n_b: int

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or len(t) != len(self.data):
            raise ValueError("times and data length differ")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)

    def __len__(self):
        return len(self.times)

    def __getitem__(self, k: int) -> DensityMatrix:
        return DensityMatrix(self.data[k], self.basis, self.n_a, self.n_b)

    def physical_times(self, gamma: float) -> np.ndarray:
        return self.times / gamma

    @property
    def states(self) -> list[DensityMatrix]:
        return [self[k] for k in range(len(self))]

    @property
    def final(self) -> DensityMatrix:
        return self[len(self) - 1]

    def series(self, label: str) -> np.ndarray:
        i, j = parse_label(label, self.data.shape[1])
        return self.data[:, i, j]

    def to_csv(self, labels: list[str], complex_columns: bool = False) -> str:
        """CSV text: ``t_tilde`` then one column per element label.

        With ``complex_columns`` every element gets ``re(i,j)`` and ``im(i,j)``
        columns instead of a single real-part column.
        """
        idx = [parse_label(lb, self.data.shape[1]) for lb in labels]
        header = ["t_tilde"]
        for lb, (i, j) in zip(labels, idx):
            if complex_columns:
                header += [f"re({i + 1},{j + 1})", f"im({i + 1},{j + 1})"]
            else:
                header.append(lb)
        lines = [",".join(header)]
        for k, t in enumerate(self.times):
            row = [fmt(t)]
            for i, j in idx:
                v = self.data[k, i, j]
                row += [fmt(v.real), fmt(v.imag)] if complex_columns else [fmt(v.real)]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def fmt(x: float) -> str:
    """Fixed 17-significant-digit formatting used for all emitted numbers."""
    x = float(x)
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    return f"{x:.17g}"


def initial_state(layout: BlockLayout) -> DensityMatrix:
    """Anti-parallel product state ``|N_A/2>_A (x) |-N_B/2>_B`` in the direct-sum basis.

    Only the ``m = (n_a - n_b)/2`` level of each block is populated; the
    amplitudes are the Clebsch-Gordan coefficients of the product state.
    """
    n_a, n_b = layout.n_a, layout.n_b
    tm = n_a - n_b
    amp = np.zeros(layout.dim)
    for b, tj in enumerate(layout.spec.twice_j):
        amp[layout.index(b, tm)] = clebsch_gordan_2(n_a, n_b, n_a, -n_b, tj, tm)
    return DensityMatrix(np.outer(amp, amp), DIRECT_SUM, n_a, n_b)


def product_state(n_a: int, n_b: int, twice_m_a: int, twice_m_b: int) -> DensityMatrix:
    """Projector on ``|m_A> (x) |m_B>`` in the tensor-product basis."""
    d = (n_a + 1) * (n_b + 1)
    rho = np.zeros((d, d), dtype=complex)
    k = tp_index(n_a, n_b, twice_m_a, twice_m_b)
    rho[k, k] = 1.0
    return DensityMatrix(rho, TENSOR_PRODUCT, n_a, n_b)


def maximally_mixed(n_a: int, n_b: int, basis: str = DIRECT_SUM) -> DensityMatrix:
    d = (n_a + 1) * (n_b + 1)
    return DensityMatrix(np.eye(d) / d, basis, n_a, n_b)


def to_tensor_product(rho: DensityMatrix) -> DensityMatrix:
    rho.require(DIRECT_SUM)
    u = rho.layout.change_of_basis
    return DensityMatrix(u @ rho.data @ u.T, TENSOR_PRODUCT, rho.n_a, rho.n_b)


def from_tensor_product(rho: DensityMatrix) -> DensityMatrix:
    rho.require(TENSOR_PRODUCT)
    u = rho.layout.change_of_basis
    return DensityMatrix(u.T @ rho.data @ u, DIRECT_SUM, rho.n_a, rho.n_b)


def jz_diagonal(n_a: int, n_b: int, domain: str) -> np.ndarray:
    """Diagonal of ``J^z_A (x) I`` or ``I (x) J^z_B`` in the tensor-product basis."""
    m_a = np.arange(n_a, -n_a - 1, -2) / 2
    m_b = np.arange(n_b, -n_b - 1, -2) / 2
    if domain == "A":
        return np.repeat(m_a, n_b + 1)
    if domain == "B":
        return np.tile(m_b, n_a + 1)
    raise ValueError(f"domain must be 'A' or 'B', got {domain!r}")


def observable_jz(rho: DensityMatrix, domain: str) -> float:
    """``Tr(rho J^z_domain)`` for a tensor-product density matrix."""
    rho.require(TENSOR_PRODUCT)
    return float(np.real(np.diagonal(rho.data) @ jz_diagonal(rho.n_a, rho.n_b, domain)))
