"""Pauli-string expectations and the generalized R-matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .state import MAX_QUBITS, PureState

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
AXES = "xyz"

# keep each chunk of Pauli images around 2**22 complex numbers
_CHUNK_BUDGET = 2**22


def bloch_operator(v: Sequence[float]) -> np.ndarray:
    """``v . sigma`` for a real 3-vector."""
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def apply_site(t: np.ndarray, op: np.ndarray, axis: int) -> np.ndarray:
    """Apply a 2x2 operator to one tensor axis."""
    return np.moveaxis(np.tensordot(op, t, axes=([1], [axis])), 0, axis)


def product_expectation(state: PureState, ops: Sequence[np.ndarray]) -> complex:
    """``<psi| op_1 (x) ... (x) op_n |psi>`` without forming the 2^n x 2^n matrix."""
    if len(ops) != state.n:
        raise DimensionMismatch(f"need {state.n} single-site operators, got {len(ops)}")
    psi = state.tensor()
    t = psi
    for k, op in enumerate(ops):
        t = apply_site(t, np.asarray(op, dtype=complex), k)
    return complex(np.vdot(psi, t))


def pauli_expectation(state: PureState, letters: str) -> complex:
    """Expectation of a Pauli string such as ``"xzz"``; ``i`` marks identity."""
    table = {"i": np.eye(2, dtype=complex), "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
    return product_expectation(state, [table[c] for c in letters.lower()])


def _stack_paulis(t: np.ndarray, axis: int, batch: int) -> np.ndarray:
    """Images of ``t`` under x, y, z on ``axis``, stacked as a new batch axis."""
    shape = [1] * t.ndim
    shape[axis] = 2
    flipped = np.flip(t, axis=axis)
    x = flipped
    y = flipped * np.array([-1j, 1j]).reshape(shape)
    z = t * np.array([1.0, -1.0]).reshape(shape)
    return np.stack([x, y, z], axis=batch)


def correlation_tensor(state: PureState) -> np.ndarray:
    """All 3^n full-weight Pauli correlations ``<sigma_i1 ... sigma_in>``.

    Returned with shape ``(3,)*n``, axis order (x, y, z) on every site. The
    leading sites are enumerated in chunks so memory stays bounded for large n.
    """
    n = state.n
    if n > MAX_QUBITS:
        raise TooLarge(f"n={n} > {MAX_QUBITS}")
    psi = state.tensor()
    psi_conj = state.amplitudes.conj()
    k = n
    while k > 1 and 3**k * 2**n > _CHUNK_BUDGET:
        k -= 1
    m = n - k
    out = np.empty((3**m, 3**k))
    for row, prefix in enumerate(product(range(3), repeat=m)):
        t = psi
        for site, p in enumerate(prefix):
            t = apply_site(t, PAULIS[p], site)
        for nb, site in enumerate(range(m, n)):
            t = _stack_paulis(t, axis=nb + site, batch=nb)
        vals = t.reshape(3**k, 2**n) @ psi_conj
        if np.max(np.abs(vals.imag)) > 1e-10:
            raise ArithmeticError("Pauli correlation with non-negligible imaginary part")
        out[row] = vals.real
    return out.reshape((3,) * n)


@dataclass(frozen=True)
class RMatrix:
    """Correlations arranged as ``3^(n-1) x 3``: rows are ``i_1..i_(n-1)``, columns ``i_n``."""

    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float).reshape(3 ** (self.n - 1), 3)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def tensor(self) -> np.ndarray:
        return self.entries.reshape((3,) * self.n)

    def gram(self) -> np.ndarray:
        """``R^T R`` (3x3, real symmetric)."""
        g = self.entries.T @ self.entries
        return 0.5 * (g + g.T)

    def entry(self, letters: str) -> float:
        idx = tuple(AXES.index(c) for c in letters.lower())
        return float(self.tensor[idx])


def r_matrix(state: PureState) -> RMatrix:
    return RMatrix(state.n, correlation_tensor(state))
