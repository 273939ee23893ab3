"""Seven-qubit toric code on a disk.

    H = -(A1 + ... + A6) - (B1 + B2)

with Z-type vertex terms A_i and X-type plaquette terms B_j. Site k is tensor
slot k and the most significant bit of the basis index, as in :mod:`.state`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import WrongSize
from .state import PureState

N_SITES = 7
DIM = 2**N_SITES

# supports are 1-based site labels
Z_SUPPORTS = ((1, 2), (1, 3), (2, 4, 5), (3, 4, 6), (5, 7), (6, 7))
X_SUPPORTS = ((1, 2, 3, 4), (4, 5, 6, 7))
STABILIZER_NAMES = ("A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2")

GROUND_TOL = 1e-9


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of single-site Paulis, e.g. ``PauliString("ZZIIIII")``."""

    letters: str
    sign: int = 1

    def __post_init__(self):
        letters = self.letters.upper()
        if set(letters) - set("IXYZ"):
            raise ValueError(f"bad Pauli letters {self.letters!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_support(cls, n: int, kind: str, sites) -> "PauliString":
        chars = ["I"] * n
        for s in sites:
            chars[s - 1] = kind
        return cls("".join(chars))

    @property
    def n(self) -> int:
        return len(self.letters)

    def _mask(self, chars: str) -> int:
        m = 0
        for k, c in enumerate(self.letters):
            if c in chars:
                m |= 1 << (self.n - 1 - k)
        return m

    @cached_property
    def _masks(self) -> tuple[int, int, int]:
        return self._mask("XY"), self._mask("ZY"), self.letters.count("Y")

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """``P |vec>`` via bit flips and phases; O(2^n)."""
        x_mask, z_mask, n_y = self._masks
        idx = np.arange(2**self.n)
        # P = i^{n_y} X^x Z^z on each site, since Y = i X Z
        parity = np.bitwise_count(idx & z_mask)
        phased = vec * np.where(parity % 2, -1.0, 1.0)
        out = np.empty_like(phased, dtype=complex)
        out[idx ^ x_mask] = phased
        return self.sign * (1j**n_y) * out

    def commutes_with(self, other: "PauliString") -> bool:
        anti = sum(
            1 for a, b in zip(self.letters, other.letters) if a != "I" and b != "I" and a != b
        )
        return anti % 2 == 0


def stabilizers() -> tuple[PauliString, ...]:
    zs = [PauliString.from_support(N_SITES, "Z", s) for s in Z_SUPPORTS]
    xs = [PauliString.from_support(N_SITES, "X", s) for s in X_SUPPORTS]
    return tuple(zs + xs)


@dataclass(frozen=True)
class ToricHamiltonian:
    """Matrix-free handle; ``apply`` acts on 128-amplitude vectors."""

    terms: tuple[PauliString, ...] = field(default_factory=stabilizers)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (DIM,):
            raise WrongSize(f"expected a {DIM}-amplitude vector, got shape {vec.shape}")
        out = np.zeros(DIM, dtype=complex)
        for s in self.terms:
            out -= s.apply(vec)
        return out

    def to_dense(self) -> np.ndarray:
        eye = np.eye(DIM, dtype=complex)
        return np.column_stack([self.apply(eye[:, k]) for k in range(DIM)])

    def spectrum(self) -> np.ndarray:
        """All 128 eigenvalues, ascending."""
        return np.linalg.eigvalsh(self.to_dense())


def build_hamiltonian() -> ToricHamiltonian:
    return ToricHamiltonian()


def _check_size(state: PureState) -> None:
    if state.n != N_SITES:
        raise WrongSize(f"toric code needs a {N_SITES}-qubit state, got n={state.n}")


def stabilizer_expectations(state: PureState) -> tuple[float, ...]:
    """``<S>`` for A1..A6, B1, B2 in that order."""
    _check_size(state)
    psi = state.amplitudes
    return tuple(float(np.vdot(psi, s.apply(psi)).real) for s in stabilizers())


@dataclass(frozen=True)
class ToricReport:
    stabilizer_expectations: tuple[float, ...]
    energy: float
    is_ground_state: bool
    ground_energy: float
    ground_degeneracy: int
    overlap_with_ground: float

    def to_dict(self) -> dict:
        return {
            "stabilizerExpectations": dict(zip(STABILIZER_NAMES, self.stabilizer_expectations)),
            "energy": self.energy,
            "isGroundState": self.is_ground_state,
            "groundEnergy": self.ground_energy,
            "groundDegeneracy": self.ground_degeneracy,
            "overlapWithGround": self.overlap_with_ground,
        }


def verify_toric_ground(state: PureState, h: ToricHamiltonian | None = None) -> ToricReport:
    """Exact diagonalization check that ``state`` is the toric-code ground state.

    ``overlap_with_ground`` is the weight of the state in the whole ground
    eigenspace, so it is meaningful even if the ground level were degenerate.
    """
    _check_size(state)
    h = h or build_hamiltonian()
    evals, evecs = np.linalg.eigh(h.to_dense())
    e0 = float(evals[0])
    ground = evecs[:, np.abs(evals - e0) <= GROUND_TOL]
    psi = state.amplitudes
    overlap = float(np.sum(np.abs(ground.conj().T @ psi) ** 2))
    energy = float(np.vdot(psi, h.apply(psi)).real)
    expectations = stabilizer_expectations(state)
    is_ground = abs(energy - e0) <= GROUND_TOL and all(
        abs(x - 1.0) <= GROUND_TOL for x in expectations
    )
    return ToricReport(
        stabilizer_expectations=expectations,
        energy=energy,
        is_ground_state=is_ground,
        ground_energy=e0,
        ground_degeneracy=int(ground.shape[1]),
        overlap_with_ground=min(1.0, overlap),
    )
