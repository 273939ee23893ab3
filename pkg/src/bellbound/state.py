"""Pure states, reduced density matrices and entanglement measures.

Basis convention: site 1 is the most significant bit of the basis index, so the
bitstring ``"0001111"`` reads left to right as sites 1..7.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadAlpha,
    BadLength,
    BadRegion,
    DuplicateBasis,
    NegativeRadicand,
    NotNormalized,
    TooLarge,
)

MAX_QUBITS = 12
NORM_TOL = 1e-9
EIG_CUTOFF = 1e-12
FLAT_RTOL = 1e-9


def _check_n(n: int) -> None:
    if n > MAX_QUBITS:
        raise TooLarge(f"n={n} exceeds {MAX_QUBITS}")
    if n < 2:
        raise BadLength(f"need at least 2 qubits, got n={n}")


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over ``n`` qubits."""

    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_n(self.n)
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        if amps.size != 2**self.n:
            raise BadLength(f"expected {2**self.n} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm!r} differs from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(2,)*n``; axis ``k`` is site ``k+1``."""
        return self.amplitudes.reshape((2,) * self.n)

    def basis_terms(self, tol: float = 0.0) -> list[tuple[str, complex]]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > tol)
        return [(format(i, f"0{self.n}b"), complex(self.amplitudes[i])) for i in idx]


def make_state(n: int, entries: Iterable[tuple[str, complex]]) -> PureState:
    """Build a state from ``(bitstring, amplitude)`` pairs.

    Unlisted basis states are zero. The amplitudes are used as given: a state
    whose norm is off by more than ``1e-9`` raises :class:`NotNormalized`
    instead of being silently rescaled.
    """
    _check_n(n)
    amps = np.zeros(2**n, dtype=complex)
    seen = set()
    for bits, value in entries:
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise BadLength(f"basis {bits!r} is not a {n}-bit string")
        if bits in seen:
            raise DuplicateBasis(f"basis {bits!r} given twice")
        seen.add(bits)
        amps[int(bits, 2)] = value
    return PureState(n, amps)


def product_state(bits: str) -> PureState:
    return make_state(len(bits), [(bits, 1.0)])


def random_state(n: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state."""
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return PureState(n, v / np.linalg.norm(v))


@dataclass(frozen=True)
class Bipartition:
    """Region A as a set of 1-based site labels; region B is the complement."""

    n: int
    region_a: frozenset

    def __init__(self, n: int, region_a: Iterable[int]):
        region = frozenset(int(s) for s in region_a)
        if not region:
            raise BadRegion("region A is empty")
        if not region <= set(range(1, n + 1)):
            raise BadRegion(f"region A {sorted(region)} not within 1..{n}")
        if len(region) == n:
            raise BadRegion("region A is the whole system")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "region_a", region)

    @property
    def sites_a(self) -> tuple[int, ...]:
        return tuple(sorted(self.region_a))

    @property
    def sites_b(self) -> tuple[int, ...]:
        return tuple(s for s in range(1, self.n + 1) if s not in self.region_a)

    def complement(self) -> "Bipartition":
        return Bipartition(self.n, self.sites_b)


@dataclass(frozen=True)
class DensityMatrix:
    sites: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2 ** len(self.sites),) * 2:
            raise ValueError(f"matrix shape {m.shape} does not match {len(self.sites)} sites")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > NORM_TOL:
            raise ValueError("density matrix trace differs from 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]


def _check_part(state: PureState, part: Bipartition) -> None:
    if part.n != state.n:
        raise BadRegion(f"bipartition is for {part.n} qubits, state has {state.n}")


def reduced_density(state: PureState, part: Bipartition) -> DensityMatrix:
    """Partial trace of ``|psi><psi|`` over region B."""
    _check_part(state, part)
    axes_a = [s - 1 for s in part.sites_a]
    axes_b = [s - 1 for s in part.sites_b]
    m = np.transpose(state.tensor(), axes_a + axes_b).reshape(2 ** len(axes_a), -1)
    rho = m @ m.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(part.sites_a, rho)


def purity(dm: DensityMatrix) -> float:
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(dm.matrix) ** 2))


def _nonzero_spectrum(dm: DensityMatrix) -> np.ndarray:
    lam = dm.eigenvalues()
    return lam[lam > EIG_CUTOFF]


def von_neumann_entropy(dm: DensityMatrix) -> float:
    lam = _nonzero_spectrum(dm)
    return float(abs(-np.sum(lam * np.log(lam))))


def renyi_entropy(dm: DensityMatrix, alpha: float) -> float:
    """Rényi entropy ``ln Tr rho^alpha / (1 - alpha)`` in nats."""
    if not alpha > 0:
        raise BadAlpha(f"alpha must be positive, got {alpha}")
    if abs(alpha - 1.0) <= 1e-12:
        return von_neumann_entropy(dm)
    lam = _nonzero_spectrum(dm)
    return float(abs(np.log(np.sum(lam**alpha)) / (1.0 - alpha)))


def concurrence(state: PureState, part: Bipartition) -> float:
    p = purity(reduced_density(state, part))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - p))))


def generalized_concurrence(state: PureState, part: Bipartition) -> float:
    """``sqrt(2(1 - 2^(m-1) Tr rho_A^2))`` with ``m = |A|``.

    Equals 1 when the reduction on A is maximally mixed and equals the plain
    concurrence for single-site regions.
    """
    m = len(part.region_a)
    radicand = 2.0 * (1.0 - 2 ** (m - 1) * purity(reduced_density(state, part)))
    if radicand < -1e-9:
        raise NegativeRadicand(
            f"2(1 - 2^{m - 1} purity) = {radicand:.3g} < 0; "
            f"region size m={m} is inconsistent with this state"
        )
    return float(np.sqrt(max(0.0, radicand)))


@dataclass(frozen=True)
class SpectrumReport:
    bipartition: Bipartition
    eigenvalues: tuple[float, ...]
    von_neumann: float
    renyi2: float
    rank: int
    is_flat: bool
    is_max_flat: bool = False

    def to_dict(self) -> dict:
        return {
            "regionA": list(self.bipartition.sites_a),
            "eigenvalues": list(self.eigenvalues),
            "vonNeumann": self.von_neumann,
            "renyi2": self.renyi2,
            "rank": self.rank,
            "isFlat": self.is_flat,
            "isMaxFlat": self.is_max_flat,
        }


@dataclass(frozen=True)
class FlatnessReport:
    spectra: tuple[SpectrumReport, ...]
    is_maximally_entangled: bool
    rank_trivial: bool

    def to_dict(self) -> dict:
        return {
            "isMaximallyEntangled": self.is_maximally_entangled,
            "rankTrivial": self.rank_trivial,
            "spectra": [s.to_dict() for s in self.spectra],
        }


def is_flat_spectrum(eigenvalues: Sequence[float]) -> bool:
    lam = np.asarray([x for x in eigenvalues if x > EIG_CUTOFF])
    if lam.size == 0:
        return False
    return bool(lam.max() - lam.min() <= FLAT_RTOL * lam.max())


def bipartition_representatives(n: int) -> list[Bipartition]:
    """One region per ``{A, B}`` pair: ``|A| <= n/2``, and for ``|A| = n/2`` the half containing site 1."""
    parts = []
    for size in range(1, n // 2 + 1):
        for region in combinations(range(1, n + 1), size):
            if 2 * size == n and 1 not in region:
                continue
            parts.append(Bipartition(n, region))
    return parts


def spectrum_report(state: PureState, part: Bipartition) -> SpectrumReport:
    dm = reduced_density(state, part)
    lam = dm.eigenvalues()
    lam = np.where(lam > EIG_CUTOFF, lam, 0.0)
    return SpectrumReport(
        bipartition=part,
        eigenvalues=tuple(float(x) for x in lam),
        von_neumann=von_neumann_entropy(dm),
        renyi2=renyi_entropy(dm, 2.0),
        rank=int(np.count_nonzero(lam)),
        is_flat=is_flat_spectrum(lam),
    )


def flat_spectrum_report(state: PureState) -> FlatnessReport:
    """Entanglement spectrum of every bipartition class and the flatness verdict.

    A state is reported maximally entangled when every cut has a flat nonzero
    spectrum, which is exactly when all Rényi entropies coincide with the von
    Neumann entropy. ``is_max_flat`` additionally requires the cut's rank to
    equal the largest rank seen among cuts of the same size in this state.
    ``rank_trivial`` marks states whose every cut has rank 1 (product states),
    for which flatness holds vacuously.
    """
    if state.n > MAX_QUBITS:
        raise TooLarge(f"n={state.n} > {MAX_QUBITS}")
    reports = [spectrum_report(state, p) for p in bipartition_representatives(state.n)]
    max_rank: dict[int, int] = {}
    for r in reports:
        k = len(r.bipartition.region_a)
        max_rank[k] = max(max_rank.get(k, 0), r.rank)
    reports = [
        SpectrumReport(
            r.bipartition, r.eigenvalues, r.von_neumann, r.renyi2, r.rank, r.is_flat,
            r.is_flat and r.rank == max_rank[len(r.bipartition.region_a)],
        )
        for r in reports
    ]
    return FlatnessReport(
        spectra=tuple(reports),
        is_maximally_entangled=all(r.is_flat for r in reports),
        rank_trivial=all(r.rank == 1 for r in reports),
    )
