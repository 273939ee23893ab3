"""Bell-operator values, the R-matrix upper bound, and see-saw maximization.

The n-qubit operator is

    B_n = A_1 ... A_(n-1) (A_n + A'_n) + A'_1 ... A'_(n-1) (A_n - A'_n)

with ``A_i = a_i . sigma`` and ``A'_i = a'_i . sigma`` for unit vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadConcurrence, DimensionMismatch, TooLarge
from .linalg import eigvalsh3
from .pauli import RMatrix, bloch_operator, correlation_tensor, product_expectation
from .state import PureState, make_state

MAX_SEESAW_QUBITS = 10
DEFAULT_RESTARTS = 64
DEFAULT_SEED = 20180101
SEESAW_TOL = 1e-10
MAX_SWEEPS = 500


@dataclass(frozen=True)
class BellSettings:
    """Bloch directions for ``A_1..A_n`` (``a``) and ``A'_1..A'_n`` (``a_prime``)."""

    a: np.ndarray
    a_prime: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        ap = np.array(self.a_prime, dtype=float)
        if a.ndim != 2 or a.shape[1] != 3 or a.shape != ap.shape:
            raise DimensionMismatch(f"settings shapes {a.shape} and {ap.shape} are not (n, 3)")
        for v in np.vstack([a, ap]):
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"setting {v} is not a unit vector")
        a.setflags(write=False)
        ap.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_prime", ap)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def to_dict(self) -> dict:
        return {"a": self.a.tolist(), "aPrime": self.a_prime.tolist()}


@dataclass(frozen=True)
class BoundReport:
    eigenvalues: tuple[float, float, float]
    bound: float
    is_exact: bool
    classical_violation: bool

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "bound": self.bound,
            "isExact": self.is_exact,
            "classicalViolation": self.classical_violation,
        }


@dataclass(frozen=True)
class GammaSandwich:
    lower: float
    upper: float
    settings: BellSettings
    restarts: int
    converged: bool
    restart_values: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "settings": self.settings.to_dict(),
            "restarts": self.restarts,
            "converged": self.converged,
        }


def bell_bound(r: RMatrix) -> BoundReport:
    """Upper bound ``2 sqrt(u1^2 + u2^2)`` from the two largest eigenvalues of R^T R.

    The bound is the exact maximum for two qubits and an upper bound otherwise.
    """
    u = eigvalsh3(r.gram())
    bound = 2.0 * math.sqrt(max(0.0, u[0] + u[1]))
    return BoundReport(
        eigenvalues=u,
        bound=bound,
        is_exact=r.n == 2,
        classical_violation=bound > 2.0 + 1e-12,
    )


def bell_operator_value(state: PureState, s: BellSettings) -> float:
    """``Tr(rho B_n)`` from two product-operator expectations on the state vector."""
    if s.n != state.n:
        raise DimensionMismatch(f"settings for {s.n} qubits, state has {state.n}")
    a = [bloch_operator(v) for v in s.a]
    ap = [bloch_operator(v) for v in s.a_prime]
    first = a[:-1] + [a[-1] + ap[-1]]
    second = ap[:-1] + [a[-1] - ap[-1]]
    return float((product_expectation(state, first) + product_expectation(state, second)).real)


def _contract(t: np.ndarray, vecs: np.ndarray, skip: int, last: np.ndarray = None) -> np.ndarray:
    """Contract the correlation tensor with per-site vectors except site ``skip``.

    ``vecs`` has shape (batch, n, 3); ``last`` optionally replaces the vectors
    of the final site. The result has shape (batch, 3).
    """
    n = t.ndim
    b = vecs.shape[0]
    if skip == n - 1:
        m = np.broadcast_to(t.reshape(1, -1), (b, t.size))
    else:
        v_last = vecs[:, n - 1] if last is None else last
        # (3^(n-1), 3) @ (3, b) contracts the last site for every batch member at once
        m = (t.reshape(-1, 3) @ v_last.T).T
        for j in range(n - 2, skip, -1):
            m = np.matmul(m.reshape(b, -1, 3), vecs[:, j, :, None])[..., 0]
    for j in range(skip):
        m = np.matmul(vecs[:, j, None, :], m.reshape(b, 3, -1))[:, 0]
    return m.reshape(b, 3)


def _normalize_or_keep(c: np.ndarray, old: np.ndarray) -> np.ndarray:
    norm = np.sqrt(np.einsum("bk,bk->b", c, c))
    ok = norm > 1e-14
    if ok.all():
        return c / norm[:, None]
    out = old.copy()
    out[ok] = c[ok] / norm[ok, None]
    return out


def _sweep(t: np.ndarray, a: np.ndarray, ap: np.ndarray) -> np.ndarray:
    """One pass of exact coordinate updates, in place. Returns the new values."""
    n = t.ndim
    plus = a[:, -1] + ap[:, -1]
    minus = a[:, -1] - ap[:, -1]
    for i in range(n - 1):
        a[:, i] = _normalize_or_keep(_contract(t, a, i, plus), a[:, i])
        ap[:, i] = _normalize_or_keep(_contract(t, ap, i, minus), ap[:, i])
    x = _contract(t, a, n - 1)
    y = _contract(t, ap, n - 1)
    a[:, -1] = _normalize_or_keep(x + y, a[:, -1])
    ap[:, -1] = _normalize_or_keep(x - y, ap[:, -1])
    return np.einsum("bk,bk->b", x, a[:, -1] + ap[:, -1]) + np.einsum(
        "bk,bk->b", y, a[:, -1] - ap[:, -1]
    )


def tensor_value(t: np.ndarray, a: np.ndarray, ap: np.ndarray) -> np.ndarray:
    """Batched ``Tr(rho B_n)`` from the correlation tensor; ``a``, ``ap`` are (batch, n, 3)."""
    x = _contract(t, a, t.ndim - 1)
    y = _contract(t, ap, t.ndim - 1)
    return np.einsum("bk,bk->b", x, a[:, -1] + ap[:, -1]) + np.einsum(
        "bk,bk->b", y, a[:, -1] - ap[:, -1]
    )


def seesaw(
    t: np.ndarray,
    a0: np.ndarray,
    ap0: np.ndarray,
    tol: float = SEESAW_TOL,
    max_sweeps: int | None = None,
    record: bool = False,
):
    """Run see-saw ascent from a batch of starting settings.

    Each restart stops once a sweep improves its value by less than ``tol``.
    Returns ``(a, ap, values, converged, history)``; ``history`` is a list of
    per-sweep value arrays (NaN for restarts that already stopped) when
    ``record`` is set, else ``None``.
    """
    max_sweeps = MAX_SWEEPS if max_sweeps is None else max_sweeps
    a = np.array(a0, dtype=float)
    ap = np.array(ap0, dtype=float)
    values = tensor_value(t, a, ap)
    converged = np.zeros(len(a), dtype=bool)
    history = [values.copy()] if record else None
    for _ in range(max_sweeps):
        active = np.flatnonzero(~converged)
        if active.size == 0:
            break
        sub_a, sub_ap = a[active], ap[active]
        new = _sweep(t, sub_a, sub_ap)
        a[active], ap[active] = sub_a, sub_ap
        converged[active] = new - values[active] < tol
        values[active] = new
        if record:
            h = np.full(len(a), np.nan)
            h[active] = new
            history.append(h)
    return a, ap, values, converged, history


def _random_unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    v = rng.normal(size=(count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def initial_settings(n: int, restarts: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform random starting directions, one independent stream per restart."""
    children = np.random.SeedSequence(seed).spawn(restarts)
    a = np.empty((restarts, n, 3))
    ap = np.empty((restarts, n, 3))
    for r, child in enumerate(children):
        rng = np.random.default_rng(child)
        a[r] = _random_unit_vectors(rng, n)
        ap[r] = _random_unit_vectors(rng, n)
    return a, ap


def maximize_bell(
    state: PureState,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    tol: float = SEESAW_TOL,
    max_sweeps: int | None = None,
) -> GammaSandwich:
    """Best see-saw value of ``Tr(rho B_n)`` next to the R-matrix upper bound.

    ``converged`` refers to the restart that produced the best value.
    """
    if state.n > MAX_SEESAW_QUBITS:
        raise TooLarge(f"see-saw limited to n <= {MAX_SEESAW_QUBITS}, got {state.n}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    t = correlation_tensor(state)
    a0, ap0 = initial_settings(state.n, restarts, seed)
    a, ap, values, converged, _ = seesaw(t, a0, ap0, tol=tol, max_sweeps=max_sweeps)
    best = int(np.argmax(values))
    upper = bell_bound(RMatrix(state.n, t)).bound
    return GammaSandwich(
        lower=float(values[best]),
        upper=upper,
        settings=BellSettings(a[best], ap[best]),
        restarts=restarts,
        converged=bool(converged[best]),
        restart_values=values,
    )


def _check_concurrence(c_a: float) -> float:
    if not (0.0 <= c_a <= 1.0):
        raise BadConcurrence(f"concurrence {c_a} outside [0, 1]")
    return float(c_a)


def theorem_gamma(c_a: float, alpha_half_qubits: int) -> float:
    """Closed-form ``2 f_{2 alpha}`` for the two-branch GHZ-type family.

    ``f = sqrt(1 + 2^(2 alpha - 2) C^2)`` while ``C^2 <= 2^(2 - 2 alpha)``,
    else ``2^((2 alpha - 1)/2) C``. Both branches give ``sqrt(2)`` at the switch.
    """
    c = _check_concurrence(c_a)
    k = int(alpha_half_qubits)
    if k < 1:
        raise ValueError("alpha_half_qubits must be >= 1")
    if c * c <= 2.0 ** (2 - 2 * k):
        f = math.sqrt(1.0 + 2.0 ** (2 * k - 2) * c * c)
    else:
        f = 2.0 ** ((2 * k - 1) / 2) * c
    return 2.0 * f


def theorem_state(alpha_half_qubits: int, c_a: float, pad_qubits: int = 0) -> PureState:
    """``|0..0> (x) (l+ |1..1>|1> + l- |0..0>|0>)`` on ``pad + 2 alpha`` qubits.

    ``l+^2 = (1 + sqrt(1 - C^2))/2`` and ``l-^2 = (1 - sqrt(1 - C^2))/2``, so the
    concurrence of the last qubit is ``C``.
    """
    c = _check_concurrence(c_a)
    k = int(alpha_half_qubits)
    if k < 1 or pad_qubits < 0:
        raise ValueError("need alpha_half_qubits >= 1 and pad_qubits >= 0")
    lam_plus = math.sqrt((1.0 + math.sqrt(1.0 - c * c)) / 2.0)
    # l+ l- = C/2; avoids cancellation in 1 - sqrt(1 - C^2) for small C
    lam_minus = c / (2.0 * lam_plus)
    n = pad_qubits + 2 * k
    entries = [("0" * pad_qubits + "1" * (2 * k), lam_plus)]
    if lam_minus > 0:
        entries.append(("0" * n, lam_minus))
    return make_state(n, entries)
