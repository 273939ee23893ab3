"""The seven-qubit family

    |psi> = a1 |000000>|0> + a2 |000111>|1> + a3 |111100>|0> + a4 |111011>|1>

with region A the last site. Three coordinate systems are supported: angles
(theta1, theta2, theta3), coefficients (a1..a4) and the concurrence triple
(C1^2, C2^2, C^2). Everything that depends on the state only through the
probabilities p_i = a_i^2 is sign-branch independent.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundaryPoint, EmptyGrid, NotNormalized, OutOfGamut, OutOfRange
from .linalg import eigvalsh3
from .state import PureState, make_state

BASIS = ("0000000", "0001111", "1111000", "1110111")
NORM_TOL = 1e-12
GAMUT_TOL = 1e-12
DEFAULT_EPS = 1e-3

FIG1 = {"fix": "c1sq", "value": 0.75, "series": (0.75, 0.8, 0.85, 0.9, 0.95)}
FIG2 = {"fix": "c2sq", "value": 0.75, "series": (0.75, 0.8, 0.85, 0.9, 0.95, 1.0)}


@dataclass(frozen=True)
class FamilyAngles:
    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self):
        if not 0.0 <= self.theta1 <= 2 * math.pi:
            raise OutOfRange(f"theta1={self.theta1} outside [0, 2pi]")
        for name in ("theta2", "theta3"):
            v = getattr(self, name)
            if not 0.0 <= v <= math.pi:
                raise OutOfRange(f"{name}={v} outside [0, pi]")


@dataclass(frozen=True)
class FamilyCoeffs:
    alpha: tuple[float, float, float, float]

    def __post_init__(self):
        a = tuple(float(x) for x in self.alpha)
        if len(a) != 4:
            raise ValueError("need exactly four coefficients")
        norm = sum(x * x for x in a)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"sum of squared coefficients is {norm!r}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def from_probabilities(cls, p: Sequence[float]) -> "FamilyCoeffs":
        """Principal branch ``a_i = sqrt(p_i)``."""
        return cls(tuple(math.sqrt(max(0.0, x)) for x in p))

    @property
    def probabilities(self) -> np.ndarray:
        return np.array(self.alpha) ** 2


@dataclass(frozen=True)
class ConcurrenceTriple:
    c1sq: float
    c2sq: float
    csq: float

    def __post_init__(self):
        for name in ("c1sq", "c2sq", "csq"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise OutOfGamut(f"{name}={v} outside [0, 1]", formula=name)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1sq, self.c2sq, self.csq)


CRITICAL = FamilyCoeffs((0.5, 0.5, 0.5, 0.5))
GHZ_POINT = FamilyCoeffs((math.sqrt(0.5), math.sqrt(0.5), 0.0, 0.0))


def coeffs_from_angles(a: FamilyAngles) -> FamilyCoeffs:
    s1, c1 = math.sin(a.theta1), math.cos(a.theta1)
    s2, c2 = math.sin(a.theta2), math.cos(a.theta2)
    s3, c3 = math.sin(a.theta3), math.cos(a.theta3)
    return FamilyCoeffs((s1, c1 * s2, c1 * c2 * c3, c1 * c2 * s3))


def state_from_coeffs(c: FamilyCoeffs) -> PureState:
    return make_state(7, list(zip(BASIS, c.alpha)))


@dataclass(frozen=True)
class RecoveredAngles:
    angles: tuple[float, float, float]
    degenerate: bool


def angles_from_coeffs(c: FamilyCoeffs) -> RecoveredAngles:
    """Principal-branch angles; an unrecoverable angle is set to 0 and flagged.

    theta1 is taken with cos(theta1) >= 0. theta2 is undefined when
    cos(theta1) = 0, theta3 when cos(theta1) cos(theta2) = 0.
    """
    a1, a2, a3, a4 = c.alpha
    r1 = math.sqrt(a2 * a2 + a3 * a3 + a4 * a4)
    theta1 = math.atan2(a1, r1) % (2 * math.pi)
    degenerate = False
    if r1 == 0.0:
        return RecoveredAngles((theta1, 0.0, 0.0), True)
    r2 = math.hypot(a3, a4)
    theta2 = math.atan2(abs(a2), r2)
    if r2 == 0.0:
        return RecoveredAngles((theta1, theta2, 0.0), True)
    theta3 = math.atan2(a4, a3) % (2 * math.pi)
    return RecoveredAngles((theta1, theta2, theta3), degenerate)


def concurrences_from_coeffs(c: FamilyCoeffs) -> ConcurrenceTriple:
    """Squared concurrences of the beta-reduced, gamma-reduced and full states.

    beta = (sin t1, cos t1, 0, 0) and gamma = (sin t1, cos t1 sin t2, cos t1 cos t2, 0)
    are built from the recovered angles; region A is always the last qubit.
    """
    t1, t2, _ = angles_from_coeffs(c).angles
    b1, b2 = math.sin(t1) ** 2, math.cos(t1) ** 2
    g1 = b1
    g2 = b2 * math.sin(t2) ** 2
    g3 = b2 * math.cos(t2) ** 2
    p = c.probabilities
    pur1 = b1 * b1 + b2 * b2
    pur2 = (g1 + g3) ** 2 + g2 * g2
    pur = (p[0] + p[2]) ** 2 + (p[1] + p[3]) ** 2

    def clip(x: float) -> float:
        return min(1.0, max(0.0, x))

    return ConcurrenceTriple(clip(2 * (1 - pur1)), clip(2 * (1 - pur2)), clip(2 * (1 - pur)))


def _unit_interval(value: float, formula: str) -> float:
    if value < -GAMUT_TOL or value > 1.0 + GAMUT_TOL:
        raise OutOfGamut(f"{formula} = {value!r} is outside [0, 1]", formula=formula)
    return min(1.0, max(0.0, value))


def _root(x: float, formula: str) -> float:
    if x < -GAMUT_TOL:
        raise OutOfGamut(f"negative radicand {x!r} in {formula}", formula=formula)
    return math.sqrt(max(0.0, x))


def coeffs_from_concurrences(t: ConcurrenceTriple) -> FamilyCoeffs:
    """Invert the concurrence coordinates on the principal branch.

    Uses beta1^2 = 1/2 - sqrt(1 - C1^2)/2 for sin^2(theta1), then the closed
    forms for cos^2(theta2) and cos^2(theta3). When cos(theta2) vanishes the
    value of theta3 is irrelevant and cos^2(theta3) = 1 is used.
    """
    k1 = _root(1.0 - t.c1sq, "sqrt(1 - C1^2)")
    k2 = _root(1.0 - t.c2sq, "sqrt(1 - C2^2)")
    k = _root(1.0 - t.csq, "sqrt(1 - C^2)")

    sin2_t1 = _unit_interval(0.5 - k1 / 2.0, "beta1^2")
    cos2_t2 = _unit_interval((k1 + k2) / (1.0 + k1), "cos^2(theta2)")
    denom = k1 + k2
    if denom == 0.0:
        if k > GAMUT_TOL:
            raise OutOfGamut(
                "cos^2(theta3) is undefined with C1^2 = C2^2 = 1 unless C^2 = 1",
                formula="cos^2(theta3)",
            )
        cos2_t3 = 1.0
    else:
        cos2_t3 = _unit_interval(((k1 * k2 + 1.0 - t.c1sq) / denom + k) / denom, "cos^2(theta3)")

    cos2_t1 = 1.0 - sin2_t1
    p = (
        sin2_t1,
        cos2_t1 * (1.0 - cos2_t2),
        cos2_t1 * cos2_t2 * cos2_t3,
        cos2_t1 * cos2_t2 * (1.0 - cos2_t3),
    )
    return FamilyCoeffs.from_probabilities(p)


def in_gamut(t: ConcurrenceTriple) -> bool:
    try:
        coeffs_from_concurrences(t)
    except OutOfGamut:
        return False
    return True


def rtr_from_probabilities(p: Sequence[float]) -> tuple[float, float, float]:
    """Closed-form diagonal of R^T R for the family in terms of p_i = a_i^2."""
    p1, p2, p3, p4 = p
    xx = 16.0 * (p1 + p3) * (p2 + p4) + 48.0 * (p1 * p4 + p2 * p3)
    zz = 1.0 + 32.0 * p1 * p3 + 32.0 * p2 * p4
    return xx, xx, zz


def rtr_diagonal(c: FamilyCoeffs) -> tuple[float, float, float]:
    return rtr_from_probabilities(c.probabilities)


def bound_from_diagonal(diag: Sequence[float]) -> float:
    top = sorted(diag, reverse=True)
    return 2.0 * math.sqrt(top[0] + top[1])


def family_bound(c: FamilyCoeffs) -> float:
    return bound_from_diagonal(rtr_diagonal(c))


def _bound_p(p: np.ndarray) -> float:
    return bound_from_diagonal(rtr_from_probabilities(p))


# ---------------------------------------------------------------------------
# figure sweeps and independence loci


@dataclass(frozen=True)
class SweepRow:
    c1sq: float
    c2sq: float
    csq: float
    rxx: float | None
    rzz: float | None
    bound: float | None
    gamut: bool


def _sweep_point(c1sq: float, c2sq: float, csq: float) -> SweepRow:
    try:
        coeffs = coeffs_from_concurrences(ConcurrenceTriple(c1sq, c2sq, csq))
    except OutOfGamut:
        return SweepRow(c1sq, c2sq, csq, None, None, None, False)
    xx, _, zz = rtr_diagonal(coeffs)
    return SweepRow(c1sq, c2sq, csq, xx, zz, bound_from_diagonal((xx, xx, zz)), True)


def default_threads() -> int:
    env = os.environ.get("BELLBOUND_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def sweep(
    fix: str,
    fixed_value: float,
    series_values: Iterable[float],
    csq_grid: Iterable[float],
    threads: int | None = None,
) -> list[SweepRow]:
    """Bound over a grid of C^2 for each series value of the free concurrence.

    ``fix`` names which of ``"c1sq"`` / ``"c2sq"`` is held at ``fixed_value``;
    the series runs over the other one. Row order is series-major and follows
    the inputs, however many threads evaluate it.
    """
    if fix not in ("c1sq", "c2sq"):
        raise ValueError(f"fix must be 'c1sq' or 'c2sq', got {fix!r}")
    series = list(series_values)
    grid = list(csq_grid)
    if not series or not grid:
        raise EmptyGrid("series and csq grid must be nonempty")
    for v in [fixed_value, *series, *grid]:
        if not 0.0 <= v <= 1.0:
            raise OutOfGamut(f"grid value {v} outside [0, 1]", formula="grid")
    points = []
    for s in series:
        c1, c2 = (fixed_value, s) if fix == "c1sq" else (s, fixed_value)
        points.extend((c1, c2, x) for x in grid)
    with ThreadPoolExecutor(max_workers=threads or default_threads()) as pool:
        return list(pool.map(lambda pt: _sweep_point(*pt), points))


def figure_sweep(figure: int, points: int = 201, threads: int | None = None) -> list[SweepRow]:
    cfg = {1: FIG1, 2: FIG2}[figure]
    return sweep(cfg["fix"], cfg["value"], cfg["series"], np.linspace(0.0, 1.0, points), threads)


def series_curves(rows: Sequence[SweepRow], fix: str) -> dict[float, list[SweepRow]]:
    """Group sweep rows by series value, keeping only in-gamut rows."""
    key = "c2sq" if fix == "c1sq" else "c1sq"
    curves: dict[float, list[SweepRow]] = {}
    for r in rows:
        if r.gamut:
            curves.setdefault(getattr(r, key), []).append(r)
    return curves


def interior_extrema(values: Sequence[float]) -> list[int]:
    """Indices of strict interior local maxima or minima."""
    out = []
    for i in range(1, len(values) - 1):
        lo, mid, hi = values[i - 1], values[i], values[i + 1]
        if (mid > lo and mid > hi) or (mid < lo and mid < hi):
            out.append(i)
    return out


@dataclass(frozen=True)
class LocusReport:
    mode: str
    csq: float
    reference_bound: float | None
    max_deviation: float
    evaluated: int
    out_of_gamut: int
    rxx_below_rzz: int


def independence_locus_check(
    mode: str,
    samples: int,
    csq: float = 1.0,
    free_range: tuple[float, float] | None = None,
) -> LocusReport:
    """Measure how much the bound varies along an independence locus.

    ``c2-independent``: 1 - 2 sqrt(1 - C1^2) - sqrt(1 - C^2) = 0 fixes C1^2 and
    C2^2 is varied. ``c1-independent``: 1 - 2 sqrt(1 - C2^2) + sqrt(1 - C^2) = 0
    fixes C2^2 and C1^2 is varied. Points with R_xx < R_zz violate the side
    condition; they are counted and left out of the deviation, as are
    out-of-gamut points.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    k = math.sqrt(max(0.0, 1.0 - csq))
    if mode == "c2-independent":
        forced = 1.0 - ((1.0 - k) / 2.0) ** 2
        lo, hi = free_range or (0.75, 0.999)
    elif mode == "c1-independent":
        forced = 1.0 - ((1.0 + k) / 2.0) ** 2
        lo, hi = free_range or (0.75, 1.0)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    bounds = []
    skipped = flagged = 0
    for free in np.linspace(lo, hi, samples):
        c1, c2 = (forced, free) if mode == "c2-independent" else (free, forced)
        row = _sweep_point(c1, c2, csq)
        if not row.gamut:
            skipped += 1
            continue
        if row.rxx < row.rzz:
            flagged += 1
            continue
        bounds.append(row.bound)
    ref = bounds[0] if bounds else None
    dev = max((abs(b - ref) for b in bounds), default=0.0)
    return LocusReport(mode, csq, ref, dev, len(bounds), skipped, flagged)


# ---------------------------------------------------------------------------
# stationary-point classification on the probability simplex

# orthonormal basis of the tangent space {dp : sum dp = 0}
TANGENT_BASIS = np.array(
    [
        [0.5, -0.5, -0.5, 0.5],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, -1.0, 0.0],
    ]
)
TANGENT_BASIS[1:] /= math.sqrt(2.0)


@dataclass(frozen=True)
class CriticalReport:
    point: FamilyCoeffs
    eps: float
    bound: float
    gradient_norm: float
    first_difference: float
    hessian_eigenvalues: tuple[float, float, float]
    noise_floor: float
    classification: str
    witness_up: tuple[float, ...] | None
    witness_down: tuple[float, ...] | None
    second_up: float | None
    second_down: float | None
    active_branch: str

    def to_dict(self) -> dict:
        return {
            "point": list(self.point.alpha),
            "eps": self.eps,
            "bound": self.bound,
            "gradientNorm": self.gradient_norm,
            "firstDifference": self.first_difference,
            "hessianEigenvalues": list(self.hessian_eigenvalues),
            "noiseFloor": self.noise_floor,
            "classification": self.classification,
            "witnessUp": None if self.witness_up is None else list(self.witness_up),
            "witnessDown": None if self.witness_down is None else list(self.witness_down),
            "secondDifferenceUp": self.second_up,
            "secondDifferenceDown": self.second_down,
            "activeBranch": self.active_branch,
        }


def _candidate_directions() -> list[np.ndarray]:
    dirs = list(TANGENT_BASIS)
    for i in range(3):
        for j in range(i + 1, 3):
            dirs.append((TANGENT_BASIS[i] + TANGENT_BASIS[j]) / math.sqrt(2.0))
            dirs.append((TANGENT_BASIS[i] - TANGENT_BASIS[j]) / math.sqrt(2.0))
    return dirs


def _active_branch(p: np.ndarray) -> str:
    xx, _, zz = rtr_from_probabilities(p)
    if xx > zz:
        return "xx+yy"
    if xx < zz:
        return "xx+zz"
    return "tie"


def classify_critical_point(c: FamilyCoeffs, eps: float = DEFAULT_EPS) -> CriticalReport:
    """Finite-difference stationarity test and saddle classification of the bound.

    The bound is treated as a function of p on the simplex. Directions are the
    fixed orthonormal tangent basis and their pairwise (normalized) sums and
    differences, stepped by ``eps``. ``gradient_norm`` is the largest central
    difference quotient; ``first_difference`` is the largest raw change
    ``|f(p + eps d) - f(p)|``, which shrinks like eps^2 exactly when p is
    stationary. Classification comes from the signs of the eigenvalues of the
    finite-difference Hessian, compared against a rounding noise floor.
    """
    if not 1e-5 <= eps <= 1e-1:
        raise ValueError(f"eps={eps} outside [1e-5, 1e-1]")
    p0 = c.probabilities
    if np.any(p0 < eps):
        raise BoundaryPoint(f"probabilities {p0.tolist()} too close to the simplex boundary")

    def f(dp: np.ndarray) -> float:
        p = p0 + dp
        if np.any(p < 0.0):
            raise BoundaryPoint("difference stencil leaves the simplex")
        return _bound_p(p)

    f0 = f(np.zeros(4))
    dirs = _candidate_directions()
    plus = [f(eps * d) for d in dirs]
    minus = [f(-eps * d) for d in dirs]
    gradient_norm = max(abs(fp - fm) / (2 * eps) for fp, fm in zip(plus, minus))
    first_difference = max(max(abs(fp - f0), abs(fm - f0)) for fp, fm in zip(plus, minus))
    second = [fp - 2 * f0 + fm for fp, fm in zip(plus, minus)]

    hess = np.zeros((3, 3))
    for i in range(3):
        hess[i, i] = second[i] / eps**2
        for j in range(i + 1, 3):
            ui, uj = TANGENT_BASIS[i], TANGENT_BASIS[j]
            mixed = (
                f(eps * (ui + uj)) - f(eps * (ui - uj)) - f(eps * (uj - ui)) + f(-eps * (ui + uj))
            ) / (4 * eps**2)
            hess[i, j] = hess[j, i] = mixed
    eig = eigvalsh3(hess)

    # rounding noise of a raw second difference of f
    noise = 64 * np.finfo(float).eps * abs(f0)
    tol = 10 * noise / eps**2
    if eig[0] > tol and eig[2] < -tol:
        kind = "saddle"
    elif eig[2] > tol:
        kind = "local-min"
    elif eig[0] < -tol:
        kind = "local-max"
    else:
        kind = "degenerate"

    up = next((k for k, s in enumerate(second) if s > 10 * noise), None)
    down = next((k for k, s in enumerate(second) if s < -10 * noise), None)
    return CriticalReport(
        point=c,
        eps=eps,
        bound=f0,
        gradient_norm=gradient_norm,
        first_difference=first_difference,
        hessian_eigenvalues=eig,
        noise_floor=noise,
        classification=kind,
        witness_up=None if up is None else tuple(dirs[up].tolist()),
        witness_down=None if down is None else tuple(dirs[down].tolist()),
        second_up=None if up is None else second[up],
        second_down=None if down is None else second[down],
        active_branch=_active_branch(p0),
    )
