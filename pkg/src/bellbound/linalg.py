"""Closed-form eigenvalues of real symmetric 3x3 matrices."""

from __future__ import annotations

import math

import numpy as np


def _det3(b: np.ndarray) -> float:
    return float(
        b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1])
        - b[0, 1] * (b[1, 0] * b[2, 2] - b[1, 2] * b[2, 0])
        + b[0, 2] * (b[1, 0] * b[2, 1] - b[1, 1] * b[2, 0])
    )


def _isolated_vector(m: np.ndarray) -> np.ndarray | None:
    """Unit null vector of a rank-2 symmetric ``m`` from the largest row cross product."""
    cands = (np.cross(m[0], m[1]), np.cross(m[0], m[2]), np.cross(m[1], m[2]))
    c = max(cands, key=lambda v: float(v @ v))
    norm = math.sqrt(float(c @ c))
    return None if norm == 0.0 else c / norm


def _complement(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(v)))] = 1.0
    u = np.cross(v, axis)
    u /= np.linalg.norm(u)
    return u, np.cross(v, u)


def eigvalsh3(a) -> tuple[float, float, float]:
    """Eigenvalues of a real symmetric 3x3 matrix, descending.

    The trigonometric solution of the characteristic cubic is accurate for
    whichever root is farthest from the other two but loses about half the
    digits for a nearly repeated pair. So only that isolated root is taken from
    it; its eigenvector comes from row cross products, and the remaining pair
    is the closed-form spectrum of the 2x2 block on the orthogonal plane.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    a = 0.5 * (a + a.T)
    off = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    if off == 0.0:
        e = sorted(np.diag(a).tolist(), reverse=True)
        return e[0], e[1], e[2]
    scale = float(np.max(np.abs(a)))
    e = _eigvalsh3_unit(a / scale)
    return e[0] * scale, e[1] * scale, e[2] * scale


def _eigvalsh3_unit(a: np.ndarray) -> tuple[float, float, float]:
    off = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = np.trace(a) / 3.0
    p = math.sqrt((float(np.sum((np.diag(a) - q) ** 2)) + 2.0 * off) / 6.0)
    if p < 1e-150:
        return q, q, q
    r = _det3((a - q * np.eye(3)) / p) / 2.0
    phi = math.acos(min(1.0, max(-1.0, r))) / 3.0
    # phi < pi/6: the top root sits farthest from the others; otherwise the bottom one
    shift = 0.0 if phi < math.pi / 6.0 else 2.0 * math.pi / 3.0
    iso = q + 2.0 * p * math.cos(phi + shift)

    v = _isolated_vector(a - iso * np.eye(3))
    if v is None:
        lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
        hi = q + 2.0 * p * math.cos(phi)
        e = sorted((hi, 3.0 * q - hi - lo, lo), reverse=True)
        return e[0], e[1], e[2]

    u, w = _complement(v)
    iso = float(v @ a @ v)
    h11, h22, h12 = float(u @ a @ u), float(w @ a @ w), float(u @ a @ w)
    mid = 0.5 * (h11 + h22)
    rad = math.hypot(0.5 * (h11 - h22), h12)
    e = sorted((iso, mid + rad, mid - rad), reverse=True)
    return e[0], e[1], e[2]
