"""Complex, quaternion and octonion multiplication as real structure tensors.

Basis conventions: C has basis (1, i), H has basis (1, i, j, k), and the
octonions are built from H by Cayley-Dickson doubling with basis
(1, i, j, k, l, il, jl, kl).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def complex_mul(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.array([z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0]])


def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def quat_conj(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def octonion_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
    a, b = x[:4], x[4:]
    c, d = y[:4], y[4:]
    first = quat_mul(a, c) - quat_mul(quat_conj(d), b)
    second = quat_mul(d, a) + quat_mul(b, quat_conj(c))
    return np.concatenate([first, second])


def _structure_tensor(mul, dim: int) -> np.ndarray:
    eye = np.eye(dim)
    t = np.zeros((dim, dim, dim))
    for a in range(dim):
        for b in range(dim):
            t[:, a, b] = mul(eye[a], eye[b])
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def complex_tensor() -> np.ndarray:
    """T[c][a][b] with z*w = sum T[c][a][b] z_a w_b g_c over C."""
    return _structure_tensor(complex_mul, 2)


@lru_cache(maxsize=None)
def quaternion_tensor() -> np.ndarray:
    return _structure_tensor(quat_mul, 4)


@lru_cache(maxsize=None)
def octonion_tensor() -> np.ndarray:
    return _structure_tensor(octonion_mul, 8)


def division_tensor(dim: int) -> np.ndarray:
    """Structure tensor of the normed division algebra of the given dimension."""
    if dim == 1:
        t = np.ones((1, 1, 1))
        t.setflags(write=False)
        return t
    if dim == 2:
        return complex_tensor()
    if dim == 4:
        return quaternion_tensor()
    if dim == 8:
        return octonion_tensor()
    raise ValueError(f"no normed division algebra of dimension {dim}")


def left_mult_matrices(dim: int) -> list[np.ndarray]:
    """Matrices of left multiplication by each basis unit."""
    t = division_tensor(dim)
    return [np.array(t[:, a, :]) for a in range(dim)]
