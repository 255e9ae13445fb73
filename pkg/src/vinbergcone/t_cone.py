"""Hermitian space of the T-algebra, the orbit map A -> AA*, factorization and barriers.

Group, Lie and Hermitian elements share one layout: a real diagonal of
length n and a vector in N_ij for every edge (i, j) of the algebra. Only the
upper triangle is stored; x_ji is the adjoint of x_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .nil_algebra import AlgebraError, FormatError, QuasiNilAlgebra, _key, _parse_index

SERIES_TOL = 1e-14
MAX_TERMS = 400
NORM_CAP = 30.0


class NotInConeError(ArithmeticError):
    def __init__(self, pivot: int, value: float):
        self.pivot = pivot
        self.value = value
        super().__init__(f"not in cone: pivot {pivot} is {value:.3g}")


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class _Blocks:
    diag: np.ndarray
    off: dict[tuple[int, int], np.ndarray]

    @classmethod
    def zeros(cls, N: QuasiNilAlgebra):
        return cls(np.zeros(N.n), {e: np.zeros(N.dim(*e)) for e in N.edges()})

    @classmethod
    def identity(cls, N: QuasiNilAlgebra):
        return cls(np.ones(N.n), {e: np.zeros(N.dim(*e)) for e in N.edges()})

    @classmethod
    def from_vector(cls, N: QuasiNilAlgebra, vec: Sequence[float]):
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (coordinate_dim(N),):
            raise AlgebraError(f"coordinate vector has shape {vec.shape}")
        off, pos = {}, N.n
        for e in N.edges():
            d = N.dim(*e)
            off[e] = vec[pos:pos + d].copy()
            pos += d
        return cls(vec[:N.n].copy(), off)

    def to_vector(self) -> np.ndarray:
        parts = [np.asarray(self.diag, dtype=float)]
        parts += [np.asarray(self.off[e], dtype=float) for e in sorted(self.off)]
        return np.concatenate(parts)

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_vector()))

    def __add__(self, other):
        return type(self)(self.diag + other.diag, {e: v + other.off[e] for e, v in self.off.items()})

    def __sub__(self, other):
        return self + other * -1.0

    def __mul__(self, t: float):
        return type(self)(self.diag * t, {e: v * t for e, v in self.off.items()})

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"diag": [float(x) for x in self.diag],
                "off": {_key(e): [float(x) for x in v] for e, v in sorted(self.off.items())}}

    @classmethod
    def from_json(cls, N: QuasiNilAlgebra, data: Any):
        if not isinstance(data, dict) or "diag" not in data:
            raise FormatError("$", "point must be an object with 'diag' and 'off'")
        diag = np.asarray(data["diag"], dtype=float)
        if diag.shape != (N.n,):
            raise FormatError("$.diag", f"expected {N.n} entries, got shape {diag.shape}")
        off = {e: np.zeros(N.dim(*e)) for e in N.edges()}
        for key, v in dict(data.get("off", {})).items():
            path = f"$.off.{key}"
            e = _parse_index(key, 2, path)
            if e not in off:
                raise FormatError(path, "not an edge of the algebra")
            arr = np.asarray(v, dtype=float)
            if arr.shape != off[e].shape:
                raise FormatError(path, f"expected {off[e].shape[0]} entries, got shape {arr.shape}")
            off[e] = arr
        return cls(diag, off)


@dataclass(frozen=True)
class GroupElement(_Blocks):
    """Upper-triangular element with positive diagonal."""


@dataclass(frozen=True)
class HermElement(_Blocks):
    """Point of the Hermitian space."""


@dataclass(frozen=True)
class LieElement(_Blocks):
    """Upper-triangular element with unrestricted diagonal."""


@dataclass(frozen=True)
class NotInCone:
    pivot: int
    value: float


def coordinate_dim(N: QuasiNilAlgebra) -> int:
    return N.n + sum(N.dims.values())


# ---------------------------------------------------------------------------
# products


def adjoint_product(N: QuasiNilAlgebra, i: int, j: int, k: int, a_ik, a_jk) -> np.ndarray:
    """a_ik a_jk* in N_ij, defined by <a_ik a_jk*, x> = <a_ik, x a_jk>."""
    if (i, j, k) not in N.tensors:
        raise AlgebraError(f"no product on blocks {i}{j}, {j}{k}")
    return np.einsum("cab,c,b->a", N.tensors[(i, j, k)], a_ik, a_jk)


def herm_from_group(N: QuasiNilAlgebra, A: _Blocks) -> HermElement:
    """X = A A*."""
    n = N.n
    d = np.asarray(A.diag, dtype=float)
    diag = d ** 2
    for (i, k), v in A.off.items():
        diag[i - 1] += float(v @ v)
    off = {}
    for i, j in N.edges():
        x = A.off[(i, j)] * d[j - 1]
        for k in range(j + 1, n + 1):
            if N.has(i, k) and N.has(j, k):
                x = x + adjoint_product(N, i, j, k, A.off[(i, k)], A.off[(j, k)])
        off[(i, j)] = x
    return HermElement(diag, off)


def _peel(N: QuasiNilAlgebra, diag: np.ndarray, off: dict, tol: float):
    """Back-to-front factorization on real or complex coordinates.

    Complex input is only used for complex-step derivatives, so all products
    are the analytic (non-conjugating) continuation of the real ones.
    """
    n = N.n
    x_diag = np.array(diag)
    x_off = {e: np.array(v) for e, v in off.items()}
    d = np.zeros(n, dtype=x_diag.dtype)
    a_off: dict[tuple[int, int], np.ndarray] = {}
    for k in range(n, 0, -1):
        piv = x_diag[k - 1]
        if not np.real(piv) > tol:
            return NotInCone(k, float(np.real(piv)))
        d[k - 1] = np.sqrt(piv)
        for i in range(1, k):
            if N.has(i, k):
                a_off[(i, k)] = x_off[(i, k)] / d[k - 1]
                x_diag[i - 1] -= a_off[(i, k)] @ a_off[(i, k)]
        for i in range(1, k):
            for j in range(i + 1, k):
                if N.has(i, j) and N.has(i, k) and N.has(j, k):
                    x_off[(i, j)] = x_off[(i, j)] - adjoint_product(N, i, j, k, a_off[(i, k)], a_off[(j, k)])
    return d, a_off


def generalized_cholesky(N: QuasiNilAlgebra, X: HermElement,
                         rtol: float = 1e-12) -> GroupElement | NotInCone:
    """Unique A with AA* = X, peeled off from the last vertex backwards."""
    tol = rtol * (1.0 + X.norm())
    out = _peel(N, np.asarray(X.diag, dtype=float),
                {e: np.asarray(v, dtype=float) for e, v in X.off.items()}, tol)
    if isinstance(out, NotInCone):
        return out
    return GroupElement(*out)


def _factor(N: QuasiNilAlgebra, X: HermElement) -> GroupElement:
    A = generalized_cholesky(N, X)
    if isinstance(A, NotInCone):
        raise NotInConeError(A.pivot, A.value)
    return A


def membership(N: QuasiNilAlgebra, X: HermElement) -> tuple[bool, GroupElement | None]:
    A = generalized_cholesky(N, X)
    if isinstance(A, NotInCone):
        return False, None
    return True, A


def determinant_function(N: QuasiNilAlgebra, X: HermElement) -> float:
    """d(AA*) = prod a_ii^2."""
    return float(np.prod(_factor(N, X).diag ** 2))


def rank3_polynomials(N: QuasiNilAlgebra, X: HermElement) -> tuple[float, float, float]:
    if N.n != 3:
        raise AlgebraError("rank-3 polynomials need a rank-3 algebra")
    a1, a2, a3 = _factor(N, X).diag
    return float(a1 ** 2 * a2 ** 2 * a3 ** 4), float((a2 * a3) ** 2), float(a3 ** 2)


def barrier(N: QuasiNilAlgebra, X: HermElement, weights: Sequence[float] | None = None) -> float:
    """-sum w_i log a_ii^2; unit weights give -log d(X)."""
    w = np.ones(N.n) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (N.n,):
        raise AlgebraError(f"need {N.n} weights")
    return float(-np.sum(w * np.log(_factor(N, X).diag ** 2))) + 0.0


def barrier_gradient_fd(N: QuasiNilAlgebra, X: HermElement, h: float = 1e-6,
                        weights: Sequence[float] | None = None) -> HermElement:
    x0 = X.to_vector()
    g = np.zeros_like(x0)
    for m in range(x0.size):
        e = np.zeros_like(x0)
        e[m] = h
        fp = barrier(N, HermElement.from_vector(N, x0 + e), weights)
        fm = barrier(N, HermElement.from_vector(N, x0 - e), weights)
        g[m] = (fp - fm) / (2 * h)
    return HermElement.from_vector(N, g)


def _barrier_complex(N: QuasiNilAlgebra, vec: np.ndarray, w: np.ndarray) -> complex:
    z = HermElement.from_vector(N, vec.real)
    diag = vec[:N.n]
    off, pos = {}, N.n
    for e in N.edges():
        off[e] = vec[pos:pos + N.dim(*e)]
        pos += N.dim(*e)
    out = _peel(N, diag, off, 1e-12 * (1.0 + z.norm()))
    if isinstance(out, NotInCone):
        raise NotInConeError(out.pivot, out.value)
    return -np.sum(w * np.log(out[0] ** 2))


def barrier_gradient_cs(N: QuasiNilAlgebra, X: HermElement,
                        weights: Sequence[float] | None = None) -> np.ndarray:
    """Complex-step gradient in Hermitian coordinates (exact to rounding)."""
    w = np.ones(N.n) if weights is None else np.asarray(weights, dtype=float)
    x0 = X.to_vector().astype(complex)
    h = 1e-30
    g = np.zeros(x0.size)
    for m in range(x0.size):
        x = x0.copy()
        x[m] += 1j * h
        g[m] = _barrier_complex(N, x, w).imag / h
    return g


def barrier_hessian_fd(N: QuasiNilAlgebra, X: HermElement, h: float | None = None,
                       weights: Sequence[float] | None = None) -> np.ndarray:
    """Hessian by central differences of the complex-step gradient.

    The default step is 1e-7 times the smallest pivot a_ii^2.
    """
    if h is None:
        h = 1e-7 * float(np.min(_factor(N, X).diag ** 2))
    x0 = X.to_vector()
    m = x0.size
    H = np.zeros((m, m))
    for a in range(m):
        e = np.zeros(m)
        e[a] = h
        gp = barrier_gradient_cs(N, HermElement.from_vector(N, x0 + e), weights)
        gm = barrier_gradient_cs(N, HermElement.from_vector(N, x0 - e), weights)
        H[:, a] = (gp - gm) / (2 * h)
    return 0.5 * (H + H.T)


# ---------------------------------------------------------------------------
# Lie algebra action


def lie_action(N: QuasiNilAlgebra, a: _Blocks, X: HermElement) -> HermElement:
    """a X + X a* in the Hermitian space."""
    n = N.n
    d = np.asarray(a.diag, dtype=float)
    diag = 2 * d * X.diag
    for (i, k), v in a.off.items():
        diag[i - 1] += 2 * float(v @ X.off[(i, k)])
    off = {}
    for i, j in N.edges():
        y = (d[i - 1] + d[j - 1]) * X.off[(i, j)] + a.off[(i, j)] * X.diag[j - 1]
        for k in range(i + 1, j):
            if N.has(i, k) and N.has(k, j):
                y = y + N.mul(i, k, j, a.off[(i, k)], X.off[(k, j)])
        for k in range(j + 1, n + 1):
            if N.has(i, k) and N.has(j, k):
                y = y + adjoint_product(N, i, j, k, a.off[(i, k)], X.off[(j, k)])
                y = y + adjoint_product(N, i, j, k, X.off[(i, k)], a.off[(j, k)])
        off[(i, j)] = y
    return HermElement(diag, off)


def group_act(N: QuasiNilAlgebra, a: _Blocks, X: HermElement, cap: float = NORM_CAP,
              tol: float = SERIES_TOL, max_terms: int = MAX_TERMS) -> HermElement:
    """exp(L_a) X by the power series, stopping once a term is below tol."""
    if a.norm() > cap:
        raise SeriesError(f"Lie element norm {a.norm():.3g} exceeds cap {cap}")
    total = X
    term = X
    scale = max(1.0, X.norm())
    for m in range(1, max_terms + 1):
        term = lie_action(N, a, term) * (1.0 / m)
        total = total + term
        if term.norm() < tol * scale:
            return total
    raise SeriesError(f"series did not converge in {max_terms} terms")


# ---------------------------------------------------------------------------
# sampling


def random_group_element(N: QuasiNilAlgebra, rng: np.random.Generator,
                         spread: float = 0.5, scale: float = 1.0) -> GroupElement:
    diag = np.exp(spread * rng.standard_normal(N.n))
    off = {e: scale * rng.standard_normal(N.dim(*e)) for e in N.edges()}
    return GroupElement(diag, off)


def random_lie_element(N: QuasiNilAlgebra, rng: np.random.Generator, scale: float = 0.3) -> LieElement:
    diag = scale * rng.standard_normal(N.n)
    off = {e: scale * rng.standard_normal(N.dim(*e)) for e in N.edges()}
    return LieElement(diag, off)


def group_error(A: _Blocks, B: _Blocks) -> float:
    """Max abs difference relative to the size of A."""
    return float(np.max(np.abs(A.to_vector() - B.to_vector())) / max(1.0, np.max(np.abs(A.to_vector()))))
