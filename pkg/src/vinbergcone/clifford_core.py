"""Explicit real representations of Clifford algebras.

Convention: generators satisfy G_i G_j + G_j G_i = -2 delta_ij Id, are skew and
orthogonal, so the standard inner product is an admissible metric.

Ungraded irreducible modules of Cl_m are built from left multiplication in
C, H and the octonions for m <= 7, by one doubling step for m = 8 and by
tensoring with the 16-dimensional Cl_8 module for larger m. A graded Cl_p
module S0 + S1 is the doubling of an ungraded Cl_{p-1} module E:

    G_1 = [[0, -I], [I, 0]],   G_{i+1} = [[0, e_i], [e_i, 0]],

with block rows/columns ordered (S0, S1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .division import left_mult_matrices

MAX_GENERATORS = 16
TOL_EXACT = 1e-12

# Real dimension of an indecomposable ungraded C_p (x) C_q module, p, q = 0..7.
A_TABLE = (
    (1, 2, 4, 4, 8, 8, 8, 8),
    (2, 2, 4, 4, 8, 8, 16, 16),
    (4, 4, 4, 4, 8, 16, 32, 32),
    (4, 4, 4, 4, 8, 16, 32, 32),
    (8, 8, 8, 8, 16, 32, 64, 64),
    (8, 8, 16, 16, 32, 32, 64, 64),
    (8, 16, 32, 32, 64, 64, 64, 64),
    (8, 16, 32, 32, 64, 64, 64, 64),
)

# dim S00 of an indecomposable bigraded C_p (x) C_q module, p, q = 1..8.
B_TABLE = (
    (1, 2, 4, 4, 8, 8, 8, 8),
    (2, 2, 4, 4, 8, 8, 16, 16),
    (4, 4, 4, 4, 8, 16, 32, 32),
    (4, 4, 4, 4, 8, 16, 32, 32),
    (8, 8, 8, 8, 16, 32, 64, 64),
    (8, 8, 16, 16, 32, 32, 64, 64),
    (8, 16, 32, 32, 64, 64, 64, 64),
    (8, 16, 32, 32, 64, 64, 64, 64),
)

# C_p (x) C_q as (division algebra, matrix size, number of simple summands).
ALGEBRA_TABLE = (
    (("R", 1, 1), ("C", 1, 1), ("H", 1, 1), ("H", 1, 2), ("H", 2, 1), ("C", 4, 1), ("R", 8, 1), ("R", 8, 2)),
    (("C", 1, 1), ("C", 1, 2), ("C", 2, 1), ("C", 2, 2), ("C", 4, 1), ("C", 4, 2), ("C", 8, 1), ("C", 8, 2)),
    (("H", 1, 1), ("C", 2, 1), ("R", 4, 1), ("R", 4, 2), ("R", 8, 1), ("C", 8, 1), ("H", 8, 1), ("H", 8, 2)),
    (("H", 1, 2), ("C", 2, 2), ("R", 4, 2), ("R", 4, 4), ("R", 8, 2), ("C", 8, 2), ("H", 8, 2), ("H", 8, 4)),
    (("H", 2, 1), ("C", 4, 1), ("R", 8, 1), ("R", 8, 2), ("R", 16, 1), ("C", 16, 1), ("H", 16, 1), ("H", 16, 2)),
    (("C", 4, 1), ("C", 4, 2), ("C", 8, 1), ("C", 8, 2), ("C", 16, 1), ("C", 16, 2), ("C", 32, 1), ("C", 32, 2)),
    (("R", 8, 1), ("C", 8, 1), ("H", 8, 1), ("H", 8, 2), ("H", 16, 1), ("C", 32, 1), ("R", 64, 1), ("R", 64, 2)),
    (("R", 8, 2), ("C", 8, 2), ("H", 8, 2), ("H", 8, 4), ("H", 16, 2), ("C", 32, 2), ("R", 64, 2), ("R", 64, 4)),
)


class CliffordError(ValueError):
    pass


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=float)
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class CliffordModule:
    """Graded Cl(R^p) module S0 + S1 with odd skew-orthogonal generators."""

    p: int
    dim_s0: int
    dim_s1: int
    generators: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.dim_s0 + self.dim_s1

    def forward(self, i: int) -> np.ndarray:
        """Block S0 -> S1 of generator i (0-based)."""
        return self.generators[i][self.dim_s0:, : self.dim_s0]

    def backward(self, i: int) -> np.ndarray:
        """Block S1 -> S0 of generator i (0-based)."""
        return self.generators[i][: self.dim_s0, self.dim_s0:]

    def tensor(self) -> np.ndarray:
        """Isometric tensor of V x S0 -> S1, indexed [c][a][b]."""
        t = np.stack([self.forward(i) for i in range(self.p)], axis=1)
        return _frozen(t.reshape(self.dim_s1, self.p, self.dim_s0))


@dataclass(frozen=True)
class Violation:
    invariant: str
    residual: float
    detail: str = ""


# ---------------------------------------------------------------------------
# ungraded modules


def _volume(gens: Sequence[np.ndarray], dim: int) -> np.ndarray:
    w = np.eye(dim)
    for g in gens:
        w = w @ g
    return w


@lru_cache(maxsize=None)
def _cl8() -> tuple[np.ndarray, ...]:
    oct_left = left_mult_matrices(8)[1:]
    return tuple(_double(list(oct_left), 8))


def _double(gens: list[np.ndarray], dim: int) -> list[np.ndarray]:
    """Graded Cl_{m+1} generators on E + E from ungraded Cl_m generators on E."""
    zero = np.zeros((dim, dim))
    eye = np.eye(dim)
    out = [np.block([[zero, -eye], [eye, zero]])]
    for e in gens:
        out.append(np.block([[zero, e], [e, zero]]))
    return out


def _base_ungraded(m: int) -> tuple[list[np.ndarray], int]:
    if m == 0:
        return [], 1
    if m == 1:
        return [np.array([[0.0, -1.0], [1.0, 0.0]])], 2
    if m <= 3:
        return left_mult_matrices(4)[1: m + 1], 4
    if m <= 7:
        return left_mult_matrices(8)[1: m + 1], 8
    return list(_cl8()), 16


@lru_cache(maxsize=None)
def ungraded_generators(m: int, variant: int = 0) -> tuple[np.ndarray, ...]:
    """Generators of an irreducible ungraded Cl_m module of minimal dimension.

    For m = 3 mod 4 there are two irreducibles; the volume element acts as
    +Id for variant 0 and -Id for variant 1.
    """
    if m < 0 or m > MAX_GENERATORS:
        raise CliffordError(f"generator count {m} outside 0..{MAX_GENERATORS}")
    if variant not in range(ungraded_variant_count(m)):
        raise CliffordError(f"invalid variant {variant} for Cl_{m}")
    if m <= 8:
        gens, dim = _base_ungraded(m)
    else:
        inner = list(ungraded_generators(m - 8, 0))
        d = inner[0].shape[0] if inner else 1
        c8 = _cl8()
        w8 = _volume(c8, 16)
        gens = [np.kron(e, w8) for e in inner] + [np.kron(np.eye(d), f) for f in c8]
        dim = d * 16
    gens = [np.array(g, dtype=float) for g in gens]
    if m % 4 == 3:
        want = 1.0 if variant == 0 else -1.0
        w = _volume(gens, dim)
        if np.allclose(w, -want * np.eye(dim)):
            gens[0] = -gens[0]
    return tuple(_frozen(g) for g in gens)


def ungraded_variant_count(m: int) -> int:
    return 2 if m % 4 == 3 else 1


def ungraded_dim(m: int) -> int:
    gens = ungraded_generators(m)
    return gens[0].shape[0] if gens else 1


# ---------------------------------------------------------------------------
# graded modules


def graded_variant_count(p: int) -> int:
    return ungraded_variant_count(p - 1) if p >= 1 else 1


def graded_module(p: int, copies: int = 1, variant: int = 0) -> CliffordModule:
    """Direct sum of `copies` irreducible graded Cl_p modules."""
    if p < 0 or p > MAX_GENERATORS:
        raise CliffordError(f"generator count {p} outside 0..{MAX_GENERATORS}")
    if copies < 1:
        raise CliffordError("copies must be positive")
    if variant not in range(graded_variant_count(p)):
        raise CliffordError(f"invalid variant {variant} for graded Cl_{p}")
    if p == 0:
        return CliffordModule(0, copies, 0, ())
    return _graded_module(p, copies, variant)


@lru_cache(maxsize=None)
def _graded_module(p: int, copies: int, variant: int) -> CliffordModule:
    inner = ungraded_generators(p - 1, variant)
    d = inner[0].shape[0] if inner else 1
    eye_c = np.eye(copies)
    blocks = [np.eye(d)] + list(inner)
    n0 = d * copies
    gens = []
    for k, e in enumerate(blocks):
        big = np.kron(eye_c, e)
        g = np.zeros((2 * n0, 2 * n0))
        g[n0:, :n0] = big
        g[:n0, n0:] = -big if k == 0 else big
        gens.append(_frozen(g))
    return CliffordModule(p, n0, n0, tuple(gens))


def clifford_generators(p: int) -> list[np.ndarray]:
    """Generators of the minimal graded Cl_p module (variant 0)."""
    return list(graded_module(p).generators)


def clifford_mult(module: CliffordModule, v: Sequence[float], s: Sequence[float]) -> np.ndarray:
    """(sum_i v_i G_i) s."""
    v = np.asarray(v, dtype=float)
    s = np.asarray(s, dtype=float)
    if v.shape != (module.p,):
        raise CliffordError(f"vector has shape {v.shape}, expected ({module.p},)")
    if s.shape != (module.dim,):
        raise CliffordError(f"spinor has shape {s.shape}, expected ({module.dim},)")
    out = np.zeros(module.dim)
    for vi, g in zip(v, module.generators):
        out += vi * (g @ s)
    return out


def verify_module(module: CliffordModule, tol: float = TOL_EXACT) -> list[Violation]:
    """Every violated module invariant with its max residual; empty iff valid."""
    out: list[Violation] = []
    n = module.dim
    gens = module.generators
    bad_shape = [i for i, g in enumerate(gens) if g.shape != (n, n)]
    if len(gens) != module.p or bad_shape:
        out.append(Violation("shape", float("inf"), f"generators {bad_shape} not {n}x{n}"))
        return out
    eye = np.eye(n)
    worst = (0.0, "")
    for i, j in itertools.combinations_with_replacement(range(module.p), 2):
        r = gens[i] @ gens[j] + gens[j] @ gens[i]
        if i == j:
            r = r + 2 * eye
        res = float(np.max(np.abs(r)))
        if res > worst[0]:
            worst = (res, f"pair ({i + 1}, {j + 1})")
    if worst[0] > tol:
        out.append(Violation("anticommutation", *worst))
    checks = {
        "skew": lambda g: g + g.T,
        "orthogonal": lambda g: g.T @ g - eye,
        "odd": lambda g: np.concatenate([
            g[: module.dim_s0, : module.dim_s0].ravel(),
            g[module.dim_s0:, module.dim_s0:].ravel(),
        ]),
    }
    for name, f in checks.items():
        res, idx = 0.0, -1
        for i, g in enumerate(gens):
            r = f(g)
            val = float(np.max(np.abs(r))) if r.size else 0.0
            if val > res:
                res, idx = val, i
        if res > tol:
            out.append(Violation(name, res, f"generator {idx + 1}"))
    if module.p > 0 and module.dim_s0 != module.dim_s1:
        out.append(Violation("balanced", float(abs(module.dim_s0 - module.dim_s1)),
                             f"dim S0 = {module.dim_s0}, dim S1 = {module.dim_s1}"))
    return out


# ---------------------------------------------------------------------------
# isometric tensors


def isometry_residual(t: np.ndarray) -> float:
    """max |(L_a^T L_b + L_b^T L_a)/2 - delta_ab Id| for T[c][a][b]."""
    t = np.asarray(t, dtype=float)
    if t.ndim != 3:
        raise ValueError("structure tensor must be rank 3")
    _, dx, dy = t.shape
    if dx == 0 or dy == 0:
        return 0.0
    g = np.einsum("cay,cbz->abyz", t, t)
    sym = 0.5 * (g + g.transpose(1, 0, 2, 3))
    target = np.einsum("ab,yz->abyz", np.eye(dx), np.eye(dy))
    return float(np.max(np.abs(sym - target)))


def swap_arguments(t: np.ndarray) -> np.ndarray:
    """Tensor of (y, x) -> mu(x, y)."""
    return _frozen(np.transpose(t, (0, 2, 1)))


def transpose_action(t: np.ndarray) -> np.ndarray:
    """For square T: X x Z -> Y, the map (x, z) -> L_x^T z."""
    return _frozen(np.transpose(t, (2, 1, 0)))


# ---------------------------------------------------------------------------
# tables


def indecomposable_dims(p: int, q: int) -> tuple[int, int | None]:
    """(a_pq, b_pq) with mod-8 periodicity; b is None unless p, q >= 1."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    a = 16 ** (p // 8 + q // 8) * A_TABLE[p % 8][q % 8]
    b = None
    if p >= 1 and q >= 1:
        b = 16 ** ((p - 1) // 8 + (q - 1) // 8) * B_TABLE[(p - 1) % 8][(q - 1) % 8]
    return a, b


def _centre_kind(m: int) -> str:
    if m % 2 == 0:
        return "R"
    return "C" if m % 4 == 1 else "RR"


def module_count(p: int, q: int, graded: bool = False) -> int:
    """Number of non-isomorphic indecomposable (bi)graded C_p (x) C_q modules.

    Ungraded modules are counted by the simple summands of C_p (x) C_q, i.e.
    by the centre Z(C_p) (x) Z(C_q). Bigraded modules correspond to ungraded
    C_{p-1} (x) C_{q-1} modules.
    """
    if graded:
        if p < 1 or q < 1:
            raise ValueError("graded counts need p, q >= 1")
        return module_count(p - 1, q - 1, graded=False)
    kinds = sorted((_centre_kind(p), _centre_kind(q)))
    if kinds == ["RR", "RR"]:
        return 4
    if "RR" in kinds or kinds == ["C", "C"]:
        return 2
    return 1


# ---------------------------------------------------------------------------
# modules over C_m1 (x) C_m2 and bigraded modules


def _all_variants(m: int) -> tuple[list[np.ndarray], int]:
    """Faithful Cl_m module: sum of all irreducible variants."""
    parts = [ungraded_generators(m, v) for v in range(ungraded_variant_count(m))]
    dims = [g[0].shape[0] if g else 1 for g in parts]
    total = sum(dims)
    gens = []
    for i in range(m):
        g = np.zeros((total, total))
        off = 0
        for part, d in zip(parts, dims):
            g[off:off + d, off:off + d] = part[i]
            off += d
        gens.append(g)
    return gens, total


def _central_involutions(m1: int, m2: int, xs, ys, dim) -> list[np.ndarray]:
    w1 = _volume(xs, dim) if m1 % 2 else None
    w2 = _volume(ys, dim) if m2 % 2 else None
    out = []
    if m1 % 4 == 3:
        out.append(w1)
    if m2 % 4 == 3:
        out.append(w2)
    if m1 % 4 == 1 and m2 % 4 == 1:
        out.append(w1 @ w2)
    return out


def _restrict(gens: Sequence[np.ndarray], basis: np.ndarray) -> list[np.ndarray]:
    return [basis.T @ g @ basis for g in gens]


@lru_cache(maxsize=None)
def tensor_irreducible(m1: int, m2: int, variant: int = 0) -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...]]:
    """Irreducible ungraded C_m1 (x) C_m2 module as two commuting generator sets.

    Built inside the faithful module E (x) F: project onto one joint
    eigenspace of the central involutions (the variant), then split off an
    irreducible summand using a generic symmetric element of the commutant.
    """
    if variant not in range(module_count(m1, m2)):
        raise CliffordError(f"invalid variant {variant} for C_{m1} (x) C_{m2}")
    e_gens, de = _all_variants(m1)
    f_gens, df = _all_variants(m2)
    dim = de * df
    xs = [np.kron(e, np.eye(df)) for e in e_gens]
    ys = [np.kron(np.eye(de), f) for f in f_gens]
    invols = _central_involutions(m1, m2, xs, ys, dim)
    signs = list(itertools.product((1.0, -1.0), repeat=len(invols)))[variant]
    proj = np.eye(dim)
    for s, w in zip(signs, invols):
        proj = proj @ (np.eye(dim) + s * w) / 2
    vals, vecs = np.linalg.eigh(0.5 * (proj + proj.T))
    basis = vecs[:, vals > 0.5]
    xs = _restrict(xs, basis)
    ys = _restrict(ys, basis)
    n = basis.shape[1]
    rng = np.random.default_rng(20240611 + 97 * m1 + m2)
    r = rng.standard_normal((n, n))
    r = r + r.T
    for g in xs + ys:
        r = 0.5 * (r + g @ r @ g.T)
    vals, vecs = np.linalg.eigh(r)
    cluster = np.abs(vals - vals[0]) < 1e-8 * max(1.0, float(np.max(np.abs(vals))))
    q = vecs[:, cluster]
    xs = tuple(_frozen(g) for g in _restrict(xs, q))
    ys = tuple(_frozen(g) for g in _restrict(ys, q))
    return xs, ys


@dataclass(frozen=True)
class BigradedModule:
    """Bigraded C_p (x) C_q module on S00 + S10 + S01 + S11 (in this order)."""

    p: int
    q: int
    d00: int
    d10: int
    d01: int
    d11: int
    u: tuple[np.ndarray, ...] = field(repr=False)
    w: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.d00 + self.d10 + self.d01 + self.d11

    def block(self, name: str) -> slice:
        order = ["00", "10", "01", "11"]
        sizes = [self.d00, self.d10, self.d01, self.d11]
        k = order.index(name)
        start = sum(sizes[:k])
        return slice(start, start + sizes[k])

    def action(self, gens: str, src: str, dst: str) -> np.ndarray:
        """Tensor of the action gens x S^src -> S^dst, indexed [c][a][b]."""
        mats = self.u if gens == "u" else self.w
        rows, cols = self.block(dst), self.block(src)
        t = np.stack([m[rows, cols] for m in mats], axis=1)
        return _frozen(t)


def bigraded_module(p: int, q: int, variant: int = 0, copies: int = 1) -> BigradedModule:
    if p < 1 or q < 1:
        raise CliffordError("bigraded modules need p, q >= 1")
    if p > MAX_GENERATORS or q > MAX_GENERATORS:
        raise CliffordError("generator count too large")
    if copies < 1:
        raise CliffordError("copies must be positive")
    return _bigraded_module(p, q, variant, copies)


@lru_cache(maxsize=None)
def _bigraded_module(p: int, q: int, variant: int, copies: int) -> BigradedModule:
    xs, ys = tensor_irreducible(p - 1, q - 1, variant)
    d = xs[0].shape[0] if xs else (ys[0].shape[0] if ys else 1)
    if copies > 1:
        xs = tuple(np.kron(np.eye(copies), x) for x in xs)
        ys = tuple(np.kron(np.eye(copies), y) for y in ys)
        d *= copies
    eye_d = np.eye(d)
    i2 = np.eye(2)
    j2 = np.array([[0.0, -1.0], [1.0, 0.0]])
    k2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    # grading index k = alpha + 2 beta; kron(beta part, alpha part, S00 part)
    u = [np.kron(np.kron(i2, j2), eye_d)] + [np.kron(np.kron(i2, k2), x) for x in xs]
    w = [np.kron(np.kron(j2, i2), eye_d)] + [np.kron(np.kron(k2, i2), y) for y in ys]
    return BigradedModule(p, q, d, d, d, d,
                          tuple(_frozen(m) for m in u), tuple(_frozen(m) for m in w))


def verify_bigraded(module: BigradedModule, tol: float = 1e-10) -> list[Violation]:
    out: list[Violation] = []
    n = module.dim
    eye = np.eye(n)

    def worst(pairs):
        return max((float(np.max(np.abs(r))) for r in pairs), default=0.0)

    for name, gens in (("u", module.u), ("w", module.w)):
        res = worst(
            a @ b + b @ a + (2 * eye if i == j else 0)
            for (i, a), (j, b) in itertools.combinations_with_replacement(enumerate(gens), 2)
        )
        if res > tol:
            out.append(Violation(f"{name}-anticommutation", res))
    res = worst(a @ b - b @ a for a in module.u for b in module.w)
    if res > tol:
        out.append(Violation("u-w commutation", res))
    res = worst([g + g.T for g in module.u + module.w] + [g.T @ g - eye for g in module.u + module.w])
    if res > tol:
        out.append(Violation("skew-orthogonal", res))
    blocks = {k: module.block(k) for k in ("00", "10", "01", "11")}
    flip_u = {"00": "10", "10": "00", "01": "11", "11": "01"}
    flip_w = {"00": "01", "01": "00", "10": "11", "11": "10"}
    for name, gens, flip in (("u", module.u, flip_u), ("w", module.w, flip_w)):
        res = 0.0
        for g in gens:
            for src, s in blocks.items():
                for dst, t in blocks.items():
                    if dst != flip[src]:
                        blk = g[t, s]
                        if blk.size:
                            res = max(res, float(np.max(np.abs(blk))))
        if res > tol:
            out.append(Violation(f"{name}-grading", res))
    return out
