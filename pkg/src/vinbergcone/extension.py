"""Clifford extensions (T1, T2, T3) over a Clifford triple (V, S0, S1).

An extension carries four isometric tensors, all indexed [c][a][b]:

    vs   : V  x S0 -> S1
    vt   : V  x T2 -> T3
    s0t  : S0 x T1 -> T2
    s1t  : S1 x T1 -> T3

The reverse actions (S1 -> S0, T3 -> T2, T2 -> T1, T3 -> T1) are the
negative transposes, which is what makes each pair a graded Clifford module
with skew generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .clifford_core import graded_module, graded_variant_count, isometry_residual
from .division import division_tensor
from .nil_algebra import AlgebraError, CheckResult, QuasiNilAlgebra, build_from_equipment

TOL = 1e-10
CONDITIONS = ("i", "ii", "iii", "iv")


def _frozen(t) -> np.ndarray:
    a = np.array(t, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CliffordExtension:
    vs: np.ndarray = field(repr=False)
    vt: np.ndarray = field(repr=False)
    s0t: np.ndarray = field(repr=False)
    s1t: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        for name in ("vs", "vt", "s0t", "s1t"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        dS1, dV, dS0 = self.vs.shape
        if dS1 != dS0:
            raise AlgebraError("S0 and S1 must have equal dimension")
        shapes = {
            "vt": (self.dim_t, dV, self.dim_t),
            "s0t": (self.dim_t, dS0, self.dim_t),
            "s1t": (self.dim_t, dS1, self.dim_t),
        }
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise AlgebraError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def dim_v(self) -> int:
        return self.vs.shape[1]

    @property
    def dim_s(self) -> int:
        return self.vs.shape[2]

    @property
    def dim_t(self) -> int:
        return self.vt.shape[0]

    def module_residuals(self) -> dict[str, float]:
        return {name: isometry_residual(getattr(self, name)) for name in ("vs", "vt", "s0t", "s1t")}

    def is_valid(self, tol: float = TOL) -> bool:
        return max(self.module_residuals().values()) <= tol


def _fwd(t: np.ndarray, x) -> np.ndarray:
    """Matrix of the forward action of x."""
    return np.einsum("cab,a->cb", t, x)


def _back(t: np.ndarray, x) -> np.ndarray:
    """Matrix of the reverse action of x (negative transpose)."""
    return -_fwd(t, x).T


# ---------------------------------------------------------------------------
# compatibility conditions


def condition_defects(ext: CliffordExtension) -> dict[str, float]:
    """Max residual of each of the four equivalent compatibility conditions.

    i)   (v s0) t1 = v (s0 t1)         in T3
    ii)  (v s1) t1 = v (s1 t1)         in T2
    iii) (v s1) t2 = -s1 (v t2)        in T1

    Signs follow the v^2 = -|v|^2 convention, so the inverse of s0 -> v s0
    for unit v is s1 -> -(v s1).
    iv)  (v s)(s' t2) + (v s')(s t2) = -2 <s, s'> v t2   in T3
    """
    dV, dS = ext.dim_v, ext.dim_s
    vs, vt, s0t, s1t = ext.vs, ext.vt, ext.s0t, ext.s1t
    # the composed operators as tensors over the basis of V and S
    eye_v, eye_s = np.eye(dV), np.eye(dS)
    res = dict.fromkeys(CONDITIONS, 0.0)
    for a in range(dV):
        v = eye_v[a]
        Lv = _fwd(vs, v)
        for b in range(dS):
            s = eye_s[b]
            d1 = _fwd(s1t, Lv @ s) - _fwd(vt, v) @ _fwd(s0t, s)
            d2 = _fwd(s0t, -Lv.T @ s) - _back(vt, v) @ _fwd(s1t, s)
            d3 = _back(s0t, -Lv.T @ s) + _back(s1t, s) @ _fwd(vt, v)
            res["i"] = max(res["i"], float(np.max(np.abs(d1))))
            res["ii"] = max(res["ii"], float(np.max(np.abs(d2))))
            res["iii"] = max(res["iii"], float(np.max(np.abs(d3))))
        for b, c in itertools.combinations_with_replacement(range(dS), 2):
            s, s2 = eye_s[b], eye_s[c]
            d4 = (_fwd(s1t, Lv @ s) @ _back(s0t, s2) + _fwd(s1t, Lv @ s2) @ _back(s0t, s)
                  + 2 * float(s @ s2) * _fwd(vt, v))
            res["iv"] = max(res["iv"], float(np.max(np.abs(d4))))
    return res


@dataclass(frozen=True)
class ExtensionVerdict:
    associative: bool
    conditions: dict[str, bool]
    residuals: dict[str, float]

    @property
    def consistent(self) -> bool:
        return len(set(self.conditions.values())) == 1


def check_extension_associative(ext: CliffordExtension, tol: float = TOL) -> ExtensionVerdict:
    """Evaluate the four conditions; the verdict is their common value.

    If they disagree (which a valid extension never does) ``consistent`` is
    False and the verdict is the conjunction.
    """
    res = condition_defects(ext)
    flags = {k: v <= tol for k, v in res.items()}
    return ExtensionVerdict(all(flags.values()), flags, res)


def check_dce_identity(ext: CliffordExtension, trials: int = 20, seed: int = 0,
                       tol: float = 1e-9) -> CheckResult:
    """(v1 v2 s0) s0 acting on T2 is independent of unit s0 and equals -v1 v2."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        v1, v2 = rng.standard_normal(ext.dim_v), rng.standard_normal(ext.dim_v)
        target = -_back(ext.vt, v1) @ _fwd(ext.vt, v2)
        ops = []
        for _ in range(2):
            s = rng.standard_normal(ext.dim_s)
            s /= np.linalg.norm(s)
            s_img = -_fwd(ext.vs, v1).T @ (_fwd(ext.vs, v2) @ s)
            ops.append(_fwd(ext.s0t, s_img) @ _back(ext.s0t, s))
        r = max(float(np.max(np.abs(ops[0] - ops[1]))), float(np.max(np.abs(ops[0] - target))))
        if r > tol:
            return CheckResult(False, r, {"v1": v1.tolist(), "v2": v2.tolist()})
        worst = max(worst, r)
    return CheckResult(True, worst)


def satisfies_dim_bound(ext: CliffordExtension) -> bool:
    """dim V = 1 or dim V <= dim S0 <= 4."""
    return ext.dim_v == 1 or ext.dim_v <= ext.dim_s <= 4


# ---------------------------------------------------------------------------
# constructors


def _prefix_tensor(t: np.ndarray, k: int, axis: int) -> np.ndarray:
    idx = [slice(None)] * 3
    idx[axis] = slice(0, k)
    return t[tuple(idx)]


def _block_diag_tensor(t: np.ndarray, copies: int) -> np.ndarray:
    """Apply the same action to each of `copies` stacked copies of the second factor."""
    dz, dx, dy = t.shape
    out = np.zeros((dz * copies, dx, dy * copies))
    for c in range(copies):
        out[c * dz:(c + 1) * dz, :, c * dy:(c + 1) * dy] = t
    return out


def division_extension(dim: int, dim_w: int, n: int = 1) -> CliffordExtension:
    """(W, A, A, A^n, A^n, A^n) with A of real dimension `dim` and W a prefix of A."""
    if not 1 <= dim_w <= dim:
        raise AlgebraError(f"dim W must be in 1..{dim}")
    if n < 1:
        raise AlgebraError("n must be positive")
    if dim == 8:
        raise AlgebraError("octonionic extensions are not associative")
    m = np.array(division_tensor(dim))
    w_mul = _prefix_tensor(m, dim_w, 1)
    return CliffordExtension(
        vs=w_mul,
        vt=_block_diag_tensor(w_mul, n),
        s0t=_block_diag_tensor(m, n),
        s1t=_block_diag_tensor(m, n),
        label=f"division(dim={dim}, W={dim_w}, n={n})",
    )


def scalar_extension(p: int, copies: int = 1, variant: int = 0) -> CliffordExtension:
    """(R, V~, V~, S~0, S~1, S~1) from a graded Cl(V~) module, dim V~ = p."""
    mod = graded_module(p, copies, variant)
    t = mod.tensor()
    ident = lambda d: np.eye(d).reshape(d, 1, d)  # noqa: E731
    return CliffordExtension(
        vs=ident(p), vt=ident(mod.dim_s0), s0t=t, s1t=t,
        label=f"scalar(p={p}, copies={copies}, variant={variant})",
    )


def _random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def twisted(ext: CliffordExtension, seed: int, which: str = "T3") -> CliffordExtension:
    """Re-identify one T-space in one structure by a random orthogonal map.

    Each individual module stays valid; compatibility generally breaks.
    """
    rng = np.random.default_rng(seed)
    q = _random_orthogonal(ext.dim_t, rng)
    if which == "T3":
        return replace(ext, s1t=np.einsum("zc,cab->zab", q, ext.s1t), label=ext.label + f"+twist(T3,{seed})")
    if which == "T2":
        return replace(ext, s0t=np.einsum("zc,cab->zab", q, ext.s0t), label=ext.label + f"+twist(T2,{seed})")
    if which == "T1":
        return replace(ext, s1t=np.einsum("cab,bz->caz", ext.s1t, q), label=ext.label + f"+twist(T1,{seed})")
    raise ValueError(f"unknown space {which!r}")


def module_extension(dim_v: int, dim_s: int, dim_t: int, variants=(0, 0, 0, 0),
                     twist_seed: int | None = None) -> CliffordExtension:
    """Extension assembled from independently chosen graded Clifford modules.

    Each of the four structures is the direct sum of irreducible modules of
    the given variant; raises if the dimensions are not realizable.
    """
    tensors = []
    for p, d_src, var in ((dim_v, dim_s, variants[0]), (dim_v, dim_t, variants[1]),
                          (dim_s, dim_t, variants[2]), (dim_s, dim_t, variants[3])):
        base = graded_module(p, 1, var).dim_s0
        if d_src % base:
            raise AlgebraError(f"no graded Cl_{p} module with dim S0 = {d_src}")
        tensors.append(graded_module(p, d_src // base, var).tensor())
    ext = CliffordExtension(*tensors, label=f"modules(V={dim_v}, S={dim_s}, T={dim_t}, var={tuple(variants)})")
    if twist_seed is not None:
        ext = twisted(ext, twist_seed, ("T1", "T2", "T3")[twist_seed % 3])
    return ext


# ---------------------------------------------------------------------------
# extension <-> rank-4 algebra


def algebra_from_extension(ext: CliffordExtension, which: str) -> QuasiNilAlgebra:
    """Rank-4 algebra of the two extension-shaped families.

    N4_1: 12=V, 13=S1, 14=T3, 23=S0, 24=T2, 34=T1.
    N4_2: 12=S1, 13=S0, 14=T1, 23=V, 24=T3, 34=T2.

    In N4_2 the products S1 x V -> S0 and S1 x T3 -> T1, S0 x T2 -> T1 are
    transposes of the extension tensors; the first carries no sign so that
    associativity of the algebra is exactly condition iii.
    """
    dV, dS, dT = ext.dim_v, ext.dim_s, ext.dim_t
    if which == "N4_1":
        dims = {(1, 2): dV, (1, 3): dS, (1, 4): dT, (2, 3): dS, (2, 4): dT, (3, 4): dT}
        tensors = {(1, 2, 3): ext.vs, (1, 2, 4): ext.vt, (1, 3, 4): ext.s1t, (2, 3, 4): ext.s0t}
    elif which == "N4_2":
        dims = {(1, 2): dS, (1, 3): dS, (1, 4): dT, (2, 3): dV, (2, 4): dT, (3, 4): dT}
        tensors = {
            (1, 2, 3): np.transpose(ext.vs, (2, 0, 1)),
            (1, 2, 4): -np.transpose(ext.s1t, (2, 1, 0)),
            (1, 3, 4): -np.transpose(ext.s0t, (2, 1, 0)),
            (2, 3, 4): ext.vt,
        }
    else:
        raise AlgebraError(f"unknown extension shape {which!r}")
    return build_from_equipment(None, dims, tensors, n=4)


def extension_from_algebra(N: QuasiNilAlgebra, which: str) -> CliffordExtension:
    if N.n != 4 or len(N.edges()) != 6:
        raise AlgebraError("extension shapes need the complete rank-4 graph")
    t = N.tensors
    if which == "N4_1":
        if not (N.dim(1, 3) == N.dim(2, 3) and N.dim(1, 4) == N.dim(2, 4) == N.dim(3, 4)):
            raise AlgebraError("algebra does not have the N4_1 shape")
        return CliffordExtension(t[(1, 2, 3)], t[(1, 2, 4)], t[(2, 3, 4)], t[(1, 3, 4)])
    if which == "N4_2":
        if not (N.dim(1, 2) == N.dim(1, 3) and N.dim(1, 4) == N.dim(2, 4) == N.dim(3, 4)):
            raise AlgebraError("algebra does not have the N4_2 shape")
        return CliffordExtension(
            vs=np.transpose(t[(1, 2, 3)], (1, 2, 0)),
            vt=t[(2, 3, 4)],
            s0t=-np.transpose(t[(1, 3, 4)], (2, 1, 0)),
            s1t=-np.transpose(t[(1, 2, 4)], (2, 1, 0)),
        )
    raise AlgebraError(f"unknown extension shape {which!r}")
