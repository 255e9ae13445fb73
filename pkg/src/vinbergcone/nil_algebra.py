"""QuasiNil-algebras: edge spaces N_ij on a Nil-graph with isometric products.

Vertices are 1-based. ``dims[(i, j)]`` is the dimension of N_ij (absent or 0
means no edge) and ``tensors[(i, j, k)]`` has shape (d_ik, d_ij, d_jk) with
x_ij * y_jk = sum T[c, a, b] x_a y_b e_c.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .clifford_core import isometry_residual
from .nil_graph import NilGraph, is_connected, max_path_length, validate_nilgraph

TOL_STRUCT = 1e-10
TOL_SAMPLE = 1e-9
DEFAULT_SAMPLES = 256


class AlgebraError(ValueError):
    """Structurally invalid algebra data."""


class IsometryError(AlgebraError):
    def __init__(self, triple: tuple[int, int, int], residual: float):
        self.triple = triple
        self.residual = residual
        super().__init__(f"tensor {_key(triple)} is not isometric (residual {residual:.3g})")


class FormatError(AlgebraError):
    """Malformed JSON input; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _key(idx) -> str:
    return "".join(str(i) for i in idx)


def _frozen(t) -> np.ndarray:
    a = np.array(t, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuasiNilAlgebra:
    n: int
    dims: Mapping[tuple[int, int], int]
    tensors: Mapping[tuple[int, int, int], np.ndarray] = field(repr=False)

    def dim(self, i: int, j: int) -> int:
        return self.dims.get((i, j), 0)

    def has(self, i: int, j: int) -> bool:
        return self.dim(i, j) > 0

    def edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, d in self.dims.items() if d > 0)

    def paths(self) -> list[tuple[int, int, int]]:
        """All 2-paths i -> j -> k."""
        return [(i, j, k) for i, j, k in itertools.combinations(range(1, self.n + 1), 3)
                if self.has(i, j) and self.has(j, k)]

    def mul(self, i: int, j: int, k: int, x, y) -> np.ndarray:
        """Product of x in N_ij and y in N_jk."""
        return np.einsum("cab,a,b->c", self.tensors[(i, j, k)], x, y)

    def left(self, i: int, j: int, k: int, x) -> np.ndarray:
        """Matrix of y -> x y, N_jk -> N_ik."""
        return np.einsum("cab,a->cb", self.tensors[(i, j, k)], x)

    def right(self, i: int, j: int, k: int, y) -> np.ndarray:
        """Matrix of x -> x y, N_ij -> N_ik."""
        return np.einsum("cab,b->ca", self.tensors[(i, j, k)], y)

    def total_dim(self) -> int:
        return self.n + sum(self.dims.values())

    def signature(self) -> tuple[int, ...]:
        return tuple(self.dim(i, j) for i, j in itertools.combinations(range(1, self.n + 1), 2))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    residual: float = 0.0
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# construction


def adjacency_graph(N: QuasiNilAlgebra) -> NilGraph:
    return NilGraph.from_edges(N.n, N.edges())


def build_from_equipment(graph: NilGraph | None, dims: Mapping, tensors: Mapping,
                         n: int | None = None, check: bool = True) -> QuasiNilAlgebra:
    """Validated algebra from edge dimensions and 2-path tensors."""
    if graph is None and n is None:
        raise AlgebraError("need a graph or a rank")
    n = graph.n if graph is not None else int(n)
    clean_dims: dict[tuple[int, int], int] = {}
    for (i, j), d in dims.items():
        i, j, d = int(i), int(j), int(d)
        if not (1 <= i < j <= n):
            raise AlgebraError(f"block {_key((i, j))} is not strictly upper triangular for n={n}")
        if d < 0:
            raise AlgebraError(f"block {_key((i, j))} has negative dimension")
        if d > 0:
            if graph is not None and not graph.has_edge(i - 1, j - 1):
                raise AlgebraError(f"block {_key((i, j))} has dimension {d} but is not an edge")
            clean_dims[(i, j)] = d
    if graph is not None:
        for i, j in graph.edges():
            if (i, j) not in clean_dims:
                raise AlgebraError(f"edge {_key((i, j))} has no positive dimension")
    problems = validate_nilgraph(NilGraph.from_edges(n, clean_dims))
    if problems:
        raise AlgebraError("adjacency graph invalid: " + "; ".join(problems))
    clean_t: dict[tuple[int, int, int], np.ndarray] = {}
    for (i, j, k), t in tensors.items():
        key = (int(i), int(j), int(k))
        if not (clean_dims.get(key[:2]) and clean_dims.get(key[1:])):
            raise AlgebraError(f"tensor {_key(key)} given for a non-path")
        clean_t[key] = _frozen(t)
    N = QuasiNilAlgebra(n, clean_dims, clean_t)
    for i, j, k in N.paths():
        if (i, j, k) not in clean_t:
            raise AlgebraError(f"missing tensor {_key((i, j, k))}")
        shape = (N.dim(i, k), N.dim(i, j), N.dim(j, k))
        if clean_t[(i, j, k)].shape != shape:
            raise AlgebraError(f"tensor {_key((i, j, k))} has shape "
                               f"{clean_t[(i, j, k)].shape}, expected {shape}")
    if check:
        res = check_isometric(N)
        if not res.ok:
            raise IsometryError(res.witness["triple"], res.residual)
    return N


# ---------------------------------------------------------------------------
# gate checks


def check_isometric(N: QuasiNilAlgebra, tol: float = TOL_STRUCT) -> CheckResult:
    worst = 0.0
    for key, t in N.tensors.items():
        r = isometry_residual(t)
        if r > tol:
            return CheckResult(False, r, {"triple": key})
        worst = max(worst, r)
    return CheckResult(True, worst)


def _assoc_defect(N: QuasiNilAlgebra, i: int, j: int, k: int, l: int) -> np.ndarray:
    """(ab)c - a(bc) as a tensor [z, a, b, c]."""
    lhs = np.einsum("zmc,mab->zabc", N.tensors[(i, k, l)], N.tensors[(i, j, k)])
    rhs = np.einsum("zam,mbc->zabc", N.tensors[(i, j, l)], N.tensors[(j, k, l)])
    return lhs - rhs


def check_associative(N: QuasiNilAlgebra, tol: float = TOL_STRUCT) -> CheckResult:
    """(x_ij y_jk) z_kl = x_ij (y_jk z_kl) on all basis triples of every 3-chain."""
    worst = 0.0
    for i, j, k, l in itertools.combinations(range(1, N.n + 1), 4):
        if not (N.has(i, j) and N.has(j, k) and N.has(k, l)):
            continue
        d = _assoc_defect(N, i, j, k, l)
        r = float(np.max(np.abs(d))) if d.size else 0.0
        if r > tol:
            z, a, b, c = np.unravel_index(int(np.argmax(np.abs(d))), d.shape)
            return CheckResult(False, r, {
                "chain": (i, j, k, l),
                "a": _basis(N.dim(i, j), a), "b": _basis(N.dim(j, k), b),
                "c": _basis(N.dim(k, l), c), "component": int(z),
            })
        worst = max(worst, r)
    return CheckResult(True, worst)


def _basis(d: int, k: int) -> list[float]:
    e = [0.0] * d
    e[k] = 1.0
    return e


def _sample_directions(d: int, samples: int, seed: int) -> list[np.ndarray]:
    eye = np.eye(d)
    out = [eye[k] for k in range(d)]
    for k, l in itertools.combinations(range(d), 2):
        out.append((eye[k] + eye[l]) / np.sqrt(2))
        out.append((eye[k] - eye[l]) / np.sqrt(2))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        v = rng.standard_normal(d)
        out.append(v / np.linalg.norm(v))
    return out


def _complement(m: np.ndarray, d: int, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (as columns) of range(m)^perp inside R^d."""
    if m.size == 0:
        return np.eye(d)
    u, s, _ = np.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > tol))
    return u[:, rank:]


def check_vinberg(N: QuasiNilAlgebra, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                  tol: float = TOL_SAMPLE) -> CheckResult:
    """Rank-4 Vinberg condition.

    For every a34: if a24 is orthogonal to N23 * a34 then N12 * a24 is
    orthogonal to N13 * a34. Checked on structured and random a34; a24 ranges
    over an orthonormal basis of the admissible subspace.
    """
    if N.n != 4:
        raise AlgebraError("the Vinberg check is implemented for rank 4 only")
    if not all(N.has(*e) for e in ((1, 2), (1, 3), (2, 4), (3, 4))):
        return CheckResult(True, witness=None)
    d23, d24 = N.dim(2, 3), N.dim(2, 4)
    if d23 and d23 == d24:
        # z -> z a34 is an isometry N23 -> N24 of equal dimensions, hence onto
        return CheckResult(True)
    worst = 0.0
    for a34 in _sample_directions(N.dim(3, 4), samples, seed):
        if d23:
            w_basis = _complement(N.right(2, 3, 4, a34), d24)
        else:
            w_basis = np.eye(d24)
        if w_basis.shape[1] == 0:
            continue
        y_map = N.right(1, 3, 4, a34)
        for col in range(w_basis.shape[1]):
            a24 = w_basis[:, col]
            x_map = N.right(1, 2, 4, a24)
            b = x_map.T @ y_map
            u, s, vt = np.linalg.svd(b)
            if s[0] > tol:
                premise = float(np.max(np.abs(N.right(2, 3, 4, a34).T @ a24))) if d23 else 0.0
                return CheckResult(False, float(s[0]), {
                    "a24": a24.tolist(), "a34": a34.tolist(),
                    "x12": u[:, 0].tolist(), "y13": vt[0].tolist(),
                    "premise_residual": premise, "conclusion": float(s[0]),
                })
            worst = max(worst, float(s[0]))
    return CheckResult(True, worst)


def nilpotency_index(N: QuasiNilAlgebra) -> int:
    return max_path_length(adjacency_graph(N))


# ---------------------------------------------------------------------------
# duality and sums


def anti_transpose(N: QuasiNilAlgebra) -> QuasiNilAlgebra:
    """N'_ij = N_{n+1-j, n+1-i} with x' y' := y x."""
    n = N.n
    r = lambda v: n + 1 - v  # noqa: E731
    dims = {(r(j), r(i)): d for (i, j), d in N.dims.items()}
    tensors = {(r(k), r(j), r(i)): _frozen(np.transpose(t, (0, 2, 1)))
               for (i, j, k), t in N.tensors.items()}
    return QuasiNilAlgebra(n, dims, tensors)


def direct_sum(A: QuasiNilAlgebra, B: QuasiNilAlgebra) -> QuasiNilAlgebra:
    s = A.n
    dims = dict(A.dims)
    dims.update({(i + s, j + s): d for (i, j), d in B.dims.items()})
    tensors = dict(A.tensors)
    tensors.update({(i + s, j + s, k + s): t for (i, j, k), t in B.tensors.items()})
    return QuasiNilAlgebra(A.n + B.n, dims, tensors)


def is_decomposable(N: QuasiNilAlgebra) -> bool:
    return not is_connected(adjacency_graph(N))


def tensors_equal(A: QuasiNilAlgebra, B: QuasiNilAlgebra, tol: float = 0.0) -> bool:
    if A.n != B.n or dict(A.dims) != dict(B.dims) or set(A.tensors) != set(B.tensors):
        return False
    return all(np.max(np.abs(A.tensors[k] - B.tensors[k]), initial=0.0) <= tol for k in A.tensors)


# ---------------------------------------------------------------------------
# JSON


def to_json(N: QuasiNilAlgebra) -> dict:
    return {
        "n": N.n,
        "dims": {_key(e): d for e, d in sorted(N.dims.items())},
        "tensors": {_key(k): N.tensors[k].tolist() for k in sorted(N.tensors)},
    }


def _parse_index(key: str, length: int, path: str) -> tuple[int, ...]:
    if len(key) != length or not key.isdigit():
        raise FormatError(path, f"expected {length} digits, got {key!r}")
    return tuple(int(c) for c in key)


def from_json(data: Any) -> QuasiNilAlgebra:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError("$", f"invalid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FormatError("$", "algebra must be a JSON object")
    if not isinstance(data.get("n"), int):
        raise FormatError("$.n", "missing or non-integer rank")
    n = data["n"]
    dims = {}
    for key, d in dict(data.get("dims", {})).items():
        path = f"$.dims.{key}"
        if not isinstance(d, int):
            raise FormatError(path, "dimension must be an integer")
        dims[_parse_index(key, 2, path)] = d
    tensors = {}
    for key, t in dict(data.get("tensors", {})).items():
        path = f"$.tensors.{key}"
        idx = _parse_index(key, 3, path)
        try:
            arr = np.array(t, dtype=float)
        except (ValueError, TypeError) as exc:
            raise FormatError(path, "ragged or non-numeric tensor") from exc
        if arr.ndim != 3:
            raise FormatError(path, f"tensor must be rank 3, got rank {arr.ndim}")
        expected = (dims.get((idx[0], idx[2]), 0), dims.get(idx[:2], 0), dims.get(idx[1:], 0))
        if arr.shape != expected:
            raise FormatError(path, f"shape {arr.shape}, expected {expected}")
        tensors[idx] = arr
    if "edges" in data:
        graph = NilGraph.from_edges(n, data["edges"])
        return build_from_equipment(graph, dims, tensors)
    return build_from_equipment(None, dims, tensors, n=n)
