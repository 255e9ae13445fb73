"""Nil-graphs: transitively closed directed acyclic graphs.

Graphs are stored as row bitmasks (bit j of rows[i] is the edge i -> j) with
0-based vertices internally; printed edge lists are 1-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Sequence

import numpy as np

MAX_VERTICES = 7
MAX_LABELED = 6

Quotient = Literal["labeled", "iso", "dual"]


@dataclass(frozen=True)
class NilGraph:
    n: int
    rows: tuple[int, ...]

    @classmethod
    def from_adjacency(cls, adj) -> "NilGraph":
        a = np.asarray(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        n = a.shape[0]
        return cls(n, tuple(sum(1 << j for j in range(n) if a[i, j]) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "NilGraph":
        """Edges as 1-based (i, j) pairs."""
        rows = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    @property
    def adj(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                a[i, j] = bool(r >> j & 1)
        return a

    def has_edge(self, i: int, j: int) -> bool:
        """0-based edge test."""
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        """1-based edge list in row-major order."""
        return [(i + 1, j + 1) for i in range(self.n) for j in range(self.n) if self.has_edge(i, j)]

    def code(self) -> int:
        """Row-major bit string of the adjacency matrix read as an integer."""
        c = 0
        for i in range(self.n):
            for j in range(self.n):
                c = (c << 1) | (self.rows[i] >> j & 1)
        return c

    def relabel(self, perm: Sequence[int]) -> "NilGraph":
        """Vertex v becomes perm[v] (0-based)."""
        rows = [0] * self.n
        for i in range(self.n):
            r = self.rows[i]
            for j in range(self.n):
                if r >> j & 1:
                    rows[perm[i]] |= 1 << perm[j]
        return NilGraph(self.n, tuple(rows))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{i}->{j}" for i, j in self.edges()) + "}"


# ---------------------------------------------------------------------------
# validation and invariants


def _find_cycle(g: NilGraph) -> list[int] | None:
    color = [0] * g.n
    stack: list[int] = []

    def visit(v: int) -> list[int] | None:
        color[v] = 1
        stack.append(v)
        for w in range(g.n):
            if g.has_edge(v, w):
                if color[w] == 1:
                    return stack[stack.index(w):] + [w]
                if color[w] == 0:
                    found = visit(w)
                    if found:
                        return found
        stack.pop()
        color[v] = 2
        return None

    for v in range(g.n):
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return None


def validate_nilgraph(adj) -> list[str]:
    """Violations (cycles, missing transitive edges); empty iff a valid Nil-graph."""
    g = adj if isinstance(adj, NilGraph) else NilGraph.from_adjacency(adj)
    out = []
    cycle = _find_cycle(g)
    if cycle:
        out.append("cycle " + " -> ".join(str(v + 1) for v in cycle))
    for i, j, k in itertools.product(range(g.n), repeat=3):
        if len({i, j, k}) == 3 and g.has_edge(i, j) and g.has_edge(j, k) and not g.has_edge(i, k):
            out.append(f"missing edge ({i + 1},{k + 1})")
    return out


def _depths(g: NilGraph) -> tuple[list[int], list[int]]:
    """Longest path ending at / starting from each vertex (edge counts)."""
    order = topological_order(g)
    down = [0] * g.n
    for v in order:
        for w in range(g.n):
            if g.has_edge(v, w):
                down[w] = max(down[w], down[v] + 1)
    up = [0] * g.n
    for v in reversed(order):
        for w in range(g.n):
            if g.has_edge(v, w):
                up[v] = max(up[v], up[w] + 1)
    return down, up


def topological_order(g: NilGraph) -> list[int]:
    indeg = [sum(g.has_edge(i, j) for i in range(g.n)) for j in range(g.n)]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in range(g.n):
            if g.has_edge(v, w):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    if len(order) != g.n:
        raise ValueError("graph has a cycle")
    return order


def max_path_length(g: NilGraph) -> int:
    if g.n == 0:
        return 0
    down, _ = _depths(g)
    return max(down)


def dual(g: NilGraph) -> NilGraph:
    """Reverse all arrows and relabel v -> n+1-v (anti-transposition)."""
    rows = [0] * g.n
    for i in range(g.n):
        for j in range(g.n):
            if g.has_edge(i, j):
                rows[g.n - 1 - j] |= 1 << (g.n - 1 - i)
    return NilGraph(g.n, tuple(rows))


def is_connected(g: NilGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in range(g.n):
            if w not in seen and (g.has_edge(v, w) or g.has_edge(w, v)):
                seen.add(w)
                frontier.append(w)
    return len(seen) == g.n


# ---------------------------------------------------------------------------
# canonical forms


def _vertex_keys(g: NilGraph) -> list[tuple]:
    down, up = _depths(g)
    indeg = [sum(g.has_edge(i, j) for i in range(g.n)) for j in range(g.n)]
    outdeg = [bin(r).count("1") for r in g.rows]
    return [(down[v], -up[v], indeg[v], outdeg[v]) for v in range(g.n)]


def _candidate_orders(g: NilGraph) -> Iterable[tuple[int, ...]]:
    """Vertex orders sorted by an isomorphism-invariant key (ties permuted)."""
    keys = _vertex_keys(g)
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(keys[v], []).append(v)
    blocks = [groups[k] for k in sorted(groups)]
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        yield tuple(v for part in parts for v in part)


def canonical_permutations(g: NilGraph) -> tuple[NilGraph, list[tuple[int, ...]]]:
    """Canonical representative and every relabeling perm (old -> new) reaching it.

    The representative is the lexicographically minimal adjacency matrix over
    the vertex orders compatible with the invariant key; the key sorts by
    depth first, so the representative is upper triangular.
    """
    best = None
    perms: list[tuple[int, ...]] = []
    for order in _candidate_orders(g):
        perm = [0] * g.n
        for new, old in enumerate(order):
            perm[old] = new
        h = g.relabel(perm)
        c = h.code()
        if best is None or c < best[0]:
            best = (c, h)
            perms = [tuple(perm)]
        elif c == best[0]:
            perms.append(tuple(perm))
    if best is None:
        return g, [()]
    return best[1], perms


def canonical_form(g: NilGraph) -> NilGraph:
    return canonical_permutations(g)[0]


def dual_canonical_form(g: NilGraph) -> NilGraph:
    a = canonical_form(g)
    b = canonical_form(dual(g))
    return a if a.code() <= b.code() else b


def is_isomorphic(g: NilGraph, h: NilGraph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _iso_classes(n: int) -> tuple[NilGraph, ...]:
    """All Nil-graphs on n vertices up to isomorphism, via adding a sink vertex."""
    if n == 0:
        return (NilGraph(0, ()),)
    seen: dict[int, NilGraph] = {}
    for g in _iso_classes(n - 1):
        for ideal in _down_sets(g):
            rows = list(g.rows) + [0]
            for v in ideal:
                rows[v] |= 1 << (n - 1)
            c = canonical_form(NilGraph(n, tuple(rows)))
            seen.setdefault(c.code(), c)
    return tuple(seen[k] for k in sorted(seen))


def _down_sets(g: NilGraph) -> list[tuple[int, ...]]:
    """Subsets closed under taking predecessors."""
    pred = [sum(1 << i for i in range(g.n) if g.has_edge(i, v)) for v in range(g.n)]
    out = []
    for mask in range(1 << g.n):
        if all(not (mask >> v & 1) or (pred[v] & ~mask) == 0 for v in range(g.n)):
            out.append(tuple(v for v in range(g.n) if mask >> v & 1))
    return out


def _automorphism_count(g: NilGraph) -> int:
    return len(canonical_permutations(g)[1])


def enumerate_nilgraphs(n: int, connected_only: bool = False,
                        up_to: Quotient = "iso") -> list[NilGraph]:
    """Exhaustive, duplicate-free list of Nil-graphs under the chosen quotient."""
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"n must be in 1..{MAX_VERTICES}")
    classes = [g for g in _iso_classes(n) if not connected_only or is_connected(g)]
    if up_to == "iso":
        return list(classes)
    if up_to == "dual":
        seen: dict[int, NilGraph] = {}
        for g in classes:
            c = dual_canonical_form(g)
            seen.setdefault(c.code(), c)
        return [seen[k] for k in sorted(seen)]
    if up_to == "labeled":
        if n > MAX_LABELED:
            raise ValueError(f"labeled enumeration limited to n <= {MAX_LABELED}")
        out: dict[int, NilGraph] = {}
        for g in classes:
            for perm in itertools.permutations(range(n)):
                h = g.relabel(perm)
                out.setdefault(h.code(), h)
        return [out[k] for k in sorted(out)]
    raise ValueError(f"unknown quotient {up_to!r}")


def count_nilgraphs(n: int, connected_only: bool = False, up_to: Quotient = "iso") -> int:
    """Class counts; labeled counts use n!/|Aut| so they work up to n = 7."""
    if up_to == "labeled":
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"n must be in 1..{MAX_VERTICES}")
        classes = [g for g in _iso_classes(n) if not connected_only or is_connected(g)]
        return sum(math.factorial(n) // _automorphism_count(g) for g in classes)
    return len(enumerate_nilgraphs(n, connected_only, up_to))
