"""Brute-force graph oracles shared by the graph and acceptance tests."""

import itertools

import numpy as np


def brute_force_nilgraphs(n: int) -> list[np.ndarray]:
    """Adjacency bit arrays (one row per graph) of all labeled Nil-graphs on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    pos = {e: k for k, e in enumerate(pairs)}
    codes = np.arange(2 ** len(pairs), dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(len(pairs))) & 1).astype(bool)
    ok = np.ones(len(codes), dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        ok &= ~(bits[:, pos[(i, j)]] & bits[:, pos[(j, i)]])
    for i, j, k in itertools.permutations(range(n), 3):
        ok &= ~(bits[:, pos[(i, j)]] & bits[:, pos[(j, k)]] & ~bits[:, pos[(i, k)]])
    out = []
    for row in bits[ok]:
        a = np.zeros((n, n), dtype=bool)
        for (i, j), b in zip(pairs, row):
            a[i, j] = b
        out.append(a)
    return out


def weakly_connected(a: np.ndarray) -> bool:
    n = a.shape[0]
    und = a | a.T
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(und[v]):
            if w not in seen:
                seen.add(int(w))
                stack.append(int(w))
    return len(seen) == n


def brute_class_count(pool: list[np.ndarray], with_dual: bool) -> int:
    """Number of classes under relabeling (and anti-transposition), by full search."""
    if not pool:
        return 0
    n = pool[0].shape[0]
    stack = np.stack(pool)
    mats = [stack, stack.transpose(0, 2, 1)[:, ::-1, ::-1]] if with_dual else [stack]
    weights = 2 ** np.arange(n * n, dtype=np.int64)
    best = None
    for m in mats:
        for p in itertools.permutations(range(n)):
            p = list(p)
            codes = m[:, p][:, :, p].reshape(len(pool), -1).astype(np.int64) @ weights
            best = codes if best is None else np.minimum(best, codes)
    return len(set(best.tolist()))
