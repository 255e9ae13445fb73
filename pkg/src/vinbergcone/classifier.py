"""Bounded-dimension enumeration of rank-4 candidates and their verdicts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .clifford_core import (
    A_TABLE,
    B_TABLE,
    bigraded_module,
    graded_module,
    graded_variant_count,
    indecomposable_dims,
    tensor_irreducible,
)
from .extension import (
    check_dce_identity,
    check_extension_associative,
    division_extension,
    module_extension,
    satisfies_dim_bound,
)
from .families import build_family
from .nil_algebra import (
    AlgebraError,
    QuasiNilAlgebra,
    adjacency_graph,
    anti_transpose,
    check_associative,
    check_isometric,
    check_vinberg,
    nilpotency_index,
)
from .nil_graph import canonical_permutations

MAX_CLASSIFY_DIM = 8
HEADER = ("Candidates come from the parameterized constructor families, not from a raw "
          "search over isometric tensors; equivalence is judged by graph class and "
          "block-dimension signature only.")


@dataclass(frozen=True)
class ClassificationVerdict:
    candidate: str
    isometric: bool
    associative: bool
    vinberg: bool
    witness: dict[str, Any] | None = None

    @property
    def nil(self) -> bool:
        return self.associative and self.vinberg

    def flags(self) -> dict[str, bool]:
        return {"isometric": self.isometric, "associative": self.associative,
                "vinberg": self.vinberg, "nil": self.nil}


@dataclass
class Candidate:
    family: str
    params: dict
    algebra: QuasiNilAlgebra = field(repr=False)

    @property
    def id(self) -> str:
        if not self.params:
            return self.family
        return self.family + "?" + "&".join(f"{k}={v}" for k, v in sorted(self.params.items()))


def _block_max(N: QuasiNilAlgebra) -> int:
    return max(N.dims.values(), default=0)


def _variants(p: int) -> range:
    return range(graded_variant_count(p))


def _base(p: int) -> int:
    return graded_module(p).dim_s0


def _family_params(max_dim: int) -> Iterable[tuple[str, dict]]:
    r = range(1, max_dim + 1)
    for d in itertools.product(r, repeat=3):
        yield "NI1-star", dict(zip(("d1", "d2", "d3"), d))
        yield "NI1-path2", dict(zip(("d1", "d2", "d3"), d))
    for d in itertools.product(r, repeat=4):
        yield "NI1-bipartite", dict(zip(("d1", "d2", "d3", "d4"), d))
    for p in r:
        for copies in range(1, max_dim // _base(p) + 1):
            for v in _variants(p):
                yield "NI2-a", {"p": p, "copies": copies, "variant": v}
                yield "N4_(1)", {"p": p, "copies": copies, "variant": v}
                yield "N4_(2)", {"p": p, "copies": copies, "variant": v}
                for w in r:
                    yield "NI2-b", {"p": p, "w": w, "copies": copies, "variant": v}
                    yield "NI2-c", {"p": p, "w": w, "copies": copies, "variant": v}
                for t_copies in range(1, max_dim + 1):
                    d = _base(p) * copies
                    if d > max_dim or _base(d) * t_copies > max_dim:
                        continue
                    for tv in _variants(d):
                        yield "NI2-h", {"p": p, "copies": copies, "t_copies": t_copies,
                                        "variant": v, "t_variant": tv}
        for c1, c2 in itertools.product(range(1, max_dim // _base(p) + 1), repeat=2):
            for v1, v2 in itertools.product(_variants(p), repeat=2):
                yield "NI2-d", {"p": p, "copies1": c1, "copies2": c2, "variant1": v1, "variant2": v2}
    for p1, p2 in itertools.combinations_with_replacement(r, 2):
        lcm = _base(p1) * _base(p2) // math.gcd(_base(p1), _base(p2))
        for dim_s in range(lcm, max_dim + 1, lcm):
            for v1, v2 in itertools.product(_variants(p1), _variants(p2)):
                for fam in ("NI2-e", "NI2-f", "NI2-g"):
                    yield fam, {"p1": p1, "p2": p2, "dim_s": dim_s, "variant1": v1, "variant2": v2}
    for p, q in itertools.product(r, repeat=2):
        for v in range(4):
            try:
                m = bigraded_module(p, q, v)
            except Exception:
                continue
            for copies in range(1, max_dim // m.d00 + 1):
                yield "N4_0", {"p": p, "q": q, "variant": v, "copies": copies}
    for n in range(1, max_dim // 2 + 1):
        yield "N4_(3)", {"n": n}
    for n in range(1, max_dim // 4 + 1):
        for w in range(1, 5):
            yield "N4_(4)", {"w": w, "n": n}
            yield "N4_(5)", {"w": w, "n": n}


def enumerate_candidates(max_dim: int = 4) -> list[Candidate]:
    """All family instances whose blocks have dimension <= max_dim."""
    if not 1 <= max_dim <= MAX_CLASSIFY_DIM:
        raise ValueError(f"max_dim must be in 1..{MAX_CLASSIFY_DIM}")
    out, seen = [], set()
    for fam, params in _family_params(max_dim):
        try:
            N = build_family(fam, **params)
        except (AlgebraError, ValueError):
            continue
        if _block_max(N) > max_dim:
            continue
        key = (fam, tuple(sorted(params.items())))
        if key in seen:
            continue
        seen.add(key)
        out.append(Candidate(fam, params, N))
    return out


def class_key(N: QuasiNilAlgebra) -> str:
    """Graph class up to duality plus the block-dimension signature in that labeling."""
    keys = []
    for alg in (N, anti_transpose(N)):
        canon, perms = canonical_permutations(adjacency_graph(alg))
        for perm in perms:
            sig = tuple(sorted((perm[i - 1] + 1, perm[j - 1] + 1, d) for (i, j), d in alg.dims.items()))
            keys.append((canon.code(), sig))
    code, sig = min(keys)
    return f"{code}:" + ",".join(f"{i}{j}={d}" for i, j, d in sig)


def expected_nil(family: str, params: dict) -> tuple[bool, str]:
    """Predicted Nil verdict and which claim predicts it."""
    if family.startswith("NI1") or family.startswith("NI2"):
        return True, "index<=2 list"
    if family == "N4_(2)":
        return params.get("p", 1) == 1, "NI=3 classification"
    if family == "N4_(4)":
        return params.get("w", 4) == 4, "NI=3 classification"
    return True, "NI=3 classification"


def run_checks(cid: str, N: QuasiNilAlgebra, samples: int, seed: int) -> ClassificationVerdict:
    iso = check_isometric(N)
    assoc = check_associative(N)
    vin = check_vinberg(N, samples=samples, seed=seed) if N.n == 4 else None
    witness = None
    for res in (iso, assoc, vin):
        if res is not None and not res.ok:
            witness = {"residual": res.residual, **(res.witness or {})}
            break
    return ClassificationVerdict(cid, iso.ok, assoc.ok, True if vin is None else vin.ok, witness)


def _round(x: Any, digits: int = 10) -> Any:
    if isinstance(x, float):
        return round(x, digits) + 0.0
    if isinstance(x, dict):
        return {k: _round(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v, digits) for v in x]
    return x


def classify_rank4(max_dim: int = 4, seed: int = 0, samples: int = 256) -> dict:
    """Run every gate check on every candidate and compare with the predicted pattern."""
    rows = []
    for cand in enumerate_candidates(max_dim):
        N = cand.algebra
        v = run_checks(cand.id, N, samples, seed)
        vd = run_checks(cand.id + "*", anti_transpose(N), samples, seed)
        exp, source = expected_nil(cand.family, cand.params)
        assoc_expected = True
        deviation = v.nil != exp or v.associative != assoc_expected or not v.isometric
        rows.append({
            "id": cand.id,
            "family": cand.family,
            "params": dict(sorted(cand.params.items())),
            "class": class_key(N),
            "index": nilpotency_index(N),
            "edges": [list(e) for e in N.edges()],
            "signature": list(N.signature()),
            "verdict": v.flags(),
            "dual_verdict": vd.flags(),
            "dual_consistent": v.flags() == vd.flags(),
            "expected_nil": exp,
            "claim": source,
            "deviation": bool(deviation),
            "witness": _round(v.witness),
        })
    rows.sort(key=lambda r: (r["class"], r["id"]))
    classes: dict[str, list[str]] = {}
    for r in rows:
        classes.setdefault(r["class"], []).append(r["id"])
    deviations = [r["id"] for r in rows if r["deviation"]]
    by_claim: dict[str, int] = {}
    for r in rows:
        if r["deviation"]:
            by_claim[r["claim"]] = by_claim.get(r["claim"], 0) + 1
    return {
        "header": HEADER,
        "max_dim": max_dim,
        "seed": seed,
        "samples": samples,
        "candidates": rows,
        "classes": [{"key": k, "members": v} for k, v in sorted(classes.items())],
        "deviations": deviations,
        "deviations_by_claim": dict(sorted(by_claim.items())),
        "dual_inconsistent": [r["id"] for r in rows if not r["dual_consistent"]],
        "summary": {
            "candidates": len(rows),
            "classes": len(classes),
            "nil": sum(r["verdict"]["nil"] for r in rows),
            "deviations": len(deviations),
        },
    }


def format_report(report: dict) -> str:
    lines = [report["header"], ""]
    lines.append(f"{'candidate':44s} {'NI':>2s} {'iso':>4s} {'assoc':>5s} {'vinb':>4s} "
                 f"{'nil':>4s} {'expect':>6s}  note")
    yes = lambda b: "yes" if b else "no"  # noqa: E731
    for r in report["candidates"]:
        v = r["verdict"]
        note = "DEVIATION" if r["deviation"] else ""
        if not r["dual_consistent"]:
            note += " dual-mismatch"
        lines.append(f"{r['id']:44s} {r['index']:2d} {yes(v['isometric']):>4s} "
                     f"{yes(v['associative']):>5s} {yes(v['vinberg']):>4s} {yes(v['nil']):>4s} "
                     f"{yes(r['expected_nil']):>6s}  {note}".rstrip())
    s = report["summary"]
    lines.append("")
    lines.append(f"{s['candidates']} candidates in {s['classes']} classes, {s['nil']} Nil, "
                 f"{s['deviations']} deviations")
    for claim, k in report["deviations_by_claim"].items():
        lines.append(f"  {claim}: {k} deviating candidates")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# table and extension cross-checks


def verify_dimension_tables(max_pq: int = 5) -> dict:
    """Bigraded block dims vs the b-table, a/b consistency, periodicity, numeric a-table."""
    failures = []
    for p, q in itertools.product(range(1, max_pq + 1), repeat=2):
        b = B_TABLE[p - 1][q - 1]
        m = bigraded_module(p, q)
        if (m.d00, m.d10, m.d01, m.d11) != (b,) * 4:
            failures.append(f"bigraded ({p},{q}) blocks {(m.d00, m.d10, m.d01, m.d11)} != {b}")
    for p, q in itertools.product(range(8), repeat=2):
        if A_TABLE[p][q] != B_TABLE[p][q]:
            failures.append(f"a[{p}][{q}] != b[{p + 1}][{q + 1}]")
        a = A_TABLE[p][q]
        if indecomposable_dims(p + 8, q)[0] != 16 * a or indecomposable_dims(p, q + 8)[0] != 16 * a:
            failures.append(f"periodicity at ({p},{q})")
        xs, ys = tensor_irreducible(p, q)
        dim = (xs or ys)[0].shape[0] if (xs or ys) else 1
        if dim != a:
            failures.append(f"numeric irreducible ({p},{q}) has dim {dim} != {a}")
    return {"ok": not failures, "failures": failures}


def extension_candidates(max_dim: int = 8, twists: int = 3):
    """Module-assembled extensions with every variant choice and a few twists."""
    for dv in range(1, max_dim + 1):
        for ds in range(_base(dv), max_dim + 1, _base(dv)):
            step = math.lcm(_base(dv), _base(ds))
            for dt in range(step, max_dim + 1, step):
                for var in itertools.product(_variants(dv), _variants(dv), _variants(ds), _variants(ds)):
                    for tw in [None, *range(twists)]:
                        yield module_extension(dv, ds, dt, var, tw)


def verify_extension_theorem(max_dim: int = 8) -> dict:
    """Associative module extensions obey the dimension bound; division ones are associative."""
    if not 1 <= max_dim <= MAX_CLASSIFY_DIM:
        raise ValueError(f"max_dim must be in 1..{MAX_CLASSIFY_DIM}")
    failures = []
    total = assoc = inconsistent = 0
    for ext in extension_candidates(max_dim):
        total += 1
        v = check_extension_associative(ext)
        if not v.consistent:
            inconsistent += 1
            failures.append(f"{ext.label}: conditions disagree {v.conditions}")
        if v.associative:
            assoc += 1
            if not satisfies_dim_bound(ext):
                failures.append(f"{ext.label}: associative but violates the dimension bound")
            if not check_dce_identity(ext).ok:
                failures.append(f"{ext.label}: identity fails")
    division = 0
    for dim, n in [(2, n) for n in range(1, max_dim // 2 + 1)] + [(4, n) for n in range(1, max_dim // 4 + 1)]:
        for w in range(1, dim + 1):
            division += 1
            ext = division_extension(dim, w, n)
            if not check_extension_associative(ext).associative:
                failures.append(f"{ext.label}: not associative")
    return {"ok": not failures, "failures": failures, "module_candidates": total,
            "associative": assoc, "inconsistent": inconsistent, "division_instances": division}
