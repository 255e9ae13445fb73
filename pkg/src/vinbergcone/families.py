"""Named rank-4 algebra families and the ``family:ID?k=v`` address format."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable
from urllib.parse import parse_qsl

from .clifford_core import (
    CliffordError,
    bigraded_module,
    graded_module,
    swap_arguments,
)
from .extension import algebra_from_extension, division_extension, scalar_extension
from .nil_algebra import AlgebraError, QuasiNilAlgebra, build_from_equipment


def _module(p: int, dim_s: int | None = None, variant: int = 0, copies: int = 1):
    """Graded Cl_p module, sized by copies or by a target dim S0."""
    base = graded_module(p, 1, variant).dim_s0
    if dim_s is not None:
        if dim_s % base:
            raise AlgebraError(f"no graded Cl_{p} module with dim S0 = {dim_s}")
        copies = dim_s // base
    return graded_module(p, copies, variant)


def _common_dim(p1: int, p2: int, dim_s: int | None) -> int:
    b1 = graded_module(p1).dim_s0
    b2 = graded_module(p2).dim_s0
    return dim_s if dim_s is not None else b1 * b2 // math.gcd(b1, b2)


def _build(dims: dict, tensors: dict) -> QuasiNilAlgebra:
    return build_from_equipment(None, dims, tensors, n=4)


# ---------------------------------------------------------------------------
# NI = 1


def ni1_star(d1: int = 1, d2: int = 1, d3: int = 1) -> QuasiNilAlgebra:
    return _build({(1, 2): d1, (1, 3): d2, (1, 4): d3}, {})


def ni1_path2(d1: int = 1, d2: int = 1, d3: int = 1) -> QuasiNilAlgebra:
    return _build({(1, 3): d1, (1, 4): d2, (2, 4): d3}, {})


def ni1_bipartite(d1: int = 1, d2: int = 1, d3: int = 1, d4: int = 1) -> QuasiNilAlgebra:
    return _build({(1, 3): d1, (1, 4): d2, (2, 3): d3, (2, 4): d4}, {})


# ---------------------------------------------------------------------------
# NI = 2 (the first matrix of that list is the full-chain shape N4_(1))


def ni2_b(p: int = 1, w: int = 1, copies: int = 1, variant: int = 0) -> QuasiNilAlgebra:
    """12=V, 13=W, 14=S1, 24=S0."""
    m = graded_module(p, copies, variant)
    return _build({(1, 2): p, (1, 3): w, (1, 4): m.dim_s1, (2, 4): m.dim_s0},
                  {(1, 2, 4): m.tensor()})


def ni2_c(p: int = 1, w: int = 1, copies: int = 1, variant: int = 0) -> QuasiNilAlgebra:
    """12=S0, 13=W, 14=S1, 24=V."""
    m = graded_module(p, copies, variant)
    return _build({(1, 2): m.dim_s0, (1, 3): w, (1, 4): m.dim_s1, (2, 4): p},
                  {(1, 2, 4): swap_arguments(m.tensor())})


def ni2_d(p: int = 1, copies1: int = 1, copies2: int = 1, variant1: int = 0,
          variant2: int = 0) -> QuasiNilAlgebra:
    """13=S0_2, 14=S1_2, 23=S0_1, 24=S1_1, 34=V."""
    m1 = graded_module(p, copies1, variant1)
    m2 = graded_module(p, copies2, variant2)
    return _build(
        {(1, 3): m2.dim_s0, (1, 4): m2.dim_s1, (2, 3): m1.dim_s0, (2, 4): m1.dim_s1, (3, 4): p},
        {(1, 3, 4): swap_arguments(m2.tensor()), (2, 3, 4): swap_arguments(m1.tensor())},
    )


def ni2_e(p1: int = 1, p2: int = 1, dim_s: int | None = None, variant1: int = 0,
          variant2: int = 0) -> QuasiNilAlgebra:
    """13=V2, 14=S1_2, 23=V1, 24=S1_1, 34=S0 shared by both modules."""
    d = _common_dim(p1, p2, dim_s)
    m1 = _module(p1, d, variant1)
    m2 = _module(p2, d, variant2)
    return _build(
        {(1, 3): p2, (1, 4): d, (2, 3): p1, (2, 4): d, (3, 4): d},
        {(1, 3, 4): m2.tensor(), (2, 3, 4): m1.tensor()},
    )


def ni2_f(p1: int = 1, p2: int = 1, dim_s: int | None = None, variant1: int = 0,
          variant2: int = 0) -> QuasiNilAlgebra:
    """12=V1, 13=S0_2, 14=S1 shared, 24=S0_1, 34=V2."""
    d = _common_dim(p1, p2, dim_s)
    m1 = _module(p1, d, variant1)
    m2 = _module(p2, d, variant2)
    return _build(
        {(1, 2): p1, (1, 3): d, (1, 4): d, (2, 4): d, (3, 4): p2},
        {(1, 2, 4): m1.tensor(), (1, 3, 4): swap_arguments(m2.tensor())},
    )


def ni2_g(p1: int = 1, p2: int = 1, dim_s: int | None = None, variant1: int = 0,
          variant2: int = 0) -> QuasiNilAlgebra:
    """12=V1, 13=V2, 14=S1 shared, 24=S0_1, 34=S0_2."""
    d = _common_dim(p1, p2, dim_s)
    m1 = _module(p1, d, variant1)
    m2 = _module(p2, d, variant2)
    return _build(
        {(1, 2): p1, (1, 3): p2, (1, 4): d, (2, 4): d, (3, 4): d},
        {(1, 2, 4): m1.tensor(), (1, 3, 4): m2.tensor()},
    )


def ni2_h(p: int = 1, copies: int = 1, t_copies: int = 1, variant: int = 0,
          t_variant: int = 0) -> QuasiNilAlgebra:
    """13=V, 14=S1, 23=T0, 24=T1, 34=S0 with T a Cl(S0) module."""
    m = graded_module(p, copies, variant)
    d = m.dim_s0
    t = graded_module(d, t_copies, t_variant)
    return _build(
        {(1, 3): p, (1, 4): m.dim_s1, (2, 3): t.dim_s0, (2, 4): t.dim_s1, (3, 4): d},
        {(1, 3, 4): m.tensor(), (2, 3, 4): swap_arguments(t.tensor())},
    )


# ---------------------------------------------------------------------------
# NI = 3


def n4_0(p: int = 1, q: int = 1, variant: int = 0, copies: int = 1) -> QuasiNilAlgebra:
    """12=V10, 13=S10, 14=S11, 23=S00, 24=S01, 34=V01 from a bigraded module."""
    m = bigraded_module(p, q, variant, copies)
    return _build(
        {(1, 2): p, (1, 3): m.d10, (1, 4): m.d11, (2, 3): m.d00, (2, 4): m.d01, (3, 4): q},
        {
            (1, 2, 3): m.action("u", "00", "10"),
            (1, 2, 4): m.action("u", "01", "11"),
            (1, 3, 4): swap_arguments(m.action("w", "10", "11")),
            (2, 3, 4): swap_arguments(m.action("w", "00", "01")),
        },
    )


def _extension(kind: str, p: int, copies: int, variant: int, w: int, n: int):
    if kind == "scalar":
        return scalar_extension(p, copies, variant)
    if kind == "C":
        return division_extension(2, w, n)
    if kind == "H":
        return division_extension(4, w, n)
    raise AlgebraError(f"unknown extension kind {kind!r}")


def n4_1(p: int = 1, copies: int = 1, variant: int = 0, ext: str = "scalar", w: int = 1,
         n: int = 1) -> QuasiNilAlgebra:
    return algebra_from_extension(_extension(ext, p, copies, variant, w, n), "N4_1")


def n4_2(p: int = 1, copies: int = 1, variant: int = 0, ext: str = "scalar", w: int = 1,
         n: int = 1) -> QuasiNilAlgebra:
    return algebra_from_extension(_extension(ext, p, copies, variant, w, n), "N4_2")


def n4_k1(p: int = 1, copies: int = 1, variant: int = 0) -> QuasiNilAlgebra:
    """(R, V, S1 / V, S1 / S0)."""
    return n4_1(p, copies, variant)


def n4_k2(p: int = 1, copies: int = 1, variant: int = 0) -> QuasiNilAlgebra:
    """(V, V, S0 / R, S1 / S1)."""
    return n4_2(p, copies, variant)


def n4_k3(n: int = 1) -> QuasiNilAlgebra:
    """(C, C, C^n / C, C^n / C^n)."""
    return algebra_from_extension(division_extension(2, 2, n), "N4_1")


def _check_w(w: int) -> None:
    if not 1 <= w <= 4:
        raise AlgebraError(f"dim W must be in 1..4, got {w}")


def n4_k4(w: int = 4, n: int = 1) -> QuasiNilAlgebra:
    """(H, H, H^n / W, H^n / H^n), W a subspace of H at block 23."""
    _check_w(w)
    return algebra_from_extension(division_extension(4, w, n), "N4_2")


def n4_k5(w: int = 4, n: int = 1) -> QuasiNilAlgebra:
    """(W, H, H^n / H, H^n / H^n), W a subspace of H at block 12."""
    _check_w(w)
    return algebra_from_extension(division_extension(4, w, n), "N4_1")


@dataclass(frozen=True)
class Family:
    id: str
    builder: Callable[..., QuasiNilAlgebra]
    index: int
    doc: str


FAMILIES: dict[str, Family] = {f.id: f for f in (
    Family("NI1-star", ni1_star, 1, "12, 13, 14 free"),
    Family("NI1-path2", ni1_path2, 1, "13, 14, 24 free"),
    Family("NI1-bipartite", ni1_bipartite, 1, "13, 14, 23, 24 free"),
    Family("NI2-a", n4_k1, 3, "(R, V, S1 / V, S1 / S0), the full-chain shape"),
    Family("NI2-b", ni2_b, 2, "12=V, 13=W, 14=S1, 24=S0"),
    Family("NI2-c", ni2_c, 2, "12=S0, 13=W, 14=S1, 24=V"),
    Family("NI2-d", ni2_d, 2, "13=S0_2, 14=S1_2, 23=S0_1, 24=S1_1, 34=V"),
    Family("NI2-e", ni2_e, 2, "13=V2, 14=S1_2, 23=V1, 24=S1_1, 34=S0"),
    Family("NI2-f", ni2_f, 2, "12=V1, 13=S0_2, 14=S1, 24=S0_1, 34=V2"),
    Family("NI2-g", ni2_g, 2, "12=V1, 13=V2, 14=S1, 24=S0_1, 34=S0_2"),
    Family("NI2-h", ni2_h, 2, "13=V, 14=S1, 23=T0, 24=T1, 34=S0"),
    Family("N4_0", n4_0, 3, "bigraded Cl_p x Cl_q module"),
    Family("N4_1", n4_1, 3, "12=V, 13=S1, 14=T3, 23=S0, 24=T2, 34=T1"),
    Family("N4_2", n4_2, 3, "12=S1, 13=S0, 14=T1, 23=V, 24=T3, 34=T2"),
    Family("N4_(1)", n4_k1, 3, "(R, V, S1 / V, S1 / S0)"),
    Family("N4_(2)", n4_k2, 3, "(V, V, S0 / R, S1 / S1)"),
    Family("N4_(3)", n4_k3, 3, "(C, C, C^n / C, C^n / C^n)"),
    Family("N4_(4)", n4_k4, 3, "(H, H, H^n / W, H^n / H^n)"),
    Family("N4_(5)", n4_k5, 3, "(W, H, H^n / H, H^n / H^n)"),
)}

ALIASES = {"N4_3": "N4_(3)", "N4_4": "N4_(4)", "N4_5": "N4_(5)", "N4_(0)": "N4_0"}

_INT_PARAMS = {"p", "q", "n", "w", "copies", "variant", "d1", "d2", "d3", "d4", "p1", "p2",
               "dim_s", "copies1", "copies2", "variant1", "variant2", "t_copies", "t_variant"}


def resolve_family(family_id: str) -> Family:
    fid = ALIASES.get(family_id, family_id)
    if fid not in FAMILIES:
        raise AlgebraError(f"unknown family {family_id!r}")
    return FAMILIES[fid]


def build_family(family_id: str, **params) -> QuasiNilAlgebra:
    fam = resolve_family(family_id)
    try:
        return fam.builder(**params)
    except TypeError as exc:
        raise AlgebraError(f"bad parameters for {fam.id}: {exc}") from exc
    except CliffordError as exc:
        raise AlgebraError(f"bad parameters for {fam.id}: {exc}") from exc


def parse_family_uri(uri: str) -> tuple[str, dict]:
    """``family:N4_3?n=2`` -> ("N4_(3)", {"n": 2})."""
    if not uri.startswith("family:"):
        raise AlgebraError(f"not a family address: {uri!r}")
    body = uri[len("family:"):]
    name, _, query = body.partition("?")
    params: dict = {}
    for k, v in parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)):
        if k in _INT_PARAMS:
            try:
                params[k] = int(v)
            except ValueError as exc:
                raise AlgebraError(f"parameter {k} must be an integer") from exc
        else:
            params[k] = v
    return resolve_family(name).id, params


def family_from_uri(uri: str) -> QuasiNilAlgebra:
    fid, params = parse_family_uri(uri)
    return build_family(fid, **params)

