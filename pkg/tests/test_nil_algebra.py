import json

import numpy as np
import pytest

from vinbergcone.division import quat_mul
from vinbergcone.families import build_family
from vinbergcone.nil_algebra import (
    AlgebraError,
    FormatError,
    IsometryError,
    QuasiNilAlgebra,
    anti_transpose,
    build_from_equipment,
    check_associative,
    check_isometric,
    check_vinberg,
    direct_sum,
    from_json,
    is_decomposable,
    nilpotency_index,
    tensors_equal,
    to_json,
)
from vinbergcone.nil_graph import NilGraph

ONE = np.ones((1, 1, 1))


def chain3(scale: float = 1.0) -> QuasiNilAlgebra:
    g = NilGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    return build_from_equipment(g, {(1, 2): 1, (2, 3): 1, (1, 3): 1}, {(1, 2, 3): scale * ONE})


def out_star() -> QuasiNilAlgebra:
    return build_from_equipment(None, {(1, 2): 1, (1, 3): 2, (1, 4): 1}, {}, n=4)


def test_scalar_chain_is_valid():
    N = chain3()
    assert N.n == 3
    assert check_isometric(N).ok
    assert np.allclose(N.mul(1, 2, 3, [2.0], [3.0]), [6.0])


def test_scaled_tensor_is_rejected():
    with pytest.raises(IsometryError) as exc:
        chain3(2.0)
    assert exc.value.triple == (1, 2, 3)
    assert exc.value.residual == pytest.approx(3.0)


def test_missing_shortcut_is_rejected():
    with pytest.raises(AlgebraError, match="missing edge"):
        build_from_equipment(None, {(1, 2): 1, (2, 3): 1}, {}, n=3)


def test_wrong_shape_is_rejected():
    with pytest.raises(AlgebraError, match="shape"):
        build_from_equipment(None, {(1, 2): 1, (2, 3): 1, (1, 3): 2}, {(1, 2, 3): ONE}, n=3)


def test_edge_without_dimension_is_rejected():
    g = NilGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(AlgebraError):
        build_from_equipment(g, {(1, 2): 1, (2, 3): 1}, {(1, 2, 3): ONE})


def test_zeroed_coefficient_names_triple():
    N = build_family("N4_(3)", n=1)
    t = {k: np.array(v) for k, v in N.tensors.items()}
    t[(1, 3, 4)][0, 0, 0] = 0.0
    bad = QuasiNilAlgebra(N.n, N.dims, t)
    res = check_isometric(bad)
    assert not res.ok
    assert res.witness["triple"] == (1, 3, 4)


def test_empty_algebra():
    N = build_from_equipment(None, {}, {}, n=3)
    assert check_isometric(N).ok
    assert check_associative(N).ok


def test_low_index_vinberg_is_vacuous():
    assert check_vinberg(out_star()).ok
    N = build_family("NI2-b")
    assert nilpotency_index(N) == 2
    assert check_vinberg(N).ok


def test_vinberg_needs_rank4():
    with pytest.raises(AlgebraError):
        check_vinberg(chain3())


def test_complex_family_is_nil():
    N = build_family("N4_(3)", n=1)
    assert set(N.dims.values()) == {2}
    assert check_associative(N).ok
    assert check_vinberg(N).ok


def test_random_top_tensor_breaks_associativity():
    N = build_family("N4_(3)", n=1)
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    t = dict(N.tensors)
    t[(1, 2, 3)] = np.einsum("dc,cab->dab", q, N.tensors[(1, 2, 3)])
    bad = QuasiNilAlgebra(N.n, N.dims, t)
    assert check_isometric(bad).ok
    res = check_associative(bad)
    assert not res.ok
    assert res.witness["chain"] == (1, 2, 3, 4)


def _pairing(N, a24, a34):
    """Largest <x a24, y a34> over unit x in N12, y in N13."""
    b = N.right(1, 2, 4, a24).T @ N.right(1, 3, 4, a34)
    return float(np.linalg.svd(b, compute_uv=False)[0])


@pytest.mark.parametrize("p", [2, 3])
def test_clifford_family_witness_closed_form(p):
    # a24 = v1 s0, a34 = v2 s0 with orthogonal v1, v2
    N = build_family("N4_2", p=p)
    e = np.eye(p)
    s0 = np.eye(N.dim(1, 4))[0]
    a24 = N.left(1, 2, 4, e[0]).T @ s0
    a34 = N.left(1, 3, 4, e[1]).T @ s0
    assert np.isclose(np.linalg.norm(a24), 1) and np.isclose(np.linalg.norm(a34), 1)
    premise = np.abs(N.right(2, 3, 4, a34).T @ a24).max()
    assert premise < 1e-12
    assert _pairing(N, a24, a34) > 0.1


@pytest.mark.parametrize("w", [1, 2, 3])
def test_quaternion_family_witness_closed_form(w):
    # a24 = u a34 with u orthogonal to W
    N = build_family("N4_(4)", w=w)
    u = np.eye(4)[w]
    a34 = np.array([0.5, 0.5, -0.5, 0.5])
    a24 = quat_mul(u, a34)
    premise = np.abs(N.right(2, 3, 4, a34).T @ a24).max()
    assert premise < 1e-12
    assert _pairing(N, a24, a34) > 0.1


@pytest.mark.parametrize("family, params", [("N4_2", {"p": 2}), ("N4_2", {"p": 3}),
                                            ("N4_(4)", {"w": 1}), ("N4_(4)", {"w": 3})])
def test_checker_witness(family, params):
    N = build_family(family, **params)
    res = check_vinberg(N)
    assert not res.ok
    wit = res.witness
    assert wit["premise_residual"] <= 1e-12
    assert wit["conclusion"] >= 0.1
    x, y = np.array(wit["x12"]), np.array(wit["y13"])
    a24, a34 = np.array(wit["a24"]), np.array(wit["a34"])
    lhs = N.mul(1, 2, 4, x, a24) @ N.mul(1, 3, 4, y, a34)
    assert abs(lhs) == pytest.approx(wit["conclusion"])


def test_bigraded_family_passes():
    for p in (1, 2):
        for q in (1, 2):
            assert check_vinberg(build_family("N4_0", p=p, q=q)).ok


def test_nilpotency_index():
    assert nilpotency_index(out_star()) == 1
    assert nilpotency_index(build_family("NI2-b")) == 2
    assert nilpotency_index(build_family("N4_0")) == 3


def test_anti_transpose():
    N = out_star()
    D = anti_transpose(N)
    assert sorted(D.dims) == [(1, 4), (2, 4), (3, 4)]
    M = build_family("N4_1", p=3)
    assert tensors_equal(anti_transpose(anti_transpose(M)), M)
    assert check_associative(anti_transpose(M)).ok


def test_dual_of_first_clifford_family():
    # the dual has dimensions nu_34 <= nu_23 <= nu_12 along the other diagonal
    M = build_family("N4_1", p=3)
    D = anti_transpose(M)
    assert D.dim(3, 4) == M.dim(1, 2) == 1
    assert D.dim(2, 4) == M.dim(1, 3)
    assert D.dim(1, 2) == M.dim(3, 4)


def test_direct_sum():
    e = build_from_equipment(None, {(1, 2): 1}, {}, n=2)
    s = direct_sum(e, e)
    assert s.n == 4 and is_decomposable(s)
    assert not is_decomposable(build_family("N4_0"))
    s = direct_sum(chain3(), build_from_equipment(None, {}, {}, n=1))
    assert nilpotency_index(s) == 2


def test_json_round_trip():
    for family, params in [("N4_0", {"p": 2, "q": 1}), ("N4_(4)", {"w": 2}), ("NI2-h", {})]:
        N = build_family(family, **params)
        text = json.dumps(to_json(N))
        assert tensors_equal(from_json(text), N)


def test_json_errors_have_paths():
    N = build_family("N4_(3)", n=1)
    data = to_json(N)
    data["tensors"]["123"] = [[[1.0]]]
    with pytest.raises(FormatError) as exc:
        from_json(data)
    assert exc.value.path == "$.tensors.123"
    with pytest.raises(FormatError):
        from_json('{"n": 3, "dims": {')
    with pytest.raises(FormatError) as exc:
        from_json({"n": 3, "dims": {"1x": 1}})
    assert exc.value.path == "$.dims.1x"
    with pytest.raises(FormatError):
        from_json({"dims": {}})
