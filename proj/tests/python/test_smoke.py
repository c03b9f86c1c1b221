"""Smoke tests for the python extension module."""

import pytest

import isotope


@pytest.fixture(scope="module")
def ext():
    return isotope.Extension(2, 1, 3)


def test_field_facts(ext):
    assert ext.q == 2
    assert ext.order == 8
    assert ext.modulus == [1, 1, 0, 1]
    alpha = 2
    # alpha^3 = alpha + 1 under x^3 + x + 1
    assert ext.mul(ext.mul(alpha, alpha), alpha) == ext.add(alpha, 1)
    assert ext.inv(1) == 1
    with pytest.raises(isotope.IsotopeError):
        ext.inv(0)


def test_construction_errors():
    with pytest.raises(isotope.IsotopeError):
        isotope.Extension(4, 1, 3)


def test_galois_layer(ext):
    assert ext.representatives() == [1]
    assert len(ext.norm_one_set()) == 7
    assert all(ext.norm(x) == 1 for x in range(1, 8))
    v = ext.hilbert90_solve(2)
    assert ext.mul(ext.tau(v), ext.inv(v)) == 2


def test_operators(ext):
    assert ext.reduced_norm([1, 0, 0]) == 1
    assert ext.reduced_norm([1, 2, 0]) == 0  # singular over GF(2)
    assert ext.compose([0, 1, 0], [0, 1, 0]) == [0, 0, 1]  # tau . tau = tau^2
    f = [1, 0, 3]
    assert ext.operator_from_matrix(ext.operator_matrix(f)) == f


def test_tensors_and_hearts(ext):
    k_tensor = ext.field_tensor()
    assert ext.tensor_of([1, 0, 0], [1, 0, 0]) == k_tensor
    twisted = ext.tensor_of([0, 1, 0], [1, 0, 0])
    reg = ext.is_regular(twisted)
    assert reg is not None
    d = ext.decompose(twisted)
    assert d is not None
    h = ext.kaplansky_heart(twisted)
    assert h["unit"] is not None


def test_classification(ext):
    c = ext.canonicalize([1, 0, 0], [1, 0, 0])
    assert c["type_index"] == 5
    w = ext.iso_critical([1, 0, 0], [1, 0, 0], [1, 0, 0], [1, 0, 0])
    assert w == {"u": 1, "v": 1, "sigma": 0}
    assert ext.check_critical([1, 0, 0], [1, 0, 0], [1, 0, 0], [1, 0, 0], 1, 1, 0)
    # unital vs non-unital: not isomorphic
    assert ext.iso_critical([0, 1, 0], [1, 0, 0], [1, 0, 0], [1, 0, 0]) is None
    assert (
        ext.iso_bruteforce(
            ext.tensor_of([0, 1, 0], [1, 0, 0]), ext.field_tensor()
        )
        is None
    )


def test_atlas_small():
    ext2 = isotope.Extension(2, 1, 2)
    rep = ext2.atlas(oracle=True)
    assert rep["oracle_checked"] is True
    assert rep["oracle_agrees"] is True
    total = sum(c["members"] for t in rep["types"] for c in t["representatives"])
    assert total == 36


def test_scaling_and_errors():
    ext = isotope.Extension(3, 1, 3)
    m, v = ext.scale_to_M(5, 1)
    assert m in ext.representatives()
    assert ext.mul(ext.mul(ext.tau(v), ext.inv(v)), 5) == m
    with pytest.raises(isotope.IsotopeError):
        ext.scale_to_M(5, 0)  # tau^0 does not generate
    with pytest.raises(isotope.IsotopeError):
        bad = next(x for x in range(1, 27) if ext.norm(x) != 1)
        ext.hilbert90_solve(bad)


def test_canonical_witness_reverifies():
    ext = isotope.Extension(3, 1, 3)
    f, g = [2, 7, 11], [1, 4, 0]
    if not (ext.is_invertible(f) and ext.is_invertible(g)):
        pytest.skip("pick different probe operators")
    c = ext.canonicalize(f, g)
    w = c["witness"]
    assert ext.check_critical(f, g, c["f"], c["g"], w["u"], w["v"], w["sigma"])


def test_verify_random_level():
    results = isotope.verify(p=2, m=1, n=3, level="random", seed=5, samples=40)
    assert results and all(r["pass"] for r in results)
