import pytest

from simplicia.enumerate import (
    connected_surfaces,
    is_connected_report,
    neighbourly_3spheres_8,
    pseudomanifolds_d_plus_3,
    surfaces,
)
from simplicia.invariants import f_vector
from simplicia.isomorphism import are_isomorphic, canonical_key
from simplicia.recognition import is_combinatorial_manifold, is_combinatorial_sphere


@pytest.mark.parametrize("n,total", [(4, 1), (5, 1), (6, 3), (7, 9)])
def test_small_surface_counts(n, total):
    assert surfaces(n).total == total


def test_surfaces_6_breakdown(cat):
    r = surfaces(6)
    assert r.breakdown == {"S2": 2, "RP2": 1}
    rp2 = [K for K in r.complexes if f_vector(K)[2] == 10]
    assert len(rp2) == 1 and are_isomorphic(rp2[0], cat("rp2_6"))


def test_surfaces_8_has_one_disconnected():
    r = surfaces(8)
    assert r.breakdown["disconnected"] == 1
    assert not is_connected_report(r)
    assert is_connected_report(surfaces(8, connected=True))


def test_order_seed_independence():
    base = {canonical_key(K) for K in connected_surfaces(7)}
    for seed in (1, 2):
        assert {canonical_key(K) for K in connected_surfaces(7, order_seed=seed)} == base


def test_jobs_do_not_change_result():
    a = {canonical_key(K) for K in connected_surfaces(7, jobs=1)}
    b = {canonical_key(K) for K in connected_surfaces(7, jobs=2)}
    assert a == b


def test_results_are_pairwise_non_isomorphic():
    r = surfaces(7)
    keys = [canonical_key(K) for K in r.complexes]
    assert len(set(keys)) == len(keys)


def test_range_and_gate():
    with pytest.raises(ValueError):
        surfaces(3)
    with pytest.raises(ValueError, match="gated"):
        surfaces(9)


@pytest.mark.slow
def test_surfaces_9_connected():
    r = surfaces(9, connected=True, allow_gated=True, jobs=4)
    assert r.total == 655
    assert r.breakdown == {"S2": 50, "T2": 112, "RP2": 134, "Klein": 187,
                           "M(3,-)": 133, "M(4,-)": 37, "M(5,-)": 2}


@pytest.mark.parametrize("d,total", [(1, 1), (2, 1), (3, 2), (4, 2)])
def test_d_plus_3(d, total):
    r = pseudomanifolds_d_plus_3(d)
    assert r.total == total and all("*" in tag for tag in r.breakdown)


def test_d_plus_3_range():
    with pytest.raises(ValueError):
        pseudomanifolds_d_plus_3(6)


def test_neighbourly_3spheres_8(cat):
    r = neighbourly_3spheres_8()
    assert r.total == 4
    for K in r.complexes:
        assert f_vector(K) == (8, 28, 40, 20)
        assert is_combinatorial_sphere(K)
    for name in ("s3_8_35", "s3_8_36", "s3_8_37", "s3_8_38"):
        assert sum(bool(are_isomorphic(K, cat(name))) for K in r.complexes) == 1


def test_enumerated_surfaces_are_manifolds():
    for K in surfaces(7).complexes:
        assert is_combinatorial_manifold(K)
