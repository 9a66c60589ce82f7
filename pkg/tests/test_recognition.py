import pytest

from simplicia.constructions import (
    identify,
    kuhnel_complex,
    kuhnel_partition,
    partitions,
    stacked_sphere,
    standard_sphere,
    suspension,
)
from simplicia.core import ComplexError, Status, compact, disjoint_union, from_facets
from simplicia.recognition import (
    classify_surface,
    is_combinatorial_manifold,
    is_combinatorial_sphere,
    is_normal_pseudomanifold,
    is_pseudomanifold,
    is_stacked_sphere,
    orientable,
    orientation,
)


def test_verdict_truthiness(tetra):
    assert is_pseudomanifold(tetra)
    v = is_pseudomanifold(from_facets(compact("123 124 125")))
    assert not v and v.status is Status.NO
    assert v.certificate["reason"] == "ridge" and v.certificate["cofaces"] == 3


def test_pseudomanifold_rejects_disconnected(tetra):
    v = is_pseudomanifold(disjoint_union(tetra, tetra))
    assert not v and v.certificate["reason"] == "dual graph disconnected"


def test_pinched_sphere_not_normal(cat):
    # antipodes of the icosahedron glued: the pinch point has two cycles as link
    I = cat("icosahedron")
    P = identify(I, {I.vertex_of("v1"): I.vertex_of("u1")}, name="pinched")
    assert is_pseudomanifold(P)
    v = is_normal_pseudomanifold(P)
    assert not v and v.certificate["reason"] == "disconnected link"


def test_double_suspension_of_homology_sphere(cat):
    S = suspension(suspension(cat("h3_16")))
    assert is_normal_pseudomanifold(S)
    v = is_combinatorial_manifold(S)
    assert v.status is Status.NO and v.certificate["name"] == "h3_16"


@pytest.mark.parametrize("name,tag", [("rp2_6", "RP2"), ("torus_7", "T2"), ("klein_8", "Klein"),
                                      ("icosahedron", "S2"), ("m_9", "M(5,-)"), ("n_10", "M(7,-)")])
def test_classify_surface(cat, name, tag):
    assert classify_surface(cat(name)).tag == tag


def test_classify_surface_errors(cat, tetra):
    with pytest.raises(ComplexError):
        classify_surface(cat("cp2_9"))
    with pytest.raises(ComplexError, match="not connected"):
        classify_surface(disjoint_union(tetra, tetra))


def test_orientability(cat):
    assert orientable(cat("torus_7"))
    assert not orientable(cat("rp2_6"))
    assert not orientable(cat("klein_8"))
    assert orientable(cat("cp2_9"))
    assert not orientable(cat("rp4_16"))
    assert not orientable(kuhnel_complex(3, 9))
    assert orientable(kuhnel_complex(4, 11))


def test_orientation_signs_are_consistent(cat):
    K = cat("torus_7")
    v = orientable(K)
    assert len(v.certificate["signs"]) == len(K.facets)
    assert orientation(K) is not None


@pytest.mark.parametrize("d", [2, 3, 4])
def test_kuhnel_partition_orientability(d):
    for p in partitions(d + 1):
        assert bool(orientable(kuhnel_partition(d, p))) == p.is_even


def test_spheres_recognised(cat):
    for d in range(0, 4):
        assert is_combinatorial_sphere(standard_sphere(d))
    for name in ("s3_8_35", "s3_8_36", "s3_8_37", "s3_8_38", "s3_8_39"):
        v = is_combinatorial_sphere(cat(name))
        assert v and v.certificate.replay().n == 5


def test_non_spheres_rejected(cat):
    assert not is_combinatorial_sphere(cat("torus_7"))
    assert not is_combinatorial_sphere(cat("l3_12"))
    v = is_combinatorial_sphere(cat("h3_16"))
    assert not v and v.certificate["name"] == "h3_16"


@pytest.mark.parametrize("name", ["torus_7", "rp2_6", "rp3_11", "l3_12", "t3_15", "cp2_9", "s2x2_11"])
def test_manifolds_recognised(cat, name):
    assert is_combinatorial_manifold(cat(name)).status is Status.YES


def test_stacked_sphere_recognition(cat):
    assert is_stacked_sphere(stacked_sphere(9, 3, seed=1))
    assert is_stacked_sphere(stacked_sphere(7, 2, seed=4))
    assert not is_stacked_sphere(cat("s3_8_38"))
    assert not is_stacked_sphere(cat("icosahedron"))
