import pytest

from simplicia.constructions import (
    GroupAction,
    Partition,
    barycentric_subdivision,
    check_automorphisms,
    cyclic_sphere,
    kuhnel_complex,
    kuhnel_partition,
    one_point_suspension,
    partitions,
    quotient,
    real_projective_space,
    stacked_sphere,
    standard_ball,
    standard_sphere,
    star_in_facet,
    stellar_subdivide,
    suspension,
    torus,
)
from simplicia.core import ComplexError, compact, from_facets, join, link
from simplicia.homology import homology
from simplicia.invariants import f_vector, stacked_fvector
from simplicia.isomorphism import are_isomorphic
from simplicia.recognition import is_combinatorial_manifold, is_combinatorial_sphere


def test_standard_sphere_and_ball():
    S = standard_sphere(3)
    assert f_vector(S) == (5, 10, 10, 5)
    assert len(standard_ball(2).facets) == 1
    with pytest.raises(ValueError):
        standard_sphere(-1)


@pytest.mark.parametrize("d,n", [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)])
def test_cyclic_vertex_links_are_spheres(d, n):
    C = cyclic_sphere(d, n)
    assert is_combinatorial_sphere(C)
    for v in C.vertices:
        assert homology(link(C, (v,))).is_sphere_like()


def test_cyclic_errors():
    with pytest.raises(ValueError):
        cyclic_sphere(3, 4)


def test_kuhnel_complex_homology():
    assert homology(kuhnel_complex(2, 7)).betti == (1, 2, 1)
    assert homology(kuhnel_complex(3, 9)).betti == (1, 1, 0, 0)
    with pytest.raises(ValueError):
        kuhnel_complex(3, 8)


def test_partitions():
    assert [p.parts for p in partitions(4)] == [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
    assert Partition.parse("1,2").is_even is False
    assert Partition((2, 2)).is_even
    with pytest.raises(ValueError):
        Partition((3, 1))


def test_kuhnel_partition_manifold():
    K = kuhnel_partition(3, [2, 2])
    assert is_combinatorial_manifold(K)
    with pytest.raises(ValueError, match="not a partition"):
        kuhnel_partition(3, [1, 1])


def test_one_point_suspension_of_s3_8_38(cat):
    S = one_point_suspension(cat("s3_8_38"), "1")
    assert S.n == 9 and S.dim == 4
    assert is_combinatorial_manifold(S)


def test_stellar_subdivide_suspension_edge(cat):
    # starring the edge of the two cone points gives K * S^0
    K = cat("icosahedron")
    S = one_point_suspension(K, K.token(K.vertices[0]))
    uv = (K.vertices[0], max(S.vertices))
    T = stellar_subdivide(S, uv)
    assert are_isomorphic(T, suspension(K))


def test_stellar_subdivide_errors(tetra):
    with pytest.raises(ComplexError):
        stellar_subdivide(tetra, (0,))


def test_star_in_facet(tetra):
    K = star_in_facet(tetra, sorted(tetra.facets)[0])
    assert f_vector(K) == (5, 9, 6)


@pytest.mark.parametrize("n,d", [(6, 2), (8, 3), (10, 4)])
def test_stacked_sphere_f(n, d):
    assert f_vector(stacked_sphere(n, d, seed=3)) == stacked_fvector(n, d)


def test_stacked_sphere_deterministic():
    assert stacked_sphere(10, 3, seed=5).facets == stacked_sphere(10, 3, seed=5).facets


def test_barycentric_subdivision():
    B = barycentric_subdivision(standard_sphere(2))
    assert B.n == 14 and len(B.facets) == 24


def test_quotient_icosahedron(cat):
    I = cat("icosahedron")
    anti = {v: I.vertex_of(("v" if I.token(v)[0] == "u" else "u") + I.token(v)[1:]) for v in I.vertices}
    assert are_isomorphic(quotient(I, GroupAction([anti])), cat("rp2_6"))


def test_quotient_rejects_improper_action():
    C = from_facets(compact("12 23 34 45 56 16"))
    rot = {C.vertex_of(str(i)): C.vertex_of(str(i % 6 + 1)) for i in range(1, 7)}
    with pytest.raises(ComplexError, match="not proper"):
        quotient(C, GroupAction([rot]))


def test_non_automorphism_rejected():
    K = from_facets(compact("12 23"))
    with pytest.raises(ComplexError, match="not an automorphism"):
        check_automorphisms(K, GroupAction([{0: 1, 1: 0}]))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_real_projective_space(d):
    P = real_projective_space(d)
    assert P.n == 2 ** (d + 1) - 1
    H = homology(P)
    # RP^1 is a circle
    assert H.torsion[1] == (() if d == 1 else (2,))


def test_torus_family(cat):
    assert are_isomorphic(torus(2), cat("torus_7"))
    assert are_isomorphic(torus(3), cat("t3_15"))
    assert homology(torus(4)).betti == (1, 4, 6, 4, 1)


def test_suspension_is_join(tetra):
    assert are_isomorphic(suspension(tetra), join(tetra, standard_sphere(0)))
