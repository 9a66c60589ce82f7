import pytest

from simplicia.constructions import barycentric_subdivision, standard_sphere
from simplicia.core import (
    INF,
    ComplexError,
    closure,
    components,
    compact,
    degree,
    disjoint_union,
    emit,
    faces,
    from_facets,
    graph_distance,
    induced,
    is_connected,
    join,
    link,
    parse,
    read,
    star,
    write,
)
from simplicia.invariants import f_vector
from simplicia.isomorphism import are_isomorphic, canonical_form, canonical_key


def test_from_facets_triangle_boundary():
    K = from_facets([[1, 2], [2, 3], [1, 3]])
    assert len(K.facets) == 3 and K.dim == 1 and K.n == 3


def test_from_facets_drops_subsets():
    K = from_facets([[1, 2, 3], [1, 2]])
    assert len(K.facets) == 1 and K.tokens(next(iter(K.facets))) == ["1", "2", "3"]


def test_from_facets_rp2_6(cat):
    rows = [l.split() for l in emit(cat("rp2_6")).splitlines() if l and not l.startswith("#")]
    K = from_facets(rows)
    assert (K.dim, K.n, len(K.facets)) == (2, 6, 10)


def test_from_facets_errors():
    with pytest.raises(ComplexError, match="empty complex"):
        from_facets([])
    with pytest.raises(ComplexError, match="degenerate facet"):
        from_facets([[1, 1, 2]])


def test_vertices_dense_in_order_of_appearance():
    K = from_facets([["c", "a"], ["a", "b"]])
    assert K.vertices == (0, 1, 2)
    assert [K.token(v) for v in K.vertices] == ["c", "a", "b"]


def test_faces(cat, tetra):
    assert len(faces(cat("rp2_6"), 1)) == 15
    assert len(faces(tetra, 2)) == 4
    assert len(faces(cat("cp2_9"), 3)) == 90
    assert faces(tetra, -1) == frozenset({()})
    assert faces(tetra, 7) == frozenset()


def test_link_of_tetrahedron_vertex(tetra):
    L = link(tetra, (0,))
    assert L.n == 3 and len(L.facets) == 3 and L.dim == 1


def test_link_in_cp2_is_8_vertex_3_sphere(cat):
    K = cat("cp2_9")
    S38 = cat("s3_8_38")
    for v in K.vertices:
        L = link(K, (v,))
        assert tuple(f_vector(L).counts) == (8, 28, 40, 20)
        assert are_isomorphic(L, S38)


def test_link_in_rp2_6_is_5_cycle(cat):
    K = cat("rp2_6")
    L = link(K, K.simplex(["u"]))
    assert sorted(L.token(v) for v in L.vertices) == [f"u{i}" for i in range(1, 6)]
    assert all(degree(L, v) == 2 for v in L.vertices) and is_connected(L)


def test_link_of_non_face_errors(tetra):
    K = from_facets(compact("12 23"))
    with pytest.raises(ComplexError, match="not a simplex of K"):
        link(K, K.simplex("13"))


def test_star(tetra, octahedron_s1):
    assert len(star(tetra, (0,)).facets) == 3
    st = star(octahedron_s1, octahedron_s1.simplex("36"))
    assert sorted(sorted(st.tokens(f)) for f in st.facets) == [["1", "3", "6"], ["2", "3", "6"]]


def test_star_is_closure_join_link(cat):
    K = cat("torus_7")
    for s in sorted(faces(K, 1))[:10]:
        J = join(closure(s, K.labels), link(K, s))
        assert frozenset(frozenset(J.tokens(f)) for f in J.facets) == \
            frozenset(frozenset(K.tokens(f)) for f in star(K, s).facets)


def test_join_spheres():
    S0 = standard_sphere(0)
    C4 = join(S0, S0)
    assert C4.n == 4 and len(C4.facets) == 4 and C4.dim == 1
    O = join(C4, S0)
    assert tuple(f_vector(O).counts) == (6, 12, 8)
    J = join(standard_sphere(1), standard_sphere(2))
    assert J.n == 3 + 4 and J.dim == 4


def test_join_f_vector_product(cat):
    K, L = cat("torus_7"), standard_sphere(1)
    fk, fl = [1, *f_vector(K).counts], [1, *f_vector(L).counts]
    fj = [1, *f_vector(join(K, L)).counts]
    for k in range(len(fj)):
        assert fj[k] == sum(fk[i] * fl[k - i] for i in range(k + 1) if i < len(fk) and k - i < len(fl))


def test_induced(cat):
    C4 = from_facets(compact("12 23 34 14"))
    P = induced(C4, [C4.vertex_of(t) for t in "123"])
    assert sorted(sorted(P.tokens(f)) for f in P.facets) == [["1", "2"], ["2", "3"]]
    assert induced(C4, C4.vertices) == C4
    R = cat("rp2_6")
    I = induced(R, [R.vertex_of(f"u{i}") for i in range(1, 6)])
    assert len(I.facets) == 5 and I.dim == 2


def test_graph_distance_antipodal_barycentric():
    S = standard_sphere(2)
    B = barycentric_subdivision(S)
    face_of = B._cache["faces_of"]
    by_face = {tuple(f): i for i, f in face_of.items()}
    full = frozenset(S.vertices)
    for i, f in face_of.items():
        assert graph_distance(B, i, by_face[tuple(sorted(full - frozenset(f)))]) == 3


def test_disconnected(tetra):
    U = disjoint_union(tetra, tetra)
    assert not is_connected(U)
    assert len(components(U)) == 2
    assert graph_distance(U, U.vertices[0], U.vertices[-1]) == INF


def test_torus_degrees(cat):
    K = cat("torus_7")
    assert all(degree(K, v) == 6 for v in K.vertices)


def test_iso_s1_s2(octahedron_s1):
    S2 = from_facets(compact("123 126 134 156 145 234 245 256"))
    v = are_isomorphic(octahedron_s1, S2)
    assert not v and v.certificate["reason"] == "degree sequence"


def test_canonical_form_idempotent(cat):
    C, _ = canonical_form(cat("klein_8"))
    C2, _ = canonical_form(C)
    assert C2.facets == C.facets


def test_io_round_trip(tmp_path, cat):
    K = cat("h3_16")
    p = tmp_path / "h.cplx"
    write(K, p)
    L = read(p)
    assert L.name == "h3_16"
    assert canonical_key(L) == canonical_key(K)
    assert parse(emit(K)).facets == K.facets


def test_parse_comments_and_name():
    K = parse("# name: demo\n# a comment\n\n1 2 3\n2 3 4\n")
    assert K.name == "demo" and len(K.facets) == 2


def test_emit_sorted_by_token():
    K = from_facets([["b", "a"], ["10", "9"], ["2", "1"]])
    lines = emit(K).splitlines()
    assert lines == ["1 2", "9 10", "a b"]
