import json

import pytest

from simplicia.bistellar import (
    FlipState,
    Move,
    apply_move,
    bistellar_equivalent,
    f_delta,
    flip_graph_component,
    proper_moves,
    reduce_to_sphere,
    valid_moves,
)
from simplicia.constructions import standard_sphere, stacked_sphere
from simplicia.core import ComplexError, Status, compact, from_facets
from simplicia.invariants import f_vector
from simplicia.isomorphism import are_isomorphic


def test_octahedron_flip_gives_s2(octahedron_s1):
    S1 = octahedron_s1
    m = Move(S1.simplex("36"), S1.simplex("12"), 1)
    S2 = apply_move(S1, m)
    want = from_facets(compact("123 126 134 156 145 234 245 256"))
    assert frozenset(frozenset(S2.tokens(f)) for f in S2.facets) == \
        frozenset(frozenset(want.tokens(f)) for f in want.facets)
    assert not are_isomorphic(S1, S2)


def test_octahedron_equivalent_at_depth_one(octahedron_s1):
    S2 = from_facets(compact("123 126 134 156 145 234 245 256"))
    v = bistellar_equivalent(octahedron_s1, S2, depth=1)
    assert v and len(v.certificate["forward"]) + len(v.certificate["backward"]) == 1


def test_s3_8_38_to_39(cat):
    v = bistellar_equivalent(cat("s3_8_38"), cat("s3_8_39"), depth=1)
    assert v.status is Status.YES


def test_equivalence_unknown_within_depth(cat):
    assert bistellar_equivalent(cat("torus_7"), cat("torus_7"), depth=0)
    v = bistellar_equivalent(cat("s3_8_35"), cat("s3_8_38"), depth=0)
    assert v.status is Status.UNKNOWN


def test_standard_sphere_has_no_proper_moves():
    for d in range(1, 5):
        assert proper_moves(standard_sphere(d)) == []


def test_l3_12_locally_minimal(cat):
    assert proper_moves(cat("l3_12")) == []
    v = reduce_to_sphere(cat("l3_12"))
    assert v.status is Status.UNKNOWN and "locally minimal" in v.detail


@pytest.mark.parametrize("name", ["torus_7", "s3_8_38", "cp2_9"])
def test_apply_reverse_round_trip(cat, name):
    K = cat(name)
    for m in valid_moves(K)[:40]:
        L = apply_move(K, m)
        assert apply_move(L, m.reverse(K.dim)).facets == K.facets


def brute_delta(K, L):
    a, b = f_vector(K).counts, f_vector(L).counts
    return tuple(y - x for x, y in zip(a, b))


@pytest.mark.parametrize("name", ["torus_7", "s3_8_38", "cp2_9"])
def test_f_delta_against_brute_force(cat, name):
    K = cat(name)
    for m in valid_moves(K, include_zero=True)[:60]:
        assert f_delta(K.dim, m.k) == brute_delta(K, apply_move(K, m))


def test_f_delta_symmetric():
    for d in range(1, 6):
        for k in range(d + 1):
            assert all(x == -y for x, y in zip(f_delta(d, k), f_delta(d, d - k)))


def test_flip_state_matches_complex(cat):
    K = cat("s3_8_38")
    st = FlipState(K)
    for m in st.moves()[:10]:
        st2 = FlipState(K)
        st2.apply(m)
        assert frozenset(st2.facets) == apply_move(K, m).facets
        assert st2.fvector() == f_vector(apply_move(K, m)).counts


def test_flip_state_star_facet(tetra):
    st = FlipState(tetra)
    st.star_facet(sorted(tetra.facets)[0])
    assert st.fvector() == (5, 9, 6)
    assert any(m.k == 2 for m in st.moves())


def test_invalid_moves_raise(octahedron_s1):
    S = octahedron_s1
    with pytest.raises(ComplexError, match="b present"):
        apply_move(S, Move(S.simplex("13"), S.simplex("45"), 1))
    with pytest.raises(ComplexError, match="dimensions"):
        apply_move(S, Move(S.simplex("36"), S.simplex("1"), 1))
    with pytest.raises(ComplexError, match="link mismatch"):
        apply_move(S, Move(S.simplex("3"), S.simplex("456"), 2))


def test_valid_moves_need_pseudomanifold():
    with pytest.raises(ComplexError):
        valid_moves(from_facets(compact("123 124 125")))


def test_reduce_returns_replayable_trace(cat):
    v = reduce_to_sphere(cat("s3_8_37"), seed=3)
    assert v
    trace = v.certificate
    assert trace.replay().n == 5
    rows = [json.loads(x) for x in trace.json_lines().splitlines()]
    assert len(rows) == len(trace) and rows[-1]["f"][0] == 5
    assert all(set(r) == {"step", "a", "b", "k", "f"} for r in rows)


def test_reduce_seeded_determinism(cat):
    a = reduce_to_sphere(cat("s3_8_36"), seed=9).certificate.moves
    b = reduce_to_sphere(cat("s3_8_36"), seed=9).certificate.moves
    assert a == b


def test_reduce_stacked_spheres():
    for seed in range(3):
        S = stacked_sphere(12, 3, seed=seed)
        assert reduce_to_sphere(S, seed=seed)


def test_reduce_non_pseudomanifold():
    v = reduce_to_sphere(from_facets(compact("123 124 125")))
    assert v.status is Status.UNKNOWN


def test_flip_graph_of_6_vertex_2_spheres(octahedron_s1):
    # the two 6-vertex 2-spheres are one flip apart
    comp = flip_graph_component(octahedron_s1)
    assert len(comp) == 2


def test_move_describe(octahedron_s1):
    m = Move(octahedron_s1.simplex("36"), octahedron_s1.simplex("12"), 1)
    assert m.describe(octahedron_s1).startswith("kappa(36, 12)")


def test_zero_moves_listed_once_per_facet(tetra):
    zs = [m for m in valid_moves(tetra, include_zero=True) if m.k == 0]
    assert len(zs) == 4 and all(len(m.a) == 3 for m in zs)
    assert len({m.b for m in zs}) == 1
