import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagsemi.algebra import gf_build
from diagsemi.constructions import arc_to_mods, nrc_arc, paper_example_8x8
from diagsemi.designs import (
    Embedding,
    OrthogonalArray,
    bounds_from_mods,
    embedding_matrix,
    known_bounds,
    mods_build,
    mods_regular_analyze,
    mods_verify,
    mols_from_oa,
    oa_failing_subset,
    oa_from_mods,
    oa_from_mols,
    oa_verify,
)
from diagsemi.errors import BadEmbedding
from diagsemi.groups import AbelianSpec, build_table, compose, cyclic_table, dihedral_table, multiplier
from diagsemi.latin import LatinSquare, MolsSet
from diagsemi.partitions import Partition, diagonal_semilattice, is_cartesian, is_cartesian_frame

C5 = AbelianSpec((5,))
C3 = AbelianSpec((3,))


def coords(m):
    return [Embedding.coordinate(i) for i in range(m)]


def scalar_diag(spec, *ks):
    return Embedding.diagonal([multiplier(spec, k) for k in ks])


def test_coordinate_only_system():
    sys = mods_build(C5, 3, coords(3))
    assert sys.r == 0
    assert mods_verify(sys).ok
    oa = oa_from_mods(sys)
    assert oa.runs == 125 and oa_verify(oa)
    # the full factorial
    assert sorted(oa.rows) == sorted(itertools.product(range(5), repeat=3))


@pytest.mark.parametrize("group", [cyclic_table(2), cyclic_table(3), dihedral_table(3)])
def test_semilattice_as_system(group):
    ident = list(range(group.order))
    sys = mods_build(group, 3, coords(3) + [Embedding.diagonal([ident, ident])])
    assert sys.partitions.members == diagonal_semilattice(group, 3).members
    rep = mods_verify(sys)
    assert rep.ok and rep.checked == 4


def test_duplicate_embedding_fails():
    sys = mods_build(C5, 3, coords(3) + [scalar_diag(C5, 2, 3), scalar_diag(C5, 2, 3)])
    rep = mods_verify(sys)
    assert not rep.ok
    assert {3, 4} <= set(rep.failing_subset)


def test_bad_embeddings():
    with pytest.raises(BadEmbedding):
        mods_build(C5, 2, [Embedding.from_matrix([[0], [0]])])  # not injective
    with pytest.raises(BadEmbedding):
        mods_build(C5, 2, [Embedding.diagonal([[0, 2, 1, 3, 4]])])  # not a homomorphism
    with pytest.raises(BadEmbedding):
        mods_build(C5, 2, [Embedding.coordinate(2)])
    with pytest.raises(BadEmbedding):
        mods_build(dihedral_table(3), 2, [Embedding.from_matrix([[1], [0]])])


def test_arc_system_and_analysis():
    sys = arc_to_mods(nrc_arc(gf_build(5), 3))
    assert sys.r == 3 and mods_verify(sys).ok
    ra = mods_regular_analyze(sys)
    assert ra.ok and len(ra.entries) == 15
    for e in ra.entries:
        assert e.abelian and e.group_name == "C5"
        a, b, c = e.triple
        assert compose(a, b, c).perm == tuple(range(5))
    assert bounds_from_mods(sys).lines()[0] == "T(3,Z5) >= 3 [constructed]"


def test_analysis_automorphisms_are_multipliers():
    sys = arc_to_mods(nrc_arc(gf_build(5), 3))
    mults = {multiplier(C5, k).perm for k in range(1, 5)}
    for e in mods_regular_analyze(sys).entries:
        assert all(a.perm in mults for a in e.automorphisms)


def test_analysis_skips_small_systems():
    ident = list(range(5))
    sys = mods_build(C5, 3, coords(3) + [Embedding.diagonal([ident, ident])])
    assert mods_regular_analyze(sys).skipped
    sys2 = mods_build(C5, 2, coords(2) + [scalar_diag(C5, 1), scalar_diag(C5, 2)])
    assert mods_regular_analyze(sys2).skipped


def test_c3_cannot_have_r2():
    # every attempted m = 3, r = 2 system over C3 exposes a fixed point
    one, neg = multiplier(C3, 1), multiplier(C3, 2)
    for a, b in itertools.product([one, neg], repeat=2):
        sys = mods_build(C3, 3, coords(3) + [scalar_diag(C3, 1, 1), Embedding.diagonal([a, b])])
        assert not mods_verify(sys).ok
        ra = mods_regular_analyze(sys)
        assert not ra.ok
        assert any(e.frame_ok and not all(e.pair_fpf.values()) for e in ra.entries)


def test_nonabelian_analysis_flags_group():
    g = dihedral_table(3)
    ident = list(range(6))
    sys = mods_build(g, 3, coords(3) + [Embedding.diagonal([ident, ident])] * 2)
    ra = mods_regular_analyze(sys)
    assert not ra.ok and not any(e.abelian for e in ra.entries)


def test_embedding_matrix_round_trip():
    sys = arc_to_mods(nrc_arc(gf_build(5), 3))
    for k, emb in enumerate(sys.embeddings):
        assert tuple(map(tuple, embedding_matrix(sys, k))) == emb.matrix


# --- orthogonal arrays --------------------------------------------------------

def test_oa_nrc_strength_three():
    oa = oa_from_mods(arc_to_mods(nrc_arc(gf_build(5), 3)))
    assert (oa.runs, oa.factors, oa.levels, oa.strength) == (125, 6, 5, 3)
    assert oa_verify(oa)


def test_oa_full_factorial_and_corruption():
    oa = OrthogonalArray(4, 2, 2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    assert oa_verify(oa)
    bad = OrthogonalArray(4, 2, 2, 2, ((0, 0), (0, 1), (1, 0), (0, 0)))
    assert not oa_verify(bad) and oa_failing_subset(bad) == (0, 1)


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_oa_corrupting_one_entry_breaks_it(data):
    oa = oa_from_mods(arc_to_mods(nrc_arc(gf_build(5), 3)))
    i = data.draw(st.integers(0, oa.runs - 1))
    j = data.draw(st.integers(0, oa.factors - 1))
    delta = data.draw(st.integers(1, 4))
    rows = [list(r) for r in oa.rows]
    rows[i][j] = (rows[i][j] + delta) % 5
    assert not oa_verify(OrthogonalArray(oa.runs, oa.factors, 5, 3, tuple(map(tuple, rows))))


def test_oa_shape_errors():
    with pytest.raises(ValueError):
        OrthogonalArray(3, 2, 2, 2, ((0, 0), (0, 1), (1, 0)))
    with pytest.raises(ValueError):
        OrthogonalArray(4, 2, 2, 2, ((0, 0), (0, 1), (1, 0), (1, 2)))


def test_oa_from_cayley_table():
    sq = LatinSquare.from_group(cyclic_table(3))
    ms = mols_from_oa(oa_from_mols(MolsSet(3, (sq,))))
    assert ms.squares == (sq,)


def test_oa_from_8x8_pair():
    a, b = paper_example_8x8()
    oa = oa_from_mols(MolsSet(8, (a, b)))
    assert (oa.runs, oa.factors, oa.levels, oa.strength) == (64, 4, 8, 2)
    assert oa_verify(oa)


def test_mols_round_trip_q5():
    sys = arc_to_mods(nrc_arc(gf_build(5), 2))
    ms = mols_from_oa(oa_from_mods(sys))
    assert len(ms) == 4
    assert mols_from_oa(oa_from_mols(ms)) == ms


def test_dual_partitions_are_maximal_elements():
    # each m-subset of OA columns, read as partitions, forms a Cartesian frame
    oa = oa_from_mods(arc_to_mods(nrc_arc(gf_build(3), 3)))
    cols = [Partition(oa.column(j)) for j in range(oa.factors)]
    for sub in itertools.combinations(cols, 3):
        assert is_cartesian_frame(sub)


def test_known_bounds():
    assert "t(2,7) <= 6 [known]" in known_bounds(2, 7)
    assert any("t_g(2,6) = 1" in line for line in known_bounds(2, 6))
    assert known_bounds(3, 5) == []


def test_parallel_verify_matches_serial():
    sys = arc_to_mods(nrc_arc(gf_build(5), 3))
    assert mods_verify(sys, jobs=2) == mods_verify(sys)
    oa = oa_from_mods(sys)
    assert oa_verify(oa, jobs=2)


def test_is_cartesian_on_arc_partitions_independent_route():
    # any m of the subgroups generate their direct product
    sys = arc_to_mods(nrc_arc(gf_build(3), 3))
    power = sys.power
    for sub in itertools.combinations(range(len(sys.subgroups)), 3):
        seen = set()
        for combo in itertools.product(*(sys.subgroups[i] for i in sub)):
            x = combo[0]
            for y in combo[1:]:
                x = power.op(x, y)
            seen.add(x)
        assert len(seen) == power.order
        assert is_cartesian([sys.partitions.members[i] for i in sub])


def test_build_from_group_table():
    sys = mods_build(build_table(C5), 2, coords(2), spec=C5)
    assert sys.n == 5 and mods_verify(sys).ok
