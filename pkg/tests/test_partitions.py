import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagsemi.errors import CapExceeded
from diagsemi.groups import cyclic_table, dihedral_table
from diagsemi.latin import from_partitions, grid_partitions, square_group_name
from diagsemi.partitions import (
    DirectPower,
    Partition,
    PartitionSet,
    coset_partition,
    diagonal_group_generators,
    diagonal_semilattice,
    generated_group_order,
    is_cartesian,
    is_cartesian_frame,
    is_cartesian_lattice_exhaustive,
    join,
    join_all,
    meet,
    partition_set_stabilizer,
)


def pair_of_partitions(n):
    lab = st.lists(st.integers(0, 3), min_size=n, max_size=n).map(lambda xs: Partition(tuple(xs)))
    return st.tuples(lab, lab, lab)


@given(st.integers(1, 8).flatmap(pair_of_partitions))
@settings(max_examples=80, deadline=None)
def test_lattice_laws(ps):
    p, q, r = ps
    assert join(p, p) == p and meet(p, p) == p
    assert join(p, q) == join(q, p) and meet(p, q) == meet(q, p)
    assert join(join(p, q), r) == join(p, join(q, r))
    assert join(p, meet(p, q)) == p and meet(p, join(p, q)) == p
    assert p.refines(join(p, q)) and meet(p, q).refines(p)


def test_partition_normalisation_and_parts():
    p = Partition((5, 5, 2, 7, 2))
    assert p.labels == (0, 0, 1, 2, 1)
    assert p.parts() == [[0, 1], [2, 4], [3]]
    assert Partition.from_parts(5, [[3], [0, 1], [2, 4]]) == p
    with pytest.raises(ValueError):
        Partition.from_parts(3, [[0, 1], [1, 2]])


def test_grid_join_is_universal():
    rows, cols = grid_partitions(4)
    assert join(rows, cols).is_universal()
    assert meet(rows, cols).is_discrete()


def test_boolean_lattice_join_of_two_coordinates():
    # A^3 with |A| = 2: joining the first two coordinate partitions identifies
    # points agreeing in the third coordinate
    g = cyclic_table(2)
    power = DirectPower(g, 3)
    q = [coset_partition(power, power.coordinate_subgroup(i)) for i in range(3)]
    q12 = Partition(tuple(power.coords(x)[2] for x in range(8)))
    assert join(q[0], q[1]) == q12


def test_cartesian_examples():
    rows, cols = grid_partitions(3)
    assert is_cartesian([rows, cols])
    assert not is_cartesian([rows, rows])
    ps = diagonal_semilattice(cyclic_table(2), 3)
    assert is_cartesian(ps.members[:3])
    for sub in itertools.combinations(ps.members, 3):
        assert is_cartesian(sub)
        assert is_cartesian_lattice_exhaustive(sub)


def test_minimal_vs_maximal_conventions():
    # coordinate coset partitions are the minimal elements; the frame test
    # (maximal elements) fails on them for m >= 3 and holds on their hyperplanes
    ps = diagonal_semilattice(cyclic_table(3), 3)
    q = ps.members[:3]
    assert is_cartesian(q)
    assert not is_cartesian_frame(q)
    hyper = [join_all([p for j, p in enumerate(q) if j != i]) for i in range(3)]
    assert is_cartesian_frame(hyper)


def test_cartesian_rejects_dependent_subgroups():
    # Z3^2 embedded twice in Z3^3 along dependent directions
    g = cyclic_table(3)
    power = DirectPower(g, 3)
    def line(v):
        return [power.point([(k * x) % 3 for x in v]) for k in range(3)]
    parts = [coset_partition(power, line(v)) for v in [(1, 0, 0), (0, 1, 0), (1, 1, 0)]]
    assert not is_cartesian(parts)
    assert not is_cartesian_lattice_exhaustive(parts)


def _subgroup_oracle(power, subs):
    """Independent check for coset partitions of subgroups: the product map
    H_1 x ... x H_m -> G^m is a bijection."""
    n = power.order
    seen = set()
    for combo in itertools.product(*subs):
        x = combo[0]
        for y in combo[1:]:
            x = power.op(x, y)
        seen.add(x)
    return len(seen) == n


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_cartesian_matches_subgroup_oracle(vectors):
    if any(v == (0, 0, 0) for v in vectors):
        return
    g = cyclic_table(3)
    power = DirectPower(g, 3)
    subs = [[power.point([(k * x) % 3 for x in v]) for k in range(3)] for v in vectors]
    if len({tuple(sorted(s)) for s in subs}) < 3:
        return
    parts = [coset_partition(power, s) for s in subs]
    expected = _subgroup_oracle(power, subs)
    assert is_cartesian(parts) == expected
    assert is_cartesian_lattice_exhaustive(parts) == expected


def test_coset_partition_examples():
    g = cyclic_table(4)
    assert coset_partition(g, range(4)).is_universal()
    assert coset_partition(g, [0]).is_discrete()
    power = DirectPower(cyclic_table(2), 2)
    diag = coset_partition(power, power.diagonal_subgroup())
    assert sorted(diag.parts()) == [[0, 3], [1, 2]]
    with pytest.raises(ValueError):
        coset_partition(g, [0, 1])


def test_right_cosets_in_nonabelian_power():
    g = dihedral_table(3)
    power = DirectPower(g, 2)
    part = coset_partition(power, power.diagonal_subgroup())
    for x in range(power.order):
        same = {power.op(h, x) for h in power.diagonal_subgroup()}
        assert {y for y in range(power.order) if part.labels[y] == part.labels[x]} == same


def test_diagonal_semilattice_m2_is_cayley_table():
    for n in (2, 3):
        g = cyclic_table(n)
        ps = diagonal_semilattice(g, 2)
        assert len(ps) == 3 and ps.size == n * n
        sq = from_partitions(*ps.members)
        assert square_group_name(sq) == f"C{n}"


def test_direct_power_cap():
    with pytest.raises(CapExceeded):
        DirectPower(cyclic_table(10), 7, cap=10**6)


def test_generators_basic():
    gens = diagonal_group_generators(cyclic_table(2), 2)
    assert all(sorted(p) == list(range(4)) for p in gens)
    assert tuple(range(4)) not in gens


def test_last_generator_is_involution_in_abelian_case():
    g = cyclic_table(3)
    power = DirectPower(g, 2)
    def f(x):
        a, b = power.coords(x)
        ai = g.inv[a]
        return power.point([ai, g.op(ai, b)])
    assert all(f(f(x)) == x for x in range(power.order))


@pytest.mark.parametrize("m", [2, 3])
def test_diagonal_group_matches_stabilizer(m):
    g = cyclic_table(2)
    gens = diagonal_group_generators(g, m)
    stab = partition_set_stabilizer(diagonal_semilattice(g, m))
    assert generated_group_order(gens) == len(stab)
    # the generated group is contained in the stabilizer
    stab_set = set(stab)
    assert all(p in stab_set for p in gens)


def test_stabilizer_small_cases():
    assert len(partition_set_stabilizer([Partition.discrete(4)])) == 24
    rows, cols = grid_partitions(2)
    assert len(partition_set_stabilizer([rows, cols])) == 8
    with pytest.raises(CapExceeded):
        partition_set_stabilizer([Partition.discrete(13)])


def test_partition_set_size_check():
    with pytest.raises(ValueError):
        PartitionSet(3, (Partition((0, 1)),))
