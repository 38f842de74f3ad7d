"""Acceptance suite: one test per criterion, each timed against its limit.

Every test records a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line; conftest.py prints them together at the end of the pytest run.
"""

import itertools
import sys
import time

import pytest

from diagsemi.algebra import gf_build, gr_build
from diagsemi.constructions import (
    EXAMPLE_OA_VECTORS,
    Arc,
    FrobeniusData,
    arc_to_mods,
    character_oa,
    cyclic_complement,
    frobenius_mogs,
    isotopism_witness,
    lifted_arc,
    nrc_arc,
    paper_example_8x8,
    recoordinatized_square,
)
from diagsemi.designs import (
    bounds_from_mods,
    mods_regular_analyze,
    mods_verify,
    oa_from_mods,
    oa_verify,
)
from diagsemi.groups import (
    AbelianSpec,
    abelian_automorphism_count,
    abelian_specs_of_order,
    build_table,
    compose,
    cyclic_table,
    fpf_triple_bruteforce,
    fpf_triple_exists,
    fpf_triple_witness,
    is_fixed_point_free,
    verify_abelian_automorphism,
)
from diagsemi.latin import (
    LatinSquare,
    MolsSet,
    apply_isotopism,
    are_orthogonal,
    group_profile,
    is_group_isotopic,
    iter_reduced_squares,
    quadrangle_criterion,
)
from diagsemi.partitions import (
    diagonal_group_generators,
    diagonal_semilattice,
    generated_group_order,
    partition_set_stabilizer,
)


RESULTS: list[str] = []


class Criterion:
    """Times a block, records a pass/fail line, and asserts both outcome and limit."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        if exc_type is not None:
            why = f"{exc_type.__name__}: {exc}".strip()
        elif not ok:
            why = f"over time limit {self.limit:g}s"
        else:
            why = self.detail
        line = f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title} ({elapsed:.2f}s / {self.limit:g}s)"
        if why:
            line += f" - {why}"
        RESULTS.append(line)
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {elapsed:.2f}s, limit {self.limit:g}s")
        return False


def test_criterion_1_eight_by_eight_profile():
    with Criterion(1, "8x8 pair profile", 1.0) as c:
        a, b = paper_example_8x8()
        assert are_orthogonal(a, b)
        prof = group_profile(MolsSet(8, (a, b)).partitions())
        assert prof == {(0, 1, 2): "C2×C2×C2", (0, 1, 3): "D8", (0, 2, 3): "C2×C4", (1, 2, 3): "D8"}
        c.detail = ", ".join(prof.values())


def test_criterion_2_frobenius_c5():
    with Criterion(2, "Frobenius C5 with multiplier 2", 1.0) as c:
        spec = AbelianSpec((5,))
        fd = FrobeniusData(build_table(spec), cyclic_complement(spec, 2))
        ms = frobenius_mogs(fd)
        assert len(ms) == 4
        assert all(are_orthogonal(x, y) for x, y in itertools.combinations(ms.squares, 2))
        prof = group_profile(ms.partitions())
        assert len(prof) == 20 and set(prof.values()) == {"C5"}
        cay = LatinSquare.from_group(fd.kernel)
        ident = tuple(range(5))
        nontrivial = [h for h in fd.complement if h.perm != ident]
        case1 = case2 = 0
        for h in nontrivial:
            assert apply_isotopism(recoordinatized_square(fd, 1, h), isotopism_witness(fd, 1, h)) == cay
            case1 += 1
            for k in nontrivial:
                if k.perm == h.perm:
                    continue
                sq = recoordinatized_square(fd, 2, h, k)
                assert apply_isotopism(sq, isotopism_witness(fd, 2, h, k)) == cay
                case2 += 1
        assert (case1, case2) == (3, 6)
        c.detail = f"4 MOLS, 20 triples C5, {case1} + {case2} witnesses"


def test_criterion_3_nrc_q5_m3():
    with Criterion(3, "normal rational curve arc over GF(5), m = 3", 2.0) as c:
        f = gf_build(5)
        arc = nrc_arc(f, 3)
        assert len(arc) == 6
        triples = list(itertools.combinations(range(6), 3))
        assert len(triples) == 20
        assert all(f.det([arc.vectors[i] for i in t]) != 0 for t in triples)
        sys_ = arc_to_mods(arc)
        assert mods_verify(sys_).ok
        ra = mods_regular_analyze(sys_)
        assert ra.ok and not ra.skipped and len(ra.entries) == 15
        line = bounds_from_mods(sys_).lines()[0]
        assert line == "T(3,Z5) >= 3 [constructed]"
        c.detail = line


def test_criterion_4_lifted_gr42():
    with Criterion(4, "lifted arc over GR(4,2), m = 3", 10.0) as c:
        ring = gr_build(2, 2, 2)
        arc = lifted_arc(ring, 3)
        assert len(arc) == 5 and arc.failing_subset() is None
        sys_ = arc_to_mods(arc)
        assert sys_.power.order == 4096
        rep = mods_verify(sys_)
        assert rep.ok and rep.checked == 10
        assert arc.reduce().vectors == nrc_arc(gf_build(2, 2), 3).vectors
        c.detail = "10 triples Cartesian on 4096 points, reduces to GF(4) arc"


def test_criterion_5_orthogonal_arrays():
    with Criterion(5, "OA(625,6,5,4) by two routes, OA strength 3 from GF(5)", 10.0) as c:
        f = gf_build(5)
        arc = Arc(f, 4, EXAMPLE_OA_VECTORS)
        direct = character_oa(f, EXAMPLE_OA_VECTORS)
        assert (direct.runs, direct.factors, direct.levels, direct.strength) == (625, 6, 5, 4)
        assert oa_verify(direct)
        via_mods = oa_from_mods(arc_to_mods(arc))
        assert via_mods == direct
        oa3 = oa_from_mods(arc_to_mods(nrc_arc(f, 3)))
        assert (oa3.runs, oa3.strength) == (125, 3) and oa_verify(oa3)
        c.detail = "character route equals dual route"


def test_criterion_6_fpf_classifier_vs_bruteforce():
    with Criterion(6, "fpf classifier vs brute force, abelian order <= 100", 60.0) as c:
        checked = yes = 0
        for n in range(1, 101):
            for spec in abelian_specs_of_order(n):
                if abelian_automorphism_count(spec) > 2000:
                    continue
                g = build_table(spec)
                brute = fpf_triple_bruteforce(g, aut_cap=2000)
                assert (brute is not None) == fpf_triple_exists(spec), spec
                wit = fpf_triple_witness(spec)
                assert (wit is not None) == (brute is not None), spec
                if wit is not None:
                    yes += 1
                    assert compose(*wit).perm == tuple(range(g.order))
                    for a in wit:
                        assert verify_abelian_automorphism(a, spec)
                        assert is_fixed_point_free(a, g)
                checked += 1
        c.detail = f"{checked} groups, {yes} admit a triple"


@pytest.mark.parametrize("m", [2, 3])
def test_criterion_7_diagonal_group_order(m):
    with Criterion(7, f"diagonal group equals stabilizer, C2, m = {m}", 30.0) as c:
        g = cyclic_table(2)
        order = generated_group_order(diagonal_group_generators(g, m))
        stab = partition_set_stabilizer(diagonal_semilattice(g, m))
        assert order == len(stab)
        c.detail = f"order {order}"


def test_criterion_8_reduced_squares():
    with Criterion(8, "group-isotopy oracles agree on reduced squares of order <= 5", 30.0) as c:
        total = non_group = 0
        for n in range(1, 6):
            for sq in iter_reduced_squares(n):
                grp = is_group_isotopic(sq) is not None
                assert grp == quadrangle_criterion(sq)
                total += 1
                non_group += n == 5 and not grp
        assert non_group >= 1
        c.detail = f"{total} squares, {non_group} non-group of order 5"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
