"""Explicit constructions: Frobenius-group MOGS with isotopism witnesses,
arcs from the normal rational curve and its Galois-ring lift, arcs as MODS,
and the 8x8 pair of MOLS whose four groups are not all isomorphic."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import GaloisField, GaloisRing, _QuotientRing, gr_matrix_is_unimodular
from .designs import Embedding, ModsSystem, OrthogonalArray, mods_build
from .errors import NotFixedPointFree
from .groups import AbelianSpec, Automorphism, GroupTable, compose, is_automorphism, multiplier
from .latin import Isotopism, LatinSquare, MolsSet

# ---------------------------------------------------------------------------
# Frobenius groups with abelian kernel


@dataclass(frozen=True)
class FrobeniusData:
    """Abelian kernel N with a complement H given as automorphisms of N.
    Any two distinct h, k must differ by a fixed-point-free automorphism."""

    kernel: GroupTable
    complement: tuple[Automorphism, ...]

    def __post_init__(self) -> None:
        n = self.kernel
        comp = tuple(self.complement)
        object.__setattr__(self, "complement", comp)
        if not n.is_abelian():
            raise ValueError("the kernel must be abelian")
        perms = {a.perm for a in comp}
        if len(perms) != len(comp):
            raise ValueError("complement has repeated elements")
        if tuple(range(n.order)) not in perms:
            raise ValueError("complement must contain the identity")
        for a in comp:
            if not is_automorphism(a.perm, n):
                raise ValueError("complement element is not an automorphism")
        for a, b in itertools.product(comp, repeat=2):
            if a.then(b).perm not in perms:
                raise ValueError("complement is not closed under composition")
        for a, b in itertools.permutations(comp, 2):
            if compose(b.inverse(), a).fixed_points() != [n.identity]:
                raise NotFixedPointFree("complement elements differ by an automorphism with fixed points")


def cyclic_complement(spec: AbelianSpec, a: int) -> tuple[Automorphism, ...]:
    """Powers 1, a, a^2, ... of the multiplier ``x -> a x``."""
    out = [Automorphism.identity(spec.order)]
    step = multiplier(spec, a)
    while True:
        nxt = out[-1].then(step)
        if nxt.perm == out[0].perm:
            return tuple(out)
        out.append(nxt)
        if len(out) > spec.order:
            raise ValueError(f"multiplier {a} is not invertible")


def frobenius_mogs(fd: FrobeniusData) -> MolsSet:
    """Squares ``L_h(x, y) = x * h(y)``, one per complement element."""
    n = fd.kernel
    squares = []
    for h in fd.complement:
        squares.append(LatinSquare(tuple(tuple(n.op(x, h(y)) for y in range(n.order))
                                         for x in range(n.order))))
    return MolsSet(n.order, tuple(squares))


def zeta(n: GroupTable, h: Automorphism, x: int) -> int:
    """``x^-1 h(x)``."""
    return n.op(n.inv[x], h(x))


def zeta_map(n: GroupTable, h: Automorphism) -> Automorphism:
    """zeta_h as a permutation; raises NotFixedPointFree if it is not one."""
    img = tuple(zeta(n, h, x) for x in range(n.order))
    if len(set(img)) != n.order:
        raise NotFixedPointFree("zeta_h is not injective")
    return Automorphism(img)


def eta(n: GroupTable, h: Automorphism, x: int) -> int:
    """Inverse of zeta_h."""
    return zeta_map(n, h).inverse()(x)


def eta_map(n: GroupTable, h: Automorphism) -> Automorphism:
    return zeta_map(n, h).inverse()


def _check_case(fd: FrobeniusData, case: int, h: Automorphism, k: Automorphism | None) -> None:
    perms = {a.perm for a in fd.complement}
    ident = tuple(range(fd.kernel.order))
    if h.perm not in perms or (k is not None and k.perm not in perms):
        raise ValueError("h and k must lie in the complement")
    if case == 2:
        if k is None:
            raise ValueError("case 2 needs k")
        if h.perm == ident or k.perm in (ident, h.perm):
            raise ValueError("case 2 needs h, k and the identity pairwise distinct")


def recoordinatized_square(fd: FrobeniusData, case: int, h: Automorphism,
                           k: Automorphism | None = None) -> LatinSquare:
    """The square read off new rows and columns.

    Case 1: rows x, columns z = xy, entries ``x h(y)``.
    Case 2: rows u = xy, columns v = x h(y), entries w = x k(y).
    """
    _check_case(fd, case, h, k)
    n = fd.kernel
    cells = [[-1] * n.order for _ in range(n.order)]
    for x in range(n.order):
        for y in range(n.order):
            if case == 1:
                cells[x][n.op(x, y)] = n.op(x, h(y))
            elif case == 2:
                cells[n.op(x, y)][n.op(x, h(y))] = n.op(x, k(y))
            else:
                raise ValueError("case must be 1 or 2")
    return LatinSquare(tuple(tuple(r) for r in cells))


def isotopism_witness(fd: FrobeniusData, case: int, h: Automorphism,
                      k: Automorphism | None = None) -> Isotopism:
    """Row and column maps (phi, chi) with identity symbol map such that the
    re-coordinatised square has entry ``phi(u) chi(v)`` in cell (u, v).

    Case 1: ``phi(x) = zeta_h(x^-1)``, ``chi(z) = h(z)``.
    Case 2: ``phi(u) = eta_{h^-1}(u^-1) k(eta_h(u^-1))`` and
    ``chi(v) = eta_{h^-1}(h^-1(v)) k(eta_h(v))``.
    """
    _check_case(fd, case, h, k)
    n = fd.kernel
    inv = n.inv
    ident = tuple(range(n.order))
    if case == 1:
        z = zeta_map(n, h)
        phi = tuple(z(inv[x]) for x in range(n.order))
        chi = h.perm
    elif case == 2:
        h_inv = h.inverse()
        e_h, e_hinv = eta_map(n, h), eta_map(n, h_inv)
        phi = tuple(n.op(e_hinv(inv[u]), k(e_h(inv[u]))) for u in range(n.order))
        chi = tuple(n.op(e_hinv(h_inv(v)), k(e_h(v))) for v in range(n.order))
    else:
        raise ValueError("case must be 1 or 2")
    return Isotopism(phi, chi, ident)


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class Arc:
    ring: _QuotientRing
    m: int
    vectors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def failing_subset(self) -> tuple[int, ...] | None:
        """First m-subset (lexicographic) that is not a basis."""
        for sub in itertools.combinations(range(len(self.vectors)), self.m):
            if not gr_matrix_is_unimodular(self.ring, [self.vectors[i] for i in sub]):
                return sub
        return None

    def reduce(self) -> "Arc":
        """Reduction modulo p (fields reduce to themselves)."""
        if not isinstance(self.ring, GaloisRing):
            return self
        red = self.ring.reduce
        return Arc(self.ring.residue_field, self.m, tuple(tuple(red(x) for x in v) for v in self.vectors))


def _checked(arc: Arc) -> Arc:
    bad = arc.failing_subset()
    if bad is not None:
        raise ArithmeticError(f"vectors {bad} are not a basis")
    return arc


def _moment_vectors(ring: _QuotientRing, points: Sequence[int], m: int) -> tuple[tuple[int, ...], ...]:
    vecs = [tuple(ring.pow(a, i) if i else ring.one for i in range(m)) for a in points]
    vecs.append(tuple([0] * (m - 1) + [ring.one]))
    return tuple(vecs)


def nrc_arc(field: GaloisField, m: int) -> Arc:
    """``(1, a, ..., a^(m-1))`` for every field element a, in element order,
    then ``(0, ..., 0, 1)``."""
    if not 1 <= m <= field.q + 1:
        raise ValueError("need 1 <= m <= q + 1")
    return _checked(Arc(field, m, _moment_vectors(field, list(field.elements()), m)))


def lifted_arc(ring: GaloisRing, m: int) -> Arc:
    """The normal rational curve over the Teichmuller set of GR(p^e, d)."""
    if not 1 <= m <= ring.q + 1:
        raise ValueError("need 1 <= m <= q + 1")
    return _checked(Arc(ring, m, _moment_vectors(ring, list(ring.teichmuller), m)))


def arc_embedding(arc: Arc, v: Sequence[int]) -> Embedding:
    """``g -> (v_1 g, ..., v_m g)`` in coefficient coordinates of the
    additive group, as an (m*d) x d matrix."""
    rows = []
    for x in v:
        rows.extend(arc.ring.multiplication_matrix(x))
    return Embedding.from_matrix(rows)


def arc_to_mods(arc: Arc, cap: int | None = None) -> ModsSystem:
    spec = arc.ring.additive_spec()
    embs = [arc_embedding(arc, v) for v in arc.vectors]
    if cap is None:
        return mods_build(spec, arc.m, embs)
    return mods_build(spec, arc.m, embs, cap=cap)


def character_oa(field: GaloisField, vectors: Sequence[Sequence[int]]) -> OrthogonalArray:
    """One run per g in GF(p)^m, factor i taking the value ``v_i . g``.
    Prime fields only; for the vectors of an arc this is an index-1 array
    of strength m."""
    if field.d != 1:
        raise ValueError("character arrays are built over prime fields")
    p = field.p
    m = len(vectors[0])
    rows = []
    for g in itertools.product(range(p), repeat=m):
        rows.append(tuple(sum(a * b for a, b in zip(v, g)) % p for v in vectors))
    return OrthogonalArray(len(rows), len(vectors), p, m, tuple(rows))


EXAMPLE_OA_VECTORS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1), (1, 2, 3, 4))


# ---------------------------------------------------------------------------
# the 8x8 example

_EXAMPLE_8 = """\
11 22 33 44 55 66 77 88
42 34 21 13 86 78 65 57
53 61 74 82 17 25 38 46
84 73 62 51 48 37 26 15
35 47 16 28 71 83 52 64
76 85 58 67 32 41 14 23
27 18 45 36 63 54 81 72
68 56 87 75 24 12 43 31
"""


def paper_example_8x8() -> tuple[LatinSquare, LatinSquare]:
    """Two MOLS of order 8 (symbols shifted to 0..7) whose groups, omitting
    rows, columns, first and second letters in turn, are D8, C2xC4, D8 and
    C2xC2xC2."""
    cells = [line.split() for line in _EXAMPLE_8.splitlines()]
    first = LatinSquare(tuple(tuple(int(c[0]) - 1 for c in row) for row in cells))
    second = LatinSquare(tuple(tuple(int(c[1]) - 1 for c in row) for row in cells))
    return first, second
