"""Mutually orthogonal diagonal semilattices (MODS) built from subgroup
embeddings, their verification and regular-case analysis, and orthogonal
arrays of index 1."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadEmbedding, UnsupportedOrder
from .groups import (
    AbelianSpec,
    Automorphism,
    GroupTable,
    build_table,
    compose,
    format_group_spec,
    identify_group,
    is_automorphism,
    is_fixed_point_free,
    prime_power,
)
from .latin import LatinSquare, MolsSet
from .partitions import (
    DEFAULT_POINT_CAP,
    DirectPower,
    PartitionSet,
    coset_partition,
    is_cartesian,
)


@dataclass(frozen=True)
class Embedding:
    """An injective homomorphism G -> G^m.

    ``coord``: g goes to coordinate ``index``.  ``diag``: g goes to
    ``(g, a_2(g), ..., a_m(g))`` for automorphism permutations ``a_i``.
    ``mat``: for homocyclic G = (Z/p^e)^d, an (m*d) x d integer matrix acting
    on the coordinate vector of g.
    """

    kind: str
    index: int | None = None
    automorphisms: tuple[tuple[int, ...], ...] | None = None
    matrix: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def coordinate(cls, i: int) -> "Embedding":
        return cls("coord", index=i)

    @classmethod
    def diagonal(cls, automorphisms: Sequence[Automorphism | Sequence[int]]) -> "Embedding":
        perms = tuple(tuple(a.perm) if isinstance(a, Automorphism) else tuple(a) for a in automorphisms)
        return cls("diag", automorphisms=perms)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Embedding":
        return cls("mat", matrix=tuple(tuple(int(v) for v in row) for row in matrix))

    def images(self, group: GroupTable, m: int, spec: AbelianSpec | None = None) -> list[tuple[int, ...]]:
        """Coordinates in G^m of the image of each element of G."""
        n, e = group.order, group.identity
        if self.kind == "coord":
            if self.index is None or not 0 <= self.index < m:
                raise BadEmbedding(f"coordinate index {self.index} out of range")
            return [tuple(g if j == self.index else e for j in range(m)) for g in range(n)]
        if self.kind == "diag":
            auts = self.automorphisms or ()
            if len(auts) != m - 1 or any(len(a) != n for a in auts):
                raise BadEmbedding(f"diagonal needs {m - 1} permutations of {n} elements")
            return [(g,) + tuple(a[g] for a in auts) for g in range(n)]
        if self.kind == "mat":
            if spec is None or not spec.is_homocyclic or spec.order != n:
                raise BadEmbedding("matrix embeddings need a homocyclic abelian group")
            d = spec.rank
            mod = spec.cyclic_orders[0] if d else 1
            mat = self.matrix or ()
            if len(mat) != m * d or any(len(row) != d for row in mat):
                raise BadEmbedding(f"matrix must be {m * d} x {d}")
            out = []
            for g in range(n):
                v = spec.element(g)
                w = [sum(a * b for a, b in zip(row, v)) % mod for row in mat]
                out.append(tuple(spec.index(w[i * d:(i + 1) * d]) for i in range(m)))
            return out
        raise BadEmbedding(f"unknown embedding kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class ModsSystem:
    group: GroupTable
    spec: AbelianSpec | None
    m: int
    embeddings: tuple[Embedding, ...]
    power: DirectPower
    subgroups: tuple[tuple[int, ...], ...]  # subgroups[i][g] = point of the image of g
    partitions: PartitionSet

    @property
    def r(self) -> int:
        return len(self.embeddings) - self.m

    @property
    def n(self) -> int:
        return self.group.order


def mods_build(group: GroupTable | AbelianSpec, m: int, embeddings: Sequence[Embedding],
               spec: AbelianSpec | None = None, cap: int = DEFAULT_POINT_CAP) -> ModsSystem:
    """Coset partitions of G^m by the images of ``embeddings``.  The MODS
    property is *not* assumed; see :func:`mods_verify`."""
    if isinstance(group, AbelianSpec):
        spec, group = group, build_table(group)
    if m < 2:
        raise ValueError("m must be >= 2")
    power = DirectPower(group, m, cap)
    subgroups = []
    for k, emb in enumerate(embeddings):
        imgs = [power.point(c) for c in emb.images(group, m, spec)]
        if len(set(imgs)) != group.order:
            raise BadEmbedding(f"embedding {k} is not injective")
        for a in range(group.order):
            for b in range(group.order):
                if power.op(imgs[a], imgs[b]) != imgs[group.op(a, b)]:
                    raise BadEmbedding(f"embedding {k} is not a homomorphism")
        subgroups.append(tuple(imgs))
    parts = tuple(coset_partition(power, h) for h in subgroups)
    ps = PartitionSet(power.order, parts, {"m": m, "group_order": group.order})
    return ModsSystem(group, spec, m, tuple(embeddings), power, tuple(subgroups), ps)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failing_subset: tuple[int, ...] | None
    checked: int


def _cartesian_task(args):
    return is_cartesian(args)


def mods_verify(sys: ModsSystem, jobs: int = 1) -> VerifyReport:
    """Check every m-subset of the partitions; the first failure in
    lexicographic subset order is reported."""
    members = sys.partitions.members
    subsets = list(itertools.combinations(range(len(members)), sys.m))
    tasks = [[members[i] for i in s] for s in subsets]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cartesian_task, tasks))
    else:
        results = []
        for t in tasks:
            results.append(is_cartesian(t))
            if not results[-1]:
                break
    for s, ok in zip(subsets, results):
        if not ok:
            return VerifyReport(False, s, len(results))
    return VerifyReport(True, None, len(results))


# ---------------------------------------------------------------------------
# regular analysis


@dataclass
class SubsetAnalysis:
    """Analysis of one (m+1)-subset: its first m members as frame, its last
    member re-coordinatised to the standard diagonal, and ``probe`` (the
    first embedding outside the subset) written as ``(h, a_2(h), ..., a_m(h))``."""

    subset: tuple[int, ...]
    probe: int
    frame_ok: bool = False
    diagonal_ok: bool = False
    abelian: bool = False
    commute: bool = False
    automorphisms: list[Automorphism] = field(default_factory=list)
    pair_fpf: dict[tuple[int, int], bool] = field(default_factory=dict)
    triple: tuple[Automorphism, Automorphism, Automorphism] | None = None
    triple_ok: bool = False
    group_name: str | None = None

    @property
    def ok(self) -> bool:
        return (self.frame_ok and self.diagonal_ok and self.abelian and self.commute
                and all(self.pair_fpf.values()) and self.triple_ok)


@dataclass
class RegularAnalysis:
    entries: list[SubsetAnalysis]
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return self.skipped is None and all(e.ok for e in self.entries)


def _perm_inverse(p: Sequence[int]) -> list[int]:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return out


def _analyze_subset(sys: ModsSystem, subset: tuple[int, ...], probe: int) -> SubsetAnalysis:
    g, m, power = sys.group, sys.m, sys.power
    n = g.order
    res = SubsetAnalysis(subset, probe, abelian=g.is_abelian())
    try:
        res.group_name = identify_group(g)
    except UnsupportedOrder:
        res.group_name = None
    frame = [sys.subgroups[i] for i in subset[:m]]
    coords_of: dict[int, tuple[int, ...]] = {}
    for c in itertools.product(range(n), repeat=m):
        x = frame[0][c[0]]
        for i in range(1, m):
            x = power.op(x, frame[i][c[i]])
        coords_of[x] = c
    if len(coords_of) != power.order:
        return res
    res.frame_ok = True

    def frame_maps(sub: Sequence[int]) -> list[list[int]] | None:
        cs = [coords_of[sub[h]] for h in range(n)]
        maps = [[c[i] for c in cs] for i in range(m)]
        if any(not is_automorphism(mp, g) for mp in maps):
            return None
        return maps

    theta = frame_maps(sys.subgroups[subset[m]])
    if theta is None:
        return res
    res.diagonal_ok = True
    kappa = frame_maps(sys.subgroups[probe])
    if kappa is None:
        return res
    theta_inv = [_perm_inverse(t) for t in theta]
    # probe in the normalised frame, parametrised by its first coordinate
    kappa = [[theta_inv[i][kappa[i][h]] for h in range(n)] for i in range(m)]
    k1_inv = _perm_inverse(kappa[0])
    alphas = [Automorphism(tuple(kappa[i][k1_inv[h]] for h in range(n))) for i in range(m)]
    res.automorphisms = alphas[1:]
    d_sub, e_sub = sys.subgroups[subset[m]], sys.subgroups[probe]
    res.commute = all(power.op(x, y) == power.op(y, x) for x in d_sub for y in e_sub)
    for i, j in itertools.combinations(range(m), 2):
        res.pair_fpf[(i + 1, j + 1)] = is_fixed_point_free(compose(alphas[j], alphas[i].inverse()), g)
    alpha, beta = alphas[1], alphas[2]
    gamma = compose(beta, alpha.inverse())
    res.triple = (alpha, beta.inverse(), gamma)
    res.triple_ok = (compose(*res.triple).perm == tuple(range(n))
                     and all(is_fixed_point_free(a, g) for a in res.triple))
    return res


def mods_regular_analyze(sys: ModsSystem) -> RegularAnalysis:
    """For every (m+1)-subset, extract the diagonal automorphisms relative to
    the subset's frame and check the fixed-point-free conditions that any
    further embedding must satisfy.

    Within the normalised frame the probe is ``{(h, a_2 h, ..., a_m h)}`` and
    every ``a_i^-1 a_j`` (with ``a_1 = 1``) must be fixed-point-free.  The
    reported triple is ``(a_2, a_3^-1, a_3 a_2^-1)`` (right-action order),
    whose product is the identity.
    """
    if sys.m < 3:
        return RegularAnalysis([], skipped="needs m >= 3")
    if sys.r < 2:
        return RegularAnalysis([], skipped="needs r >= 2")
    k = len(sys.embeddings)
    entries = []
    for subset in itertools.combinations(range(k), sys.m + 1):
        probe = next(i for i in range(k) if i not in subset)
        entries.append(_analyze_subset(sys, subset, probe))
    return RegularAnalysis(entries)


# ---------------------------------------------------------------------------
# orthogonal arrays


@dataclass(frozen=True)
class OrthogonalArray:
    runs: int
    factors: int
    levels: int
    strength: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.runs:
            raise ValueError(f"expected {self.runs} rows, got {len(rows)}")
        if any(len(r) != self.factors for r in rows):
            raise ValueError(f"every row needs {self.factors} entries")
        if any(not 0 <= v < self.levels for r in rows for v in r):
            raise ValueError("entries must lie in 0..levels-1")
        if self.runs != self.levels ** self.strength:
            raise ValueError("index-1 arrays need runs == levels ** strength")

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)


def _oa_subset_ok(args) -> bool:
    cols, n_rows = args
    return len(set(zip(*cols))) == n_rows


def oa_failing_subset(oa: OrthogonalArray, jobs: int = 1) -> tuple[int, ...] | None:
    """First m-subset of columns (lexicographic) on which some m-tuple is
    missing or repeated."""
    cols = [oa.column(j) for j in range(oa.factors)]
    subsets = list(itertools.combinations(range(oa.factors), oa.strength))
    tasks = [([cols[j] for j in s], oa.runs) for s in subsets]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_oa_subset_ok, tasks))
    else:
        results = (_oa_subset_ok(t) for t in tasks)
    for s, ok in zip(subsets, results):
        if not ok:
            return s
    return None


def oa_verify(oa: OrthogonalArray, jobs: int = 1) -> bool:
    """Every m-tuple occurs exactly once in every m columns."""
    return oa_failing_subset(oa, jobs) is None


def embedding_matrix(sys: ModsSystem, k: int) -> list[list[int]]:
    """The (m*d) x d matrix over Z/p^e realising embedding ``k``, recovered from
    the images of the basis vectors and checked on every element."""
    spec = sys.spec
    if spec is None or not spec.is_homocyclic:
        raise BadEmbedding("matrix form needs a homocyclic abelian group")
    d, m = spec.rank, sys.m
    basis_imgs = []
    for j in range(d):
        v = [0] * d
        v[j] = 1
        pt = sys.subgroups[k][spec.index(v)]
        basis_imgs.append([c for coord in sys.power.coords(pt) for c in spec.element(coord)])
    mat = [[basis_imgs[j][i] for j in range(d)] for i in range(m * d)]
    check = Embedding.from_matrix(mat).images(sys.group, m, spec)
    if [sys.power.point(c) for c in check] != list(sys.subgroups[k]):
        raise BadEmbedding(f"embedding {k} is not linear")
    return mat


def oa_from_mods(sys: ModsSystem) -> OrthogonalArray:
    """Dual orthogonal array: one run per y in G^m, factor i taking the value
    ``M_i^T y`` where ``M_i`` is embedding i's matrix.  This is the
    restriction of the character indexed by y to the i-th subgroup."""
    spec = sys.spec
    if spec is None or not spec.is_homocyclic:
        raise BadEmbedding("the dual array needs a homocyclic abelian group")
    d, m = spec.rank, sys.m
    mod = spec.cyclic_orders[0] if d else 1
    mats = [embedding_matrix(sys, k) for k in range(len(sys.embeddings))]
    rows = []
    for pt in range(sys.power.order):
        y = [c for coord in sys.power.coords(pt) for c in spec.element(coord)]
        row = []
        for mat in mats:
            val = [sum(mat[i][j] * y[i] for i in range(m * d)) % mod for j in range(d)]
            row.append(spec.index(val))
        rows.append(tuple(row))
    return OrthogonalArray(len(rows), len(mats), sys.n, m, tuple(rows))


def oa_from_mols(ms: MolsSet) -> OrthogonalArray:
    """Runs ``(i, j, L_1[i][j], ..., L_r[i][j])`` in row-major cell order."""
    n = ms.n
    rows = tuple((i, j) + tuple(sq[i][j] for sq in ms.squares) for i in range(n) for j in range(n))
    return OrthogonalArray(n * n, 2 + len(ms.squares), n, 2, rows)


def mols_from_oa(oa: OrthogonalArray) -> MolsSet:
    """Columns 0 and 1 index rows and columns; each further column is a square."""
    if oa.strength != 2 or oa.factors < 3:
        raise ValueError("need a strength-2 array with at least 3 factors")
    if not oa_verify(oa):
        raise ValueError("array is not an OA of strength 2 and index 1")
    n = oa.levels
    squares = []
    for k in range(2, oa.factors):
        cells = [[0] * n for _ in range(n)]
        for row in oa.rows:
            cells[row[0]][row[1]] = row[k]
        squares.append(LatinSquare(tuple(tuple(r) for r in cells)))
    return MolsSet(n, tuple(squares))


# ---------------------------------------------------------------------------
# bounds


@dataclass
class BoundsReport:
    m: int
    n: int
    group: str | None = None
    t_lower: int | None = None
    T_lower: int | None = None
    known_upper: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = []
        if self.T_lower is not None and self.group:
            out.append(f"T({self.m},{self.group}) >= {self.T_lower} [constructed]")
        if self.t_lower is not None:
            out.append(f"t({self.m},{self.n}) >= {self.t_lower} [constructed]")
        out.extend(self.known_upper)
        return out


def known_bounds(m: int, n: int) -> list[str]:
    """Static literature bounds; these are recorded, not computed."""
    out = []
    if m == 2:
        out.append(f"t(2,{n}) <= {n - 1} [known]")
        if prime_power(n):
            out.append(f"t(2,{n}) = {n - 1} [known: prime power]")
        if n % 4 == 2:
            out.append(f"t_g(2,{n}) = 1 [known: n = 2 mod 4]")
    return out


def bounds_from_mods(sys: ModsSystem) -> BoundsReport:
    name = format_group_spec(sys.spec) if sys.spec is not None else None
    return BoundsReport(sys.m, sys.n, name, sys.r, sys.r, known_bounds(sys.m, sys.n))
