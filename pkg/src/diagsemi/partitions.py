"""Partitions of a finite set, joins, Cartesian-lattice tests, coset
partitions of direct powers, and diagonal semilattices."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapExceeded
from .groups import GroupTable, enumerate_automorphisms

DEFAULT_POINT_CAP = 10**6


@dataclass(frozen=True)
class Partition:
    """Part labels per point, renumbered by first occurrence."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        seen: dict[int, int] = {}
        norm = tuple(seen.setdefault(x, len(seen)) for x in self.labels)
        object.__setattr__(self, "labels", norm)

    @classmethod
    def from_parts(cls, size: int, parts: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * size
        for k, part in enumerate(parts):
            for x in part:
                if labels[x] != -1:
                    raise ValueError(f"point {x} is in two parts")
                labels[x] = k
        if -1 in labels:
            raise ValueError("parts do not cover the set")
        return cls(tuple(labels))

    @classmethod
    def discrete(cls, size: int) -> "Partition":
        return cls(tuple(range(size)))

    @classmethod
    def universal(cls, size: int) -> "Partition":
        return cls((0,) * size)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def num_parts(self) -> int:
        return max(self.labels, default=-1) + 1

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_parts)]
        for x, k in enumerate(self.labels):
            out[k].append(x)
        return out

    def part_sizes(self) -> list[int]:
        sizes = [0] * self.num_parts
        for k in self.labels:
            sizes[k] += 1
        return sizes

    def is_universal(self) -> bool:
        return self.num_parts == 1

    def is_discrete(self) -> bool:
        return self.num_parts == self.size

    def refines(self, other: "Partition") -> bool:
        return meet(self, other) == self

    def image(self, perm: Sequence[int]) -> "Partition":
        """The partition whose parts are the images of this one's parts."""
        labels = [0] * self.size
        for x, k in enumerate(self.labels):
            labels[perm[x]] = k
        return Partition(tuple(labels))


@dataclass(frozen=True)
class PartitionSet:
    size: int
    members: tuple[Partition, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        for p in self.members:
            if p.size != self.size:
                raise ValueError("all members must partition the same set")

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> Partition:
        return self.members[i]

    def __iter__(self):
        return iter(self.members)


def _check_same_size(ps: Sequence[Partition]) -> int:
    sizes = {p.size for p in ps}
    if len(sizes) != 1:
        raise ValueError("partitions must be of the same set")
    return sizes.pop()


def join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening (union-find over both part relations)."""
    return join_all([p, q])


def join_all(ps: Sequence[Partition]) -> Partition:
    n = _check_same_size(ps)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in ps:
        first: dict[int, int] = {}
        for x, k in enumerate(p.labels):
            y = first.setdefault(k, x)
            if y != x:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
    return Partition(tuple(find(x) for x in range(n)))


def meet(p: Partition, q: Partition) -> Partition:
    return meet_all([p, q])


def meet_all(ps: Sequence[Partition]) -> Partition:
    _check_same_size(ps)
    return Partition(tuple(zip(*(p.labels for p in ps))))


def is_cartesian_frame(members: Sequence[Partition]) -> bool:
    """True iff ``w -> (label_1(w), ..., label_m(w))`` is a bijection onto the
    full product of the part sets: the members are the *maximal* elements of
    a Cartesian lattice (the orthogonal-array convention)."""
    n = _check_same_size(members)
    if math.prod(p.num_parts for p in members) != n:
        return False
    return len(set(zip(*(p.labels for p in members)))) == n


def is_cartesian(members: Sequence[Partition]) -> bool:
    """True iff the members are the minimal non-trivial elements of an
    m-dimensional Cartesian lattice (m = number of members).

    The join of all members but the i-th is the would-be hyperplane
    partition for coordinate i.  Those m joins must form a Cartesian frame,
    and each member must be the meet of the other members' hyperplanes.
    For m = 2 this is the ordinary grid test on rows and columns.
    """
    m = len(members)
    if m < 2:
        raise ValueError("need at least two partitions")
    if any(p.is_universal() for p in members):
        return False
    hyper = [join_all([p for j, p in enumerate(members) if j != i]) for i in range(m)]
    if not is_cartesian_frame(hyper):
        return False
    for i, p in enumerate(members):
        if meet_all([h for j, h in enumerate(hyper) if j != i]) != p:
            return False
    return True


def is_cartesian_lattice_exhaustive(members: Sequence[Partition]) -> bool:
    """Slow cross-check of :func:`is_cartesian` through all 2^m joins.

    With P_J the join of the members indexed by J (P_{} discrete): every
    part of P_J has size prod_{j in J} s_j where s_j is the (uniform) part
    size of member j, P_J meet P_K = P_{J & K}, and the top is universal.
    """
    m = len(members)
    n = _check_same_size(members)
    sizes = []
    for p in members:
        ss = set(p.part_sizes())
        if len(ss) != 1:
            return False
        sizes.append(ss.pop())
    lattice: dict[frozenset, Partition] = {}
    for r in range(m + 1):
        for J in itertools.combinations(range(m), r):
            P = join_all([members[j] for j in J]) if J else Partition.discrete(n)
            want = math.prod(sizes[j] for j in J)
            if set(P.part_sizes()) != {want}:
                return False
            lattice[frozenset(J)] = P
    if not lattice[frozenset(range(m))].is_universal():
        return False
    keys = list(lattice)
    for J, K in itertools.combinations(keys, 2):
        if meet(lattice[J], lattice[K]) != lattice[J & K]:
            return False
    return True


# ---------------------------------------------------------------------------
# direct powers and coset partitions


class DirectPower:
    """The group G^m on points ``0..|G|^m - 1`` (coordinate 1 most significant)."""

    def __init__(self, group: GroupTable, m: int, cap: int = DEFAULT_POINT_CAP):
        n = group.order
        if n**m > cap:
            raise CapExceeded(f"|G|^m = {n**m} exceeds cap {cap}")
        self.group, self.m, self.n = group, m, n
        self.order = n**m
        self._coords = list(itertools.product(range(n), repeat=m))
        self._mul = group.mul.tolist()

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> int:
        return self.point((self.group.identity,) * self.m)

    def coords(self, x: int) -> tuple[int, ...]:
        return self._coords[x]

    def point(self, coords: Sequence[int]) -> int:
        out = 0
        for c in coords:
            out = out * self.n + c
        return out

    def op(self, a: int, b: int) -> int:
        mul = self._mul
        return self.point([mul[x][y] for x, y in zip(self._coords[a], self._coords[b])])

    def inv(self, a: int) -> int:
        return self.point([self.group.inv[x] for x in self._coords[a]])

    def coordinate_subgroup(self, i: int) -> list[int]:
        e = self.group.identity
        return [self.point([g if j == i else e for j in range(self.m)]) for g in range(self.n)]

    def diagonal_subgroup(self) -> list[int]:
        return [self.point([g] * self.m) for g in range(self.n)]


def coset_partition(group, subgroup: Sequence[int]) -> Partition:
    """Partition into right cosets ``Hx``.  ``group`` is a :class:`GroupTable`
    or :class:`DirectPower` (anything with ``order`` and ``op``)."""
    n = group.order
    sub = list(subgroup)
    subset = set(sub)
    if len(subset) != len(sub):
        raise ValueError("subgroup has repeated elements")
    for a in sub:
        for b in sub:
            if group.op(a, b) not in subset:
                raise ValueError("subgroup is not closed under multiplication")
    if n % len(sub):
        raise ValueError("subgroup order does not divide group order")
    labels = [-1] * n
    k = 0
    for x in range(n):
        if labels[x] == -1:
            for h in sub:
                labels[group.op(h, x)] = k
            k += 1
    return Partition(tuple(labels))


def diagonal_semilattice(g: GroupTable, m: int, cap: int = DEFAULT_POINT_CAP) -> PartitionSet:
    """The m coordinate coset partitions of G^m followed by the diagonal one."""
    if m < 2:
        raise ValueError("m must be >= 2")
    power = DirectPower(g, m, cap)
    subgroups = [power.coordinate_subgroup(i) for i in range(m)] + [power.diagonal_subgroup()]
    members = tuple(coset_partition(power, h) for h in subgroups)
    return PartitionSet(power.order, members, {"group_order": g.order, "m": m})


def diagonal_group_generators(g: GroupTable, m: int, aut_cap: int = 10_000,
                              cap: int = DEFAULT_POINT_CAP) -> list[tuple[int, ...]]:
    """Permutations of G^m generating the diagonal group D(G, m): right
    translations, left diagonal translations, automorphisms of G applied in
    every coordinate, coordinate transpositions, and the map
    ``(g1, ..., gm) -> (g1^-1, g1^-1 g2, ..., g1^-1 gm)``."""
    power = DirectPower(g, m, cap)
    e = g.identity
    pts = range(power.order)
    gens: list[tuple[int, ...]] = []
    for s in g.generators:
        for i in range(m):
            t = power.point([s if j == i else e for j in range(m)])
            gens.append(tuple(power.op(x, t) for x in pts))
        d = power.point([s] * m)
        gens.append(tuple(power.op(d, x) for x in pts))
    for a in enumerate_automorphisms(g, aut_cap):
        gens.append(tuple(power.point([a.perm[c] for c in power.coords(x)]) for x in pts))
    for i in range(m - 1):
        def swap(c: tuple[int, ...]) -> list[int]:
            c = list(c)
            c[i], c[i + 1] = c[i + 1], c[i]
            return c
        gens.append(tuple(power.point(swap(power.coords(x))) for x in pts))
    mul, inv = g.mul, g.inv

    def last(c: tuple[int, ...]) -> list[int]:
        g1 = inv[c[0]]
        return [g1] + [int(mul[g1, x]) for x in c[1:]]

    gens.append(tuple(power.point(last(power.coords(x))) for x in pts))
    identity = tuple(pts)
    return sorted({p for p in gens if p != identity})


def generated_group_order(gens: Sequence[Sequence[int]], cap: int = 10**6) -> int:
    """Order of the permutation group generated by ``gens`` (closure search)."""
    gens = [tuple(p) for p in gens]
    if not gens:
        return 1
    n = len(gens[0])
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        raise CapExceeded(f"group has more than {cap} elements")
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def partition_set_stabilizer(ps: PartitionSet | Sequence[Partition], max_points: int = 12
                             ) -> list[tuple[int, ...]]:
    """All permutations of the point set mapping the set of members onto
    itself (members may be permuted among themselves).

    Backtracking over point images, one branch per member permutation, with
    same-part consistency checked against every earlier point.
    """
    members = list(dict.fromkeys(ps.members if isinstance(ps, PartitionSet) else ps))
    n = _check_same_size(members)
    if n > max_points:
        raise CapExceeded(f"stabilizer search limited to {max_points} points, got {n}")
    labels = [p.labels for p in members]
    shapes = [sorted(p.part_sizes()) for p in members]
    k = len(members)
    found: list[tuple[int, ...]] = []
    for sigma in itertools.permutations(range(k)):
        if any(shapes[i] != shapes[sigma[i]] for i in range(k)):
            continue
        pairs = [(labels[i], labels[sigma[i]]) for i in range(k)]
        image = [-1] * n
        used = [False] * n

        def place(x: int) -> None:
            if x == n:
                found.append(tuple(image))
                return
            for v in range(n):
                if used[v]:
                    continue
                ok = True
                for y in range(x):
                    w = image[y]
                    for src, dst in pairs:
                        if (src[x] == src[y]) != (dst[v] == dst[w]):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    image[x], used[v] = v, True
                    place(x + 1)
                    used[v] = False
            image[x] = -1

        place(0)
    return sorted(found)
