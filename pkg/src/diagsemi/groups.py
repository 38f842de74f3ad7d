"""Finite groups given by Cayley tables, abelian groups in primary form,
automorphisms, and fixed-point-free automorphism triples.

Elements of every group are the integers ``0..n-1``.  Automorphisms act on
the right: ``compose(a, b)`` is "apply ``a`` first, then ``b``".
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    InternalWitnessFailure,
    InvalidGroup,
    ParseError,
    UnsupportedOrder,
)

DEFAULT_ELEMENT_CAP = 2**20
IDENTIFY_MAX_ORDER = 16


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e``, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


# ---------------------------------------------------------------------------
# Abelian groups in primary form


@dataclass(frozen=True)
class AbelianSpec:
    """Direct product of cyclic groups of prime-power order.

    Elements are tuples of residues enumerated in mixed radix, first
    coordinate most significant.  The empty spec is the trivial group.
    """

    cyclic_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(k) for k in self.cyclic_orders)
        for k in orders:
            if prime_power(k) is None:
                raise ValueError(f"{k} is not a prime power >= 2")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        w = []
        acc = 1
        for k in reversed(self.cyclic_orders):
            w.append(acc)
            acc *= k
        return tuple(reversed(w))

    def element(self, index: int) -> tuple[int, ...]:
        out = []
        for k, w in zip(self.cyclic_orders, self._weights):
            out.append((index // w) % k)
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        return sum((c % k) * w for c, k, w in zip(coords, self.cyclic_orders, self._weights))

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(k) for k in self.cyclic_orders)))

    def add(self, a: int, b: int) -> int:
        x, y = self.element(a), self.element(b)
        return self.index([u + v for u, v in zip(x, y)])

    def layers(self) -> dict[tuple[int, int], list[int]]:
        """Coordinate positions grouped by the (p, e) of their cyclic factor."""
        out: dict[tuple[int, int], list[int]] = {}
        for pos, k in enumerate(self.cyclic_orders):
            out.setdefault(prime_power(k), []).append(pos)
        return out

    @property
    def is_homocyclic(self) -> bool:
        return len(set(self.cyclic_orders)) <= 1

    def __str__(self) -> str:
        return format_group_spec(self)


def format_group_spec(spec: AbelianSpec) -> str:
    """CLI-style name, e.g. ``Z4^2`` or ``Z4xZ2``."""
    if not spec.cyclic_orders:
        return "Z1"
    terms = []
    for k, run in itertools.groupby(spec.cyclic_orders):
        d = len(list(run))
        terms.append(f"Z{k}" if d == 1 else f"Z{k}^{d}")
    return "x".join(terms)


_TERM = re.compile(r"^Z(\d+)(?:\^(\d+))?$")
_DIHEDRAL = re.compile(r"^D(\d+)$")


def parse_group_spec(text: str) -> AbelianSpec | tuple[str, int]:
    """Parse ``Z5``, ``Z4xZ2``, ``Z2^3`` or ``D8``.

    Abelian specs come back as :class:`AbelianSpec` (non-prime-power cyclic
    factors are split into primary parts); ``D<2k>`` comes back as
    ``("dihedral", k)``.
    """
    text = text.strip()
    m = _DIHEDRAL.match(text)
    if m:
        order = int(m.group(1))
        if order < 6 or order % 2:
            raise ParseError(f"bad dihedral group {text!r}")
        return ("dihedral", order // 2)
    orders: list[int] = []
    for term in text.split("x"):
        m = _TERM.match(term.strip())
        if not m:
            raise ParseError(f"bad group term {term!r} in {text!r}")
        k = int(m.group(1))
        d = int(m.group(2)) if m.group(2) else 1
        if k < 1 or d < 1:
            raise ParseError(f"bad group term {term!r}")
        if k == 1:
            continue
        parts = [p**e for p, e in sorted(factorize(k).items())]
        orders.extend(parts * d)
    return AbelianSpec(tuple(orders))


def group_from_spec(text: str, cap: int = DEFAULT_ELEMENT_CAP) -> tuple["GroupTable", AbelianSpec | None]:
    parsed = parse_group_spec(text)
    if isinstance(parsed, AbelianSpec):
        return build_table(parsed, cap=cap), parsed
    return dihedral_table(parsed[1], cap=cap), None


# ---------------------------------------------------------------------------
# Cayley tables


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group by its multiplication table over ``0..n-1``."""

    mul: np.ndarray
    identity: int
    inv: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], check: bool = True) -> "GroupTable":
        mul = np.array([list(r) for r in rows], dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise InvalidGroup("table must be a non-empty square")
        n = mul.shape[0]
        ar = np.arange(n)
        ident = [e for e in range(n) if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)]
        if not ident:
            raise InvalidGroup("no two-sided identity")
        e = ident[0]
        inv = []
        for x in range(n):
            hits = np.nonzero(mul[x] == e)[0]
            if len(hits) != 1 or mul[hits[0], x] != e:
                raise InvalidGroup(f"element {x} has no two-sided inverse")
            inv.append(int(hits[0]))
        mul.setflags(write=False)
        g = cls(mul, e, tuple(inv))
        if check:
            g.validate()
        return g

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupTable) and np.array_equal(self.mul, other.mul)

    def __hash__(self) -> int:
        return hash(self.mul.tobytes())

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order})"

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        out = self.identity
        for _ in range(k):
            out = int(self.mul[out, a])
        return out

    def rows(self) -> list[list[int]]:
        return self.mul.tolist()

    def validate(self) -> None:
        """Latin property, identity, inverses and associativity, exactly."""
        n = self.order
        mul = self.mul
        ar = np.arange(n)
        if mul.min() < 0 or mul.max() >= n:
            raise InvalidGroup("entries out of range")
        if not (np.sort(mul, axis=1) == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
            raise InvalidGroup("table is not a Latin square")
        if not np.array_equal(mul[self.identity], ar) or not np.array_equal(mul[:, self.identity], ar):
            raise InvalidGroup("identity is not two-sided")
        inv = np.array(self.inv)
        if not (mul[ar, inv] == self.identity).all() or not (mul[inv, ar] == self.identity).all():
            raise InvalidGroup("inverses inconsistent")
        # (ab)c == a(bc), chunked over a to bound memory
        chunk = max(1, 2_000_000 // (n * n))
        for lo in range(0, n, chunk):
            a = ar[lo:lo + chunk]
            left = mul[mul[a][:, :, None], ar[None, None, :]]
            right = mul[a[:, None, None], mul[None, :, :]]
            if not np.array_equal(left, right):
                raise InvalidGroup("table is not associative")

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = int(self.mul[y, x])
                k += 1
            out.append(k)
        return tuple(out)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def relabel(self, perm: Sequence[int]) -> "GroupTable":
        """The isomorphic table in which element ``x`` is renamed ``perm[x]``."""
        p = np.asarray(perm)
        new = np.empty_like(self.mul)
        new[np.ix_(p, p)] = p[self.mul]
        return GroupTable.from_rows(new, check=False)

    def generated(self, gens: Iterable[int]) -> set[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.mul[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set chosen greedily, high-order elements first."""
        order = sorted(range(self.order), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        span = {self.identity}
        for x in order:
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = self.generated(gens)
        return tuple(gens)

    def center(self) -> list[int]:
        return [z for z in range(self.order) if np.array_equal(self.mul[z], self.mul[:, z])]

    def derived_subgroup(self) -> set[int]:
        comms = {
            int(self.mul[self.mul[self.inv[a], self.inv[b]], self.mul[a, b]])
            for a in range(self.order) for b in range(self.order)
        }
        return self.generated(comms)


def cyclic_table(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> GroupTable:
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")
    ar = np.arange(n)
    return GroupTable.from_rows((ar[:, None] + ar[None, :]) % n)


def build_table(spec: AbelianSpec, cap: int = DEFAULT_ELEMENT_CAP) -> GroupTable:
    n = spec.order
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")
    if not spec.cyclic_orders:
        return GroupTable.from_rows([[0]])
    coords = np.array(spec.elements(), dtype=np.int64)
    mods = np.array(spec.cyclic_orders, dtype=np.int64)
    weights = np.array(spec._weights, dtype=np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % mods
    return GroupTable.from_rows(summed @ weights)


def dihedral_table(k: int, cap: int = DEFAULT_ELEMENT_CAP) -> GroupTable:
    """Dihedral group of order 2k: element ``j*k + i`` is ``r^i s^j``."""
    if k < 3:
        raise ValueError("dihedral groups need k >= 3")
    if 2 * k > cap:
        raise CapExceeded(f"group order {2 * k} exceeds cap {cap}")
    rows = []
    for j1, i1 in itertools.product(range(2), range(k)):
        row = []
        for j2, i2 in itertools.product(range(2), range(k)):
            i = (i1 + (-i2 if j1 else i2)) % k
            row.append(((j1 + j2) % 2) * k + i)
        rows.append(row)
    return GroupTable.from_rows(rows)


def direct_product_table(a: GroupTable, b: GroupTable) -> GroupTable:
    """Element ``x*|b| + y`` is the pair ``(x, y)``."""
    nb = b.order
    rows = []
    for x1, y1 in itertools.product(range(a.order), range(nb)):
        rows.append([a.op(x1, x2) * nb + b.op(y1, y2)
                     for x2, y2 in itertools.product(range(a.order), range(nb))])
    return GroupTable.from_rows(rows)


def cyclic_semidirect_table(n: GroupTable, k: int, aut: Sequence[int]) -> GroupTable:
    """``N ⋊ C_k`` where the generator of ``C_k`` acts on ``N`` by ``aut``.

    Element ``t*|N| + x`` is the pair ``(x, t)``; the product is
    ``(x1, t1)(x2, t2) = (x1 · aut^t1(x2), t1 + t2)``.
    """
    size = n.order
    powers = [list(range(size))]
    for _ in range(1, k):
        powers.append([aut[v] for v in powers[-1]])
    if [aut[v] for v in powers[-1]] != list(range(size)):
        raise InvalidGroup("automorphism order does not divide k")
    rows = []
    for t1, x1 in itertools.product(range(k), range(size)):
        rows.append([((t1 + t2) % k) * size + n.op(x1, powers[t1][x2])
                     for t2, x2 in itertools.product(range(k), range(size))])
    return GroupTable.from_rows(rows)


def dicyclic_table(n: int) -> GroupTable:
    """Dicyclic group of order 4n (n=2 gives Q8): ``a^{2n}=1, x^2=a^n, x^-1 a x = a^-1``."""
    m = 2 * n
    rows = []
    for j1, i1 in itertools.product(range(2), range(m)):
        row = []
        for j2, i2 in itertools.product(range(2), range(m)):
            if j1 == 0:
                i, j = i1 + i2, j2
            elif j2 == 0:
                i, j = i1 - i2, 1
            else:
                i, j = i1 - i2 + n, 0
            row.append(j * m + i % m)
        rows.append(row)
    return GroupTable.from_rows(rows)


def _pauli_table() -> GroupTable:
    # i^k X^a Z^b with XZ = -ZX
    elems = list(itertools.product(range(4), range(2), range(2)))
    index = {e: i for i, e in enumerate(elems)}
    rows = [[index[((k1 + k2 + 2 * b1 * a2) % 4, (a1 + a2) % 2, (b1 + b2) % 2)]
             for k2, a2, b2 in elems] for k1, a1, b1 in elems]
    return GroupTable.from_rows(rows)


@lru_cache(maxsize=None)
def small_nonabelian_groups() -> dict[str, GroupTable]:
    """Every nonabelian group of order at most 16, one table each."""
    c2, c4 = cyclic_table(2), cyclic_table(4)
    v4 = build_table(AbelianSpec((2, 2)))
    groups = {f"D{2 * k}": dihedral_table(k) for k in range(3, 9)}
    groups["Q8"] = dicyclic_table(2)
    groups["Dic12"] = dicyclic_table(3)
    groups["Q16"] = dicyclic_table(4)
    # (x,y) -> (y, x+y) has order 3 on C2^2
    groups["A4"] = cyclic_semidirect_table(v4, 3, [0, 3, 1, 2])
    c8 = cyclic_table(8)
    groups["SD16"] = cyclic_semidirect_table(c8, 2, [(3 * x) % 8 for x in range(8)])
    groups["M16"] = cyclic_semidirect_table(c8, 2, [(5 * x) % 8 for x in range(8)])
    groups["C4⋊C4"] = cyclic_semidirect_table(c4, 4, [(-x) % 4 for x in range(4)])
    # C4 acting on C2^2 by swapping the two factors
    groups["C2²⋊C4"] = cyclic_semidirect_table(v4, 4, [0, 2, 1, 3])
    groups["C2×D8"] = direct_product_table(c2, dihedral_table(4))
    groups["C2×Q8"] = direct_product_table(c2, dicyclic_table(2))
    groups["C4∘D8"] = _pauli_table()
    return groups


def fingerprint(g: GroupTable) -> tuple:
    """Isomorphism invariants: order statistics, centre, derived subgroup, squares."""
    center = g.center()
    center_exp = math.lcm(*(g.element_orders[z] for z in center))
    squares = {g.op(x, x) for x in range(g.order)}
    return (
        g.order,
        tuple(sorted(Counter(g.element_orders).items())),
        len(center),
        center_exp,
        len(g.derived_subgroup()),
        len(squares),
    )


@lru_cache(maxsize=None)
def _fingerprint_table() -> dict[tuple, str]:
    table: dict[tuple, str] = {}
    for name, g in small_nonabelian_groups().items():
        fp = fingerprint(g)
        if fp in table:
            raise AssertionError(f"fingerprint collision: {name} vs {table[fp]}")
        table[fp] = name
    return table


def abelian_invariants(g: GroupTable) -> list[int]:
    """Primary decomposition ``[p^e, ...]`` of an abelian table (p ascending, e descending)."""
    orders = g.element_orders
    out: list[int] = []
    for p in sorted(factorize(g.order)):
        exps = []
        prev = 0
        k = 1
        while True:
            # log_p #{x : x^{p^k} = 1} = sum_i min(e_i, k)
            count = sum(1 for o in orders if (p**k) % o == 0)
            s = round(math.log(count, p))
            if s == prev:
                break
            exps.append(s - prev)  # number of e_i >= k
            prev = s
            k += 1
        # exps[k-1] = #{i : e_i >= k}; convert to the partition e_1 >= e_2 >= ...
        parts = [sum(1 for c in exps if c > j) for j in range(exps[0])] if exps else []
        out.extend(p**e for e in parts)
    return out


def abelian_spec_of(g: GroupTable) -> AbelianSpec:
    if not g.is_abelian():
        raise InvalidGroup("group is not abelian")
    return AbelianSpec(tuple(abelian_invariants(g)))


def invariant_factors(primary: Sequence[int]) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` from a primary decomposition."""
    by_prime: dict[int, list[int]] = {}
    for q in primary:
        p, _ = prime_power(q)
        by_prime.setdefault(p, []).append(q)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for qs in by_prime.values():
        qs = sorted(qs, reverse=True)
        for i, q in enumerate(qs):
            factors[width - 1 - i] *= q
    return factors


def abelian_name(primary: Sequence[int]) -> str:
    factors = invariant_factors(primary)
    if not factors:
        return "C1"
    return "×".join(f"C{d}" for d in factors)


def identify_group(g: GroupTable, max_order: int = IDENTIFY_MAX_ORDER) -> str:
    """Name a small group.

    Abelian groups get their invariant-factor name (``C2×C4``) at any order.
    Nonabelian groups of order up to ``max_order`` are matched against a
    fingerprint table built from explicit constructions.
    """
    if g.is_abelian():
        return abelian_name(abelian_invariants(g))
    if g.order > max_order:
        raise UnsupportedOrder(f"nonabelian group of order {g.order} is beyond the fingerprint table")
    name = _fingerprint_table().get(fingerprint(g))
    if name is None:
        raise UnsupportedOrder(f"no fingerprint entry matches this group of order {g.order}")
    return name


# ---------------------------------------------------------------------------
# Automorphisms


@dataclass(frozen=True)
class Automorphism:
    """A permutation of group elements; ``matrix`` is optional backing data
    for automorphisms of an :class:`AbelianSpec` (acting on coordinate
    columns, each row reduced modulo its coordinate's order)."""

    perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("automorphism must be a permutation")

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def __len__(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(n)))

    def then(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(tuple(other.perm[x] for x in self.perm))

    def inverse(self) -> "Automorphism":
        out = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            out[y] = x
        return Automorphism(tuple(out))

    def fixed_points(self) -> list[int]:
        return [x for x, y in enumerate(self.perm) if x == y]


def compose(*auts: Automorphism) -> Automorphism:
    """Product in the right-action convention: apply the arguments left to right."""
    out = auts[0]
    for a in auts[1:]:
        out = out.then(a)
    return out


def is_automorphism(perm: Sequence[int], g: GroupTable) -> bool:
    p = np.asarray(perm)
    if p.shape != (g.order,) or not np.array_equal(np.sort(p), np.arange(g.order)):
        return False
    return bool(np.array_equal(p[g.mul], g.mul[p[:, None], p[None, :]]))


def is_fixed_point_free(a: Automorphism, g: GroupTable) -> bool:
    return a.fixed_points() == [g.identity]


def multiplier(spec: AbelianSpec, k: int) -> Automorphism:
    """The power map ``x -> k·x`` (an automorphism when k is prime to |G|)."""
    perm = tuple(spec.index([k * c for c in spec.element(x)]) for x in range(spec.order))
    return Automorphism(perm)


def enumerate_automorphisms(g: GroupTable, cap: int) -> list[Automorphism]:
    """All automorphisms, sorted by permutation, via backtracking on the
    images of a generating set.  Raises :class:`CapExceeded` past ``cap``."""
    gens = g.generators
    n = g.order
    orders = g.element_orders
    by_order: dict[int, list[int]] = {}
    for x in range(n):
        by_order.setdefault(orders[x], []).append(x)
    found: list[tuple[int, ...]] = []

    def extend(mapping: list[int], used: set[int], j: int) -> tuple[list[int], set[int]] | None:
        # close the partial hom on <gens[0..j]> along right multiplication
        mapping = mapping[:]
        used = set(used)
        active = gens[:j + 1]
        frontier = [x for x in range(n) if mapping[x] >= 0]
        while frontier:
            nxt = []
            for x in frontier:
                fx = mapping[x]
                for s in active:
                    y = int(g.mul[x, s])
                    fy = int(g.mul[fx, mapping[s]])
                    if mapping[y] < 0:
                        if fy in used:
                            return None
                        mapping[y] = fy
                        used.add(fy)
                        nxt.append(y)
                    elif mapping[y] != fy:
                        return None
            frontier = nxt
        return mapping, used

    def search(mapping: list[int], used: set[int], j: int) -> None:
        if j == len(gens):
            found.append(tuple(mapping))
            if len(found) > cap:
                raise CapExceeded(f"more than {cap} automorphisms")
            return
        s = gens[j]
        for img in by_order[orders[s]]:
            if img in used:
                continue
            trial = mapping[:]
            trial[s] = img
            res = extend(trial, used | {img}, j)
            if res is not None:
                search(res[0], res[1], j + 1)

    start = [-1] * n
    start[g.identity] = g.identity
    search(start, {g.identity}, 0)
    found.sort()
    for perm in found:
        if not is_automorphism(perm, g):
            raise InternalWitnessFailure("enumerated map is not an automorphism")
    return [Automorphism(p) for p in found]


def abelian_automorphism_count(spec: AbelianSpec) -> int:
    """|Aut(G)| for a finite abelian group (closed formula of Hillar and Rhea)."""
    total = 1
    by_prime: dict[int, list[int]] = {}
    for q in spec.cyclic_orders:
        p, e = prime_power(q)
        by_prime.setdefault(p, []).append(e)
    for p, es in by_prime.items():
        es = sorted(es)
        k = len(es)
        d = [max(l for l in range(1, k + 1) if es[l - 1] == es[j]) for j in range(k)]
        c = [min(l for l in range(1, k + 1) if es[l - 1] == es[j]) for j in range(k)]
        for j in range(k):
            total *= p ** d[j] - p ** j
            total *= p ** (es[j] * (k - d[j]))
            total *= p ** ((es[j] - 1) * (k - c[j] + 1))
    return total


# ---------------------------------------------------------------------------
# Fixed-point-free triples


def fpf_obstruction(spec: AbelianSpec) -> int | None:
    """The first cyclic factor order (a power of 2 or 3) occurring only once, if any."""
    counts = Counter(spec.cyclic_orders)
    for q in spec.cyclic_orders:
        p, _ = prime_power(q)
        if p in (2, 3) and counts[q] < 2:
            return q
    return None


def fpf_triple_exists(spec: AbelianSpec) -> bool:
    return fpf_obstruction(spec) is None


# monic irreducible polynomials over GF(p), non-leading coefficients low degree first
_IRREDUCIBLE = {
    (2, 2): (1, 1),      # X^2 + X + 1
    (2, 3): (1, 1, 0),   # X^3 + X + 1
    (3, 2): (1, 0),      # X^2 + 1
    (3, 3): (1, 2, 0),   # X^3 + 2X + 1
}


def _companion(coeffs: Sequence[int], mod: int) -> list[list[int]]:
    d = len(coeffs)
    m = [[0] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = 1
    for i in range(d):
        m[i][d - 1] = (-coeffs[i]) % mod
    return m


def _matmul(a: list[list[int]], b: list[list[int]], mod: int) -> list[list[int]]:
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) % mod for j in range(len(b[0]))]
            for i in range(len(a))]


def _matinv(a: list[list[int]], mod: int) -> list[list[int]]:
    """Inverse over Z/mod by Gauss-Jordan with unit pivots."""
    d = len(a)
    aug = [list(row) + [int(i == j) for j in range(d)] for i, row in enumerate(a)]
    for col in range(d):
        piv = next((r for r in range(col, d) if math.gcd(aug[r][col], mod) == 1), None)
        if piv is None:
            raise InternalWitnessFailure("matrix is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, mod)
        aug[col] = [(v * inv) % mod for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(v - f * w) % mod for v, w in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[at + i][at:at + len(row)] = row
        at += len(b)
    return out


def matrix_automorphism(spec: AbelianSpec, matrix: Sequence[Sequence[int]]) -> Automorphism:
    """The permutation of ``spec``'s elements induced by an integer matrix
    acting on coordinate columns (row i reduced modulo the i-th order)."""
    perm = []
    for x in spec.elements():
        perm.append(spec.index([sum(r * c for r, c in zip(row, x)) for row in matrix]))
    return Automorphism(tuple(perm), tuple(tuple(int(v) for v in row) for row in matrix))


def verify_abelian_automorphism(a: Automorphism, spec: AbelianSpec) -> bool:
    """Exact homomorphism check on an abelian group without building its table:
    the images of the basis vectors must have compatible orders and every
    image must be the matching linear combination of them."""
    n = spec.order
    if len(a.perm) != n:
        return False
    k = spec.rank
    basis = []
    for i in range(k):
        v = [0] * k
        v[i] = 1
        img = spec.element(a.perm[spec.index(v)])
        q = spec.cyclic_orders[i]
        if spec.index([q * c for c in img]) != 0:
            return False
        basis.append(img)
    for idx, x in enumerate(spec.elements()):
        want = [sum(x[i] * basis[i][j] for i in range(k)) for j in range(k)]
        if a.perm[idx] != spec.index(want):
            return False
    return True


def _layer_matrices(p: int, e: int, d: int) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    mod = p**e
    eye = [[int(i == j) for j in range(d)] for i in range(d)]
    if p >= 5:
        quarter = pow(4, -1, mod)
        two = [[2 * v for v in row] for row in eye]
        return two, two, [[quarter * v for v in row] for row in eye]
    if d < 2:
        raise InternalWitnessFailure(f"no witness for a single C{mod} layer")
    sizes = [2] * (d // 2) if d % 2 == 0 else [3] + [2] * ((d - 3) // 2)
    a = _block_diag([_companion(_IRREDUCIBLE[(p, s)], mod) for s in sizes])
    a = [[v % mod for v in row] for row in a]
    gamma = _matinv(_matmul(a, a, mod), mod)
    return a, a, gamma


def fpf_triple_witness(spec: AbelianSpec, cap: int = DEFAULT_ELEMENT_CAP
                       ) -> tuple[Automorphism, Automorphism, Automorphism] | None:
    """Three fixed-point-free automorphisms with product the identity, or None.

    Each homocyclic layer ``(C_{p^e})^d`` gets its own block: scalars
    ``2, 2, 1/4`` when ``p >= 5``, otherwise ``A, A, A^-2`` where ``A`` is
    block-diagonal in companion matrices of irreducible quadratics (and one
    cubic when ``d`` is odd).  Fixed points modulo ``p^e`` reduce to fixed
    points modulo ``p``, so having no eigenvalue 1 mod p suffices; the triple
    is re-verified on the elements anyway.
    """
    if not fpf_triple_exists(spec):
        return None
    if spec.order > cap:
        raise CapExceeded(f"group order {spec.order} exceeds cap {cap}")
    k = spec.rank
    mats = [[[0] * k for _ in range(k)] for _ in range(3)]
    for (p, e), positions in spec.layers().items():
        blocks = _layer_matrices(p, e, len(positions))
        for full, block in zip(mats, blocks):
            for i, pi in enumerate(positions):
                for j, pj in enumerate(positions):
                    full[pi][pj] = block[i][j]
    triple = tuple(matrix_automorphism(spec, m) for m in mats)
    identity = spec.index([0] * k)
    for a in triple:
        if not verify_abelian_automorphism(a, spec):
            raise InternalWitnessFailure(f"witness for {spec} is not an automorphism")
        if a.fixed_points() != [identity]:
            raise InternalWitnessFailure(f"witness for {spec} has fixed points")
    if compose(*triple).perm != tuple(range(spec.order)):
        raise InternalWitnessFailure(f"witness product for {spec} is not the identity")
    return triple


def fpf_triple_bruteforce(g: GroupTable, aut_cap: int = 2000
                          ) -> tuple[Automorphism, Automorphism, Automorphism] | None:
    """Exhaustive search: the first pair (α, β) of fpf automorphisms, in
    lexicographic order, with γ = (αβ)^-1 also fpf."""
    auts = enumerate_automorphisms(g, aut_cap)
    fpf = [a for a in auts if is_fixed_point_free(a, g)]
    if not fpf:
        return None
    table = np.array([a.perm for a in fpf], dtype=np.int64)
    ar = np.arange(g.order)
    for alpha in fpf:
        composite = table[:, np.array(alpha.perm)]  # row b: x -> b(alpha(x))
        ok = np.nonzero((composite == ar).sum(axis=1) == 1)[0]
        if len(ok):
            beta = fpf[int(ok[0])]
            gamma = alpha.then(beta).inverse()
            return alpha, beta, gamma
    return None


def abelian_specs_of_order(n: int) -> list[AbelianSpec]:
    """Every abelian group of order n, once each, in primary form."""
    def partitions(e: int, largest: int) -> Iterable[list[int]]:
        if e == 0:
            yield []
            return
        for first in range(min(e, largest), 0, -1):
            for rest in partitions(e - first, first):
                yield [first] + rest

    per_prime = [[[p**x for x in part] for part in partitions(e, e)]
                 for p, e in sorted(factorize(n).items())] if n > 1 else []
    out = []
    for combo in itertools.product(*per_prime):
        out.append(AbelianSpec(tuple(q for part in combo for q in part)))
    return out
