"""Latin squares, orthogonality, isotopisms and group-isotopy detection."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidGroup, NotAGrid, NotLatin
from .groups import GroupTable, identify_group
from .partitions import Partition, PartitionSet, is_cartesian

NON_GROUP = "non-group"


@dataclass(frozen=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(tuple(int(v) for v in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        full = set(range(n))
        if any(len(row) != n or set(row) != full for row in cells):
            raise NotLatin("every row must be a permutation of 0..n-1")
        if any({row[j] for row in cells} != full for j in range(n)):
            raise NotLatin("every column must be a permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.cells[i]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.cells]

    @classmethod
    def from_group(cls, g: GroupTable) -> "LatinSquare":
        return cls(tuple(tuple(r) for r in g.rows()))

    def transpose(self) -> "LatinSquare":
        return LatinSquare(tuple(zip(*self.cells)))

    def partitions(self) -> tuple[Partition, Partition, Partition]:
        """Rows, columns and letters as partitions of the cells ``i*n + j``."""
        rows, cols = grid_partitions(self.n)
        letters = Partition(tuple(v for row in self.cells for v in row))
        return rows, cols, letters


@dataclass(frozen=True)
class Isotopism:
    """Row, column and symbol bijections."""

    rho: tuple[int, ...]
    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.rho)
        for name in ("rho", "sigma", "tau"):
            perm = tuple(int(v) for v in getattr(self, name))
            if sorted(perm) != list(range(n)):
                raise ValueError(f"{name} is not a permutation of 0..{n - 1}")
            object.__setattr__(self, name, perm)

    @classmethod
    def identity(cls, n: int) -> "Isotopism":
        ident = tuple(range(n))
        return cls(ident, ident, ident)


@dataclass(frozen=True)
class MolsSet:
    n: int
    squares: tuple[LatinSquare, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "squares", tuple(self.squares))
        for sq in self.squares:
            if sq.n != self.n:
                raise ValueError("all squares must have order n")
        for a, b in itertools.combinations(self.squares, 2):
            if not are_orthogonal(a, b):
                raise ValueError("squares are not mutually orthogonal")

    def __len__(self) -> int:
        return len(self.squares)

    def partitions(self) -> PartitionSet:
        """Rows, columns, then the letters of each square."""
        rows, cols = grid_partitions(self.n)
        members = [rows, cols] + [sq.partitions()[2] for sq in self.squares]
        return PartitionSet(self.n * self.n, tuple(members))


def grid_partitions(n: int) -> tuple[Partition, Partition]:
    """Rows and columns of the n x n grid of cells ``i*n + j``."""
    rows = Partition(tuple(i for i in range(n) for _ in range(n)))
    cols = Partition(tuple(j for _ in range(n) for j in range(n)))
    return rows, cols


def from_partitions(rows: Partition, cols: Partition, letters: Partition) -> LatinSquare:
    """The square whose cell (row part, column part) holds the letter part."""
    if not is_cartesian([rows, cols]):
        raise NotAGrid("rows and columns do not form a grid")
    n = rows.num_parts
    if letters.num_parts != n or not is_cartesian([rows, letters]) or not is_cartesian([cols, letters]):
        raise NotLatin("letters do not form a Latin square on the grid")
    cells = [[0] * n for _ in range(n)]
    for r, c, v in zip(rows.labels, cols.labels, letters.labels):
        cells[r][c] = v
    return LatinSquare(tuple(tuple(row) for row in cells))


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    if a.n != b.n:
        raise ValueError("squares must have the same order")
    pairs = {(x, y) for ra, rb in zip(a.cells, b.cells) for x, y in zip(ra, rb)}
    return len(pairs) == a.n * a.n


def apply_isotopism(l: LatinSquare, iso: Isotopism) -> LatinSquare:
    """``out[rho(i)][sigma(j)] = tau(l[i][j])``."""
    n = l.n
    if len(iso.rho) != n:
        raise ValueError("isotopism order does not match the square")
    out = [[0] * n for _ in range(n)]
    for i, row in enumerate(l.cells):
        for j, v in enumerate(row):
            out[iso.rho[i]][iso.sigma[j]] = iso.tau[v]
    return LatinSquare(tuple(tuple(r) for r in out))


def principal_loop(l: LatinSquare) -> LatinSquare:
    """Isotope with row 0 and column 0 equal to the identity permutation:
    columns are reordered by row 0's symbols, then rows by column 0's."""
    n = l.n
    col_of = [0] * n
    for j, v in enumerate(l.cells[0]):
        col_of[v] = j
    step = [[row[col_of[j]] for j in range(n)] for row in l.cells]
    row_of = [0] * n
    for i, row in enumerate(step):
        row_of[row[0]] = i
    return LatinSquare(tuple(tuple(step[row_of[i]]) for i in range(n)))


def is_group_isotopic(l: LatinSquare) -> GroupTable | None:
    """The principal loop isotope as a group table if it is associative.

    By Albert's theorem a square is isotopic to a group's Cayley table iff
    this loop is a group, and the group is then unique up to isomorphism.
    """
    loop = principal_loop(l)
    try:
        return GroupTable.from_rows(loop.cells)
    except InvalidGroup:
        return None


def quadrangle_criterion(l: LatinSquare) -> bool:
    """Frolov's quadrangle criterion.

    For rows a, b let ``pi_ab`` send column y to the column where row b
    repeats the symbol ``l[a][y]``.  The criterion says that two such maps
    agreeing at one column agree everywhere, so each (y, pi(y)) pair may
    index only one distinct map.
    """
    n = l.n
    where = [[0] * n for _ in range(n)]
    for i, row in enumerate(l.cells):
        for j, v in enumerate(row):
            where[i][v] = j
    owner: dict[tuple[int, int], tuple[int, ...]] = {}
    for a in range(n):
        ra = l.cells[a]
        for b in range(n):
            wb = where[b]
            pi = tuple(wb[ra[y]] for y in range(n))
            for y in range(n):
                prev = owner.setdefault((y, pi[y]), pi)
                if prev != pi:
                    return False
    return True


def square_group_name(l: LatinSquare) -> str:
    g = is_group_isotopic(l)
    return NON_GROUP if g is None else identify_group(g)


def group_profile(ps: PartitionSet | Sequence[Partition]) -> dict[tuple[int, int, int], str]:
    """Group name (or ``"non-group"``) of the square defined by each triple of
    members, the lowest index acting as rows and the next as columns."""
    members = list(ps.members if isinstance(ps, PartitionSet) else ps)
    for a, b in itertools.combinations(range(len(members)), 2):
        if not is_cartesian([members[a], members[b]]):
            raise NotAGrid(f"members {a} and {b} do not form a grid")
    out = {}
    for i, j, k in itertools.combinations(range(len(members)), 3):
        out[(i, j, k)] = square_group_name(from_partitions(members[i], members[j], members[k]))
    return out


def iter_reduced_squares(n: int) -> Iterator[LatinSquare]:
    """Every reduced Latin square of order n (first row and column in order)."""
    grid = [[-1] * n for _ in range(n)]
    for i in range(n):
        grid[0][i] = i
        grid[i][0] = i
    cols = [set(range(n)) - {grid[i][j] for i in range(n) if grid[i][j] >= 0} for j in range(n)]
    rows = [set(range(n)) - {grid[i][j] for j in range(n) if grid[i][j] >= 0} for i in range(n)]
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(k: int) -> Iterator[LatinSquare]:
        if k == len(cells):
            yield LatinSquare(tuple(tuple(r) for r in grid))
            return
        i, j = cells[k]
        for v in sorted(rows[i] & cols[j]):
            grid[i][j] = v
            rows[i].discard(v)
            cols[j].discard(v)
            yield from fill(k + 1)
            rows[i].add(v)
            cols[j].add(v)
        grid[i][j] = -1

    if n == 1:
        yield LatinSquare(((0,),))
        return
    yield from fill(0)
