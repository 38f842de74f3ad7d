"""Plain-text file formats.

Every format starts with a header line naming it; blank lines and lines
starting with ``#`` are ignored everywhere.

    partition <N> <k>            then N labels in 0..k-1
    partitions <N> <count>       then count lines of N labels
    latin <n>                    then n rows of n symbols (a MOLS file is a
                                 sequence of latin blocks)
    latin2 <n>                   then n rows of n pairs ``a:b`` (or ``ab``)
    oa <N> <k> <n> <m>           then N rows of k symbols
    mods <groupspec> <m> <count> then one embedding per line:
                                 ``coord <i>``, ``diag <perm...>`` or
                                 ``mat <entries...>`` (row-major)

Latin symbols may be 0-based or 1-based; a block using exactly 1..n is
shifted down.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .designs import Embedding, ModsSystem, OrthogonalArray, mods_build
from .errors import ParseError
from .groups import AbelianSpec, GroupTable, format_group_spec, group_from_spec
from .latin import LatinSquare, MolsSet
from .partitions import DEFAULT_POINT_CAP, Partition, PartitionSet


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line.split())
    return out


def _ints(tokens: Sequence[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer in {what}: {' '.join(tokens)}") from None


def _header(tokens: list[str], keyword: str, nargs: int) -> list[str]:
    if not tokens or tokens[0] != keyword:
        raise ParseError(f"expected a '{keyword}' header")
    if len(tokens) != nargs + 1:
        raise ParseError(f"'{keyword}' header needs {nargs} fields")
    return tokens[1:]


def _take(lines: list[list[str]], pos: int, count: int, what: str) -> list[list[str]]:
    if pos + count > len(lines):
        raise ParseError(f"{what}: expected {count} lines, file ended early")
    return lines[pos:pos + count]


def file_kind(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    return lines[0][0]


# ---------------------------------------------------------------------------
# partitions


def _parse_partition_body(tokens: list[str], n: int, k: int | None) -> Partition:
    labels = _ints(tokens, "partition labels")
    if len(labels) != n:
        raise ParseError(f"expected {n} labels, got {len(labels)}")
    if k is not None and (any(not 0 <= x < k for x in labels) or len(set(labels)) != k):
        raise ParseError(f"labels must use exactly 0..{k - 1}")
    return Partition(tuple(labels))


def parse_partition(text: str) -> Partition:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    n, k = _ints(_header(lines[0], "partition", 2), "header")
    body = [t for line in lines[1:] for t in line]
    return _parse_partition_body(body, n, k)


def dump_partition(p: Partition) -> str:
    return f"partition {p.size} {p.num_parts}\n{' '.join(map(str, p.labels))}\n"


def parse_partition_set(text: str) -> PartitionSet:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    n, count = _ints(_header(lines[0], "partitions", 2), "header")
    body = _take(lines, 1, count, "partitions")
    if len(lines) != count + 1:
        raise ParseError("trailing lines after partitions")
    return PartitionSet(n, tuple(_parse_partition_body(t, n, None) for t in body))


def dump_partition_set(ps: PartitionSet | Sequence[Partition]) -> str:
    members = list(ps.members if isinstance(ps, PartitionSet) else ps)
    n = members[0].size if members else 0
    out = [f"partitions {n} {len(members)}"]
    out += [" ".join(map(str, p.labels)) for p in members]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# latin squares


def _shift(cells: list[list[int]], n: int) -> list[list[int]]:
    flat = {v for row in cells for v in row}
    if flat == set(range(1, n + 1)):
        return [[v - 1 for v in row] for row in cells]
    return cells


def _square(cells: list[list[int]]) -> LatinSquare:
    return LatinSquare(tuple(tuple(r) for r in cells))


def parse_latin_blocks(text: str) -> list[LatinSquare]:
    """All squares in a file of ``latin`` blocks, or both squares of a
    ``latin2`` file."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    if lines[0][0] == "latin2":
        return list(parse_latin2(text))
    out, pos = [], 0
    while pos < len(lines):
        (n,) = _ints(_header(lines[pos], "latin", 1), "header")
        rows = [_ints(t, "latin row") for t in _take(lines, pos + 1, n, "latin")]
        if any(len(r) != n for r in rows):
            raise ParseError(f"latin rows must have {n} entries")
        out.append(_square(_shift(rows, n)))
        pos += n + 1
    return out


def parse_latin(text: str) -> LatinSquare:
    squares = parse_latin_blocks(text)
    if len(squares) != 1:
        raise ParseError(f"expected one square, found {len(squares)}")
    return squares[0]


def parse_latin2(text: str) -> tuple[LatinSquare, LatinSquare]:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    (n,) = _ints(_header(lines[0], "latin2", 1), "header")
    body = _take(lines, 1, n, "latin2")
    if len(lines) != n + 1:
        raise ParseError("trailing lines after latin2 block")
    first, second = [], []
    for tokens in body:
        if len(tokens) != n:
            raise ParseError(f"latin2 rows must have {n} pairs")
        ra, rb = [], []
        for tok in tokens:
            if ":" in tok:
                a, _, b = tok.partition(":")
            elif len(tok) == 2:
                a, b = tok
            else:
                raise ParseError(f"bad pair {tok!r}")
            ra.append(a)
            rb.append(b)
        first.append(_ints(ra, "latin2 row"))
        second.append(_ints(rb, "latin2 row"))
    return _square(_shift(first, n)), _square(_shift(second, n))


def dump_latin(sq: LatinSquare) -> str:
    return f"latin {sq.n}\n" + "".join(" ".join(map(str, r)) + "\n" for r in sq.cells)


def dump_mols(squares: MolsSet | Iterable[LatinSquare]) -> str:
    sqs = squares.squares if isinstance(squares, MolsSet) else squares
    return "".join(dump_latin(s) for s in sqs)


def dump_latin2(a: LatinSquare, b: LatinSquare) -> str:
    rows = [" ".join(f"{x}:{y}" for x, y in zip(ra, rb)) for ra, rb in zip(a.cells, b.cells)]
    return f"latin2 {a.n}\n" + "\n".join(rows) + "\n"


def parse_mols(text: str) -> MolsSet:
    squares = parse_latin_blocks(text)
    if not squares:
        raise ParseError("no squares found")
    return MolsSet(squares[0].n, tuple(squares))


# ---------------------------------------------------------------------------
# orthogonal arrays


def parse_oa(text: str) -> OrthogonalArray:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    runs, k, n, m = _ints(_header(lines[0], "oa", 4), "header")
    body = _take(lines, 1, runs, "oa")
    if len(lines) != runs + 1:
        raise ParseError("trailing lines after oa rows")
    try:
        return OrthogonalArray(runs, k, n, m, tuple(tuple(_ints(t, "oa row")) for t in body))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dump_oa(oa: OrthogonalArray) -> str:
    out = [f"oa {oa.runs} {oa.factors} {oa.levels} {oa.strength}"]
    out += [" ".join(map(str, r)) for r in oa.rows]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# MODS descriptors


@dataclass(frozen=True)
class ModsDescriptor:
    groupspec: str
    group: GroupTable
    spec: AbelianSpec | None
    m: int
    embeddings: tuple[Embedding, ...]

    def build(self, cap: int = DEFAULT_POINT_CAP) -> ModsSystem:
        return mods_build(self.group, self.m, self.embeddings, spec=self.spec, cap=cap)


def parse_mods(text: str) -> ModsDescriptor:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    gtext, mtext, ctext = _header(lines[0], "mods", 3)
    m, count = _ints([mtext, ctext], "header")
    group, spec = group_from_spec(gtext)
    n = group.order
    body = _take(lines, 1, count, "mods")
    if len(lines) != count + 1:
        raise ParseError("trailing lines after embeddings")
    embs = []
    for tokens in body:
        kind, vals = tokens[0], _ints(tokens[1:], f"{tokens[0]} embedding")
        if kind == "coord":
            if len(vals) != 1:
                raise ParseError("coord takes one index")
            embs.append(Embedding.coordinate(vals[0]))
        elif kind == "diag":
            if len(vals) != (m - 1) * n:
                raise ParseError(f"diag needs {(m - 1) * n} entries")
            embs.append(Embedding.diagonal([vals[i * n:(i + 1) * n] for i in range(m - 1)]))
        elif kind == "mat":
            if spec is None or not spec.is_homocyclic:
                raise ParseError("mat embeddings need a homocyclic group spec")
            d = spec.rank
            if len(vals) != m * d * d:
                raise ParseError(f"mat needs {m * d * d} entries")
            embs.append(Embedding.from_matrix([vals[i * d:(i + 1) * d] for i in range(m * d)]))
        else:
            raise ParseError(f"unknown embedding kind {kind!r}")
    return ModsDescriptor(gtext, group, spec, m, tuple(embs))


def dump_mods(groupspec: str | AbelianSpec, m: int, embeddings: Sequence[Embedding]) -> str:
    if isinstance(groupspec, AbelianSpec):
        groupspec = format_group_spec(groupspec)
    out = [f"mods {groupspec} {m} {len(embeddings)}"]
    for e in embeddings:
        if e.kind == "coord":
            out.append(f"coord {e.index}")
        elif e.kind == "diag":
            out.append("diag " + " ".join(str(v) for perm in e.automorphisms for v in perm))
        else:
            out.append("mat " + " ".join(str(v) for row in e.matrix for v in row))
    return "\n".join(out) + "\n"
