"""Command-line front end.

Exit codes: 0 on success or verified-true, 1 on verified-false (the failing
witness is printed), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import formats
from .algebra import GaloisField, GaloisRing, parse_ring_spec
from .constructions import (
    FrobeniusData,
    arc_to_mods,
    cyclic_complement,
    frobenius_mogs,
    lifted_arc,
    nrc_arc,
    paper_example_8x8,
)
from .designs import (
    Embedding,
    ModsSystem,
    bounds_from_mods,
    known_bounds,
    mods_build,
    mods_regular_analyze,
    mods_verify,
    mols_from_oa,
    oa_failing_subset,
    oa_from_mods,
    oa_from_mols,
)
from .errors import DiagsemiError, NotLatin, ParseError
from .groups import (
    AbelianSpec,
    abelian_automorphism_count,
    build_table,
    format_group_spec,
    fpf_obstruction,
    fpf_triple_bruteforce,
    fpf_triple_witness,
    group_from_spec,
    parse_group_spec,
)
from .latin import MolsSet, are_orthogonal, group_profile, square_group_name
from .partitions import DEFAULT_POINT_CAP, is_cartesian

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 already; keep one-line output
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _kv(tokens: Sequence[str]) -> dict[str, str]:
    """``key:value`` tokens; the value may itself contain colons."""
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition(":")
        if not sep or not val:
            raise ParseError(f"expected key:value, got {tok!r}")
        out[key] = val
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str, report: Sequence[str]) -> None:
    """Write ``text`` to ``--output`` (report to stdout) or everything to
    stdout with the report as comment lines."""
    if args.output:
        Path(args.output).write_text(text)
        for line in report:
            print(line)
    else:
        sys.stdout.write("".join(f"# {line}\n" for line in report) + text)


def _mods_report(system: ModsSystem, jobs: int) -> tuple[bool, list[str]]:
    rep = mods_verify(system, jobs)
    k = len(system.embeddings)
    lines = [f"partitions: {k}, m = {system.m}, |Omega| = {system.power.order}"]
    if not rep.ok:
        lines.append(f"FAIL: partitions {list(rep.failing_subset)} are not a Cartesian lattice")
        return False, lines
    lines.append(f"ok: all {rep.checked} {system.m}-subsets are Cartesian")
    ra = mods_regular_analyze(system)
    if ra.skipped:
        lines.append(f"regular analysis skipped ({ra.skipped})")
    else:
        good = sum(e.ok for e in ra.entries)
        names = sorted({e.group_name or "?" for e in ra.entries})
        lines.append(f"regular analysis: {good}/{len(ra.entries)} subsets give verified fpf triples"
                     f" (group {', '.join(names)})")
    lines.extend(bounds_from_mods(system).lines())
    return True, lines


# ---------------------------------------------------------------------------
# construct


def _construct(args) -> int:
    target, opts = args.target, _kv(args.spec)
    if target in ("nrc", "lift"):
        key = "gf" if target == "nrc" else "gr"
        if key not in opts or "m" not in opts:
            raise ParseError(f"{target} needs {key}:<...> m:<m>")
        ring = parse_ring_spec(f"{key}:{opts[key]}", cap=args.cap)
        if target == "nrc" and not isinstance(ring, GaloisField):
            raise ParseError("nrc needs a field")
        if target == "lift" and not isinstance(ring, GaloisRing):
            raise ParseError("lift needs a Galois ring")
        m = int(opts["m"])
        arc = nrc_arc(ring, m) if target == "nrc" else lifted_arc(ring, m)
        system = arc_to_mods(arc, cap=args.cap)
        return _write_system(args, system, f"{len(arc)}-arc over {_ring_name(ring)}")
    if target == "semilattice":
        if "G" not in opts or "m" not in opts:
            raise ParseError("semilattice needs G:<groupspec> m:<m>")
        group, spec = group_from_spec(opts["G"])
        m = int(opts["m"])
        ident = list(range(group.order))
        embs = [Embedding.coordinate(i) for i in range(m)] + [Embedding.diagonal([ident] * (m - 1))]
        system = mods_build(group, m, embs, spec=spec, cap=args.cap)
        return _write_system(args, system, f"diagonal semilattice of {opts['G']}^{m}", opts["G"])
    if target == "frobenius":
        if "N" not in opts or "H" not in opts:
            raise ParseError("frobenius needs N:<groupspec> H:mult:<a>")
        spec = parse_group_spec(opts["N"])
        kind, _, a = opts["H"].partition(":")
        if not isinstance(spec, AbelianSpec) or kind != "mult" or not a.isdigit():
            raise ParseError("frobenius needs an abelian N and H:mult:<a>")
        fd = FrobeniusData(build_table(spec), cyclic_complement(spec, int(a)))
        ms = frobenius_mogs(fd)
        report = [f"{len(ms)} MOLS of order {ms.n} from N = {opts['N']}, |H| = {len(fd.complement)}"]
        _emit(args, formats.dump_mols(ms), report)
        return EXIT_OK
    if target == "example8":
        a, b = paper_example_8x8()
        _emit(args, formats.dump_latin2(a, b), ["two MOLS of order 8"])
        return EXIT_OK
    raise ParseError(f"unknown construction {target!r}")


def _ring_name(ring) -> str:
    if isinstance(ring, GaloisRing):
        return f"GR({ring.char},{ring.d})"
    return f"GF({ring.q})"


def _write_system(args, system: ModsSystem, title: str, groupspec: str | None = None) -> int:
    ok, lines = _mods_report(system, args.jobs)
    lines.insert(0, title)
    fmt = args.as_format or "mods"
    if fmt == "mods":
        name = groupspec or format_group_spec(system.spec)
        text = formats.dump_mods(name, system.m, system.embeddings)
    elif fmt == "partitions":
        text = formats.dump_partition_set(system.partitions)
    elif fmt == "oa":
        text = formats.dump_oa(oa_from_mods(system))
    else:
        raise ParseError(f"unknown output format {fmt!r}")
    _emit(args, text, lines)
    return EXIT_OK if ok else EXIT_FALSE


# ---------------------------------------------------------------------------
# verify


def _verify(args) -> int:
    text = _read(args.file)
    if args.target == "mols":
        try:
            squares = formats.parse_latin_blocks(text)
        except NotLatin as exc:
            print(f"FAIL: {exc}")
            return EXIT_FALSE
        for i in range(len(squares)):
            for j in range(i + 1, len(squares)):
                if not are_orthogonal(squares[i], squares[j]):
                    print(f"FAIL: squares {i} and {j} are not orthogonal")
                    return EXIT_FALSE
        print(f"ok: {len(squares)} Latin squares of order {squares[0].n}, pairwise orthogonal")
        return EXIT_OK
    if args.target == "mods":
        system = formats.parse_mods(text).build(cap=args.cap)
        ok, lines = _mods_report(system, args.jobs)
        print("\n".join(lines))
        return EXIT_OK if ok else EXIT_FALSE
    if args.target == "oa":
        oa = formats.parse_oa(text)
        bad = oa_failing_subset(oa, args.jobs)
        if bad is not None:
            print(f"FAIL: columns {list(bad)} miss or repeat a {oa.strength}-tuple")
            return EXIT_FALSE
        print(f"ok: OA({oa.runs},{oa.factors},{oa.levels},{oa.strength}) of index 1")
        return EXIT_OK
    if args.target == "cartesian":
        kind = formats.file_kind(text)
        members = ([formats.parse_partition(text)] if kind == "partition"
                   else list(formats.parse_partition_set(text).members))
        if is_cartesian(members):
            print(f"ok: {len(members)} partitions are the minimal elements of a Cartesian lattice")
            return EXIT_OK
        print(f"FAIL: {len(members)} partitions are not the minimal elements of a Cartesian lattice")
        return EXIT_FALSE
    raise ParseError(f"unknown verify target {args.target!r}")


# ---------------------------------------------------------------------------
# identify / classify / convert


def _profile_lines(members) -> list[str]:
    prof = group_profile(members)
    return [f"{i} {j} {k}: {name}" for (i, j, k), name in prof.items()]


def _identify(args) -> int:
    if args.target == "latin":
        if args.file == "example8":
            squares = list(paper_example_8x8())
        else:
            squares = formats.parse_latin_blocks(_read(args.file))
        if len(squares) == 1:
            print(square_group_name(squares[0]))
        else:
            print("\n".join(_profile_lines(MolsSet(squares[0].n, tuple(squares)).partitions())))
        return EXIT_OK
    if args.target == "profile":
        text = _read(args.file)
        kind = formats.file_kind(text)
        if kind == "partitions":
            members = formats.parse_partition_set(text).members
        elif kind == "mods":
            members = formats.parse_mods(text).build(cap=args.cap).partitions.members
        else:
            squares = formats.parse_latin_blocks(text)
            members = MolsSet(squares[0].n, tuple(squares)).partitions().members
        print("\n".join(_profile_lines(members)))
        return EXIT_OK
    raise ParseError(f"unknown identify target {args.target!r}")


def _classify(args) -> int:
    if args.target != "fpf":
        raise ParseError(f"unknown classification {args.target!r}")
    group, spec = group_from_spec(args.groupspec)
    if spec is None:
        triple = fpf_triple_bruteforce(group, args.aut_cap)
        print("yes: found by exhaustive search" if triple else "no: exhaustive search found no triple")
        return EXIT_OK
    bad = fpf_obstruction(spec)
    if bad is not None:
        mult = spec.cyclic_orders.count(bad)
        print(f"no: factor of order {bad} has multiplicity {mult}")
    else:
        triple = fpf_triple_witness(spec, cap=args.cap)
        print("yes: witness triple verified (fixed-point-free, product identity)")
        if args.witness:
            for name, a in zip("abc", triple):
                print(f"{name}: {' '.join(map(str, a.perm))}")
    if args.bruteforce:
        if abelian_automorphism_count(spec) > args.aut_cap:
            print(f"brute force skipped: |Aut| exceeds {args.aut_cap}")
        else:
            found = fpf_triple_bruteforce(group, args.aut_cap) is not None
            agree = found == (bad is None)
            print(f"brute force: {'yes' if found else 'no'} ({'agrees' if agree else 'DISAGREES'})")
            if not agree:
                return EXIT_FALSE
    return EXIT_OK


def _convert(args) -> int:
    text = _read(args.file)
    if args.target == "mods-to-oa":
        system = formats.parse_mods(text).build(cap=args.cap)
        rep = mods_verify(system, args.jobs)
        if not rep.ok:
            print(f"FAIL: partitions {list(rep.failing_subset)} are not a Cartesian lattice")
            return EXIT_FALSE
        out = formats.dump_oa(oa_from_mods(system))
    elif args.target == "oa-to-mols":
        oa = formats.parse_oa(text)
        bad = oa_failing_subset(oa)
        if bad is not None:
            print(f"FAIL: columns {list(bad)} miss or repeat a {oa.strength}-tuple")
            return EXIT_FALSE
        out = formats.dump_mols(mols_from_oa(oa))
    elif args.target == "mols-to-oa":
        out = formats.dump_oa(oa_from_mols(formats.parse_mols(text)))
    else:
        raise ParseError(f"unknown conversion {args.target!r}")
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _bounds(args) -> int:
    print("\n".join(known_bounds(args.m, args.n)) or "no static bounds recorded")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagsemi", description="Diagonal semilattices, MOLS, MODS and orthogonal arrays.")
    p.add_argument("--cap", type=int, default=DEFAULT_POINT_CAP, help="bound on |Omega| (default 10^6)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verification (default 1)")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a design")
    c.add_argument("target", choices=["nrc", "lift", "frobenius", "semilattice", "example8"])
    c.add_argument("spec", nargs="*", help="key:value tokens, e.g. gf:5 m:3")
    c.add_argument("-o", "--output")
    c.add_argument("--as", dest="as_format", choices=["mods", "partitions", "oa"],
                   help="output format for MODS constructions")
    c.set_defaults(func=_construct)

    v = sub.add_parser("verify", help="check a design file")
    v.add_argument("target", choices=["mols", "mods", "oa", "cartesian"])
    v.add_argument("file")
    v.set_defaults(func=_verify)

    i = sub.add_parser("identify", help="name the groups of Latin squares")
    i.add_argument("target", choices=["latin", "profile"])
    i.add_argument("file", help="input file, or 'example8'")
    i.set_defaults(func=_identify)

    k = sub.add_parser("classify", help="fixed-point-free triple classification")
    k.add_argument("target", choices=["fpf"])
    k.add_argument("groupspec")
    k.add_argument("--witness", action="store_true", help="print the witness permutations")
    k.add_argument("--bruteforce", action="store_true", help="cross-check by exhaustive search")
    k.add_argument("--aut-cap", type=int, default=2000)
    k.set_defaults(func=_classify)

    t = sub.add_parser("convert", help="convert between formats")
    t.add_argument("target", choices=["mods-to-oa", "oa-to-mols", "mols-to-oa"])
    t.add_argument("file")
    t.add_argument("-o", "--output")
    t.set_defaults(func=_convert)

    b = sub.add_parser("bounds", help="static known bounds on t(m,n)")
    b.add_argument("m", type=int)
    b.add_argument("n", type=int)
    b.set_defaults(func=_bounds)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DiagsemiError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
