"""Command-line front end: descriptor files in and reports out.

Descriptor files are flat key-value text.  Each non-blank line outside a
comment is `key = value`, split on the first equals sign so presentation
strings may themselves contain one.  Grammar:

    family = bsbar | metabelian_h31 | lattice_by_z | asc_hnn_kb
             | rank_one_q | affine_q2
    name = <identifier>                        (optional)
    notes = <free text>                        (optional)
    presentation = < g1, g2 | w1 = w2, ... >   (optional, one line)

    # bsbar
    m = <int>        n = <int>
    # metabelian_h31
    m, n, p, q = <int>      e = <rational like 1 or 2/3>
    # lattice_by_z
    matrix = <four space-separated rationals, row major>
    # asc_hnn_kb
    e, f, d = <int>
    # rank_one_q
    generators = <space-separated rationals>
    # affine_q2
    generators = <space-separated generator names>
    gen.<name>.linear = <four rationals, row major>
    gen.<name>.translation = <two rationals>

Exit codes: 0 success, 2 input error, 3 internal invariant violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .classify import ClassificationReport, ClassifyError, InvariantViolation, classify
from .families import (
    AffineMap2,
    AffineQ2,
    AscHNNKb,
    BrittonElem,
    BSbar,
    BSbarElem,
    GroupDescriptor,
    KbElem,
    LatticeByZ,
    LatticeElem,
    MetabelianH31,
    MetaH31Elem,
    RankOneQ,
    ops_for,
)
from .fixtures import FIXTURES, fixture_named
from .rationals import Mat2Q, format_rational, parse_rational
from .simplify import SimplifyError, expand_standard_form, standardize
from .verify import TrialConfig, run_harness
from .words import (
    ParseError,
    Presentation,
    format_presentation,
    format_word,
    parse_presentation,
    parse_word,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_VERIFY = 4

_FAMILY_TAGS = (
    "bsbar",
    "metabelian_h31",
    "lattice_by_z",
    "asc_hnn_kb",
    "rank_one_q",
    "affine_q2",
)


class DescriptorFileError(ValueError):
    """Malformed descriptor file; the message carries a line reference."""


@dataclass(frozen=True)
class DescriptorFile:
    descriptor: GroupDescriptor
    name: Optional[str] = None
    notes: Optional[str] = None
    presentation: Optional[Presentation] = None


# --- parsing ------------------------------------------------------------------


def _split_lines(text: str) -> list[tuple[int, str, str]]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DescriptorFileError(
                f"line {lineno}: expected 'key = value', got {line!r}"
            )
        key, value = line.split("=", 1)
        entries.append((lineno, key.strip(), value.strip()))
    return entries


def _take(fields: dict[str, tuple[int, str]], key: str) -> str:
    if key not in fields:
        raise DescriptorFileError(f"missing required key {key!r}")
    _, value = fields.pop(key)
    return value


def _parse_int(key: str, value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise DescriptorFileError(
            f"line {lineno}: key {key!r} expects an integer, got {value!r}"
        ) from None


def _parse_rational_field(key: str, value: str, lineno: int) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError:
        raise DescriptorFileError(
            f"line {lineno}: key {key!r} expects a rational, got {value!r}"
        ) from None


def _parse_rational_list(
    key: str, value: str, lineno: int, count: Optional[int] = None
) -> list[Fraction]:
    parts = value.split()
    if count is not None and len(parts) != count:
        raise DescriptorFileError(
            f"line {lineno}: key {key!r} expects {count} rationals, "
            f"got {len(parts)}"
        )
    return [_parse_rational_field(key, p, lineno) for p in parts]


def parse_descriptor_text(text: str) -> DescriptorFile:
    entries = _split_lines(text)
    fields: dict[str, tuple[int, str]] = {}
    for lineno, key, value in entries:
        if key in fields:
            raise DescriptorFileError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = (lineno, value)

    if "family" not in fields:
        raise DescriptorFileError("missing required key 'family'")
    family_line, family = fields.pop("family")
    if family not in _FAMILY_TAGS:
        raise DescriptorFileError(
            f"line {family_line}: unknown family {family!r}; expected one of "
            + ", ".join(_FAMILY_TAGS)
        )

    name = fields.pop("name", (0, None))[1]
    notes = fields.pop("notes", (0, None))[1]
    presentation_text = fields.pop("presentation", (0, None))[1]
    presentation = None
    if presentation_text is not None:
        try:
            presentation = parse_presentation(presentation_text)
        except ParseError as exc:
            raise DescriptorFileError(f"presentation: {exc}") from None

    def intval(key: str) -> int:
        lineno, value = fields.get(key, (0, ""))
        return _parse_int(key, _take(fields, key), lineno)

    try:
        if family == "bsbar":
            desc: GroupDescriptor = BSbar(intval("m"), intval("n"))
        elif family == "metabelian_h31":
            m, n, p, q = (intval(k) for k in ("m", "n", "p", "q"))
            lineno, _ = fields.get("e", (0, ""))
            e = _parse_rational_field("e", _take(fields, "e"), lineno)
            desc = MetabelianH31(m, n, p, q, e)
        elif family == "lattice_by_z":
            lineno, _ = fields.get("matrix", (0, ""))
            vals = _parse_rational_list(
                "matrix", _take(fields, "matrix"), lineno, 4
            )
            desc = LatticeByZ(Mat2Q.of(*vals))
        elif family == "asc_hnn_kb":
            desc = AscHNNKb(intval("e"), intval("f"), intval("d"))
        elif family == "rank_one_q":
            lineno, _ = fields.get("generators", (0, ""))
            vals = _parse_rational_list(
                "generators", _take(fields, "generators"), lineno
            )
            desc = RankOneQ(tuple(vals))
        else:
            desc = _parse_affine(fields)
    except ValueError as exc:
        if isinstance(exc, DescriptorFileError):
            raise
        raise DescriptorFileError(f"invalid {family} parameters: {exc}") from None

    if fields:
        stray = min(fields.items(), key=lambda kv: kv[1][0])
        raise DescriptorFileError(
            f"line {stray[1][0]}: unknown key {stray[0]!r} for family {family!r}"
        )
    return DescriptorFile(desc, name, notes, presentation)


def _parse_affine(fields: dict[str, tuple[int, str]]) -> AffineQ2:
    lineno, _ = fields.get("generators", (0, ""))
    names = _take(fields, "generators").split()
    if not names:
        raise DescriptorFileError(
            f"line {lineno}: affine_q2 needs at least one generator name"
        )
    gens = []
    for gname in names:
        lin_key = f"gen.{gname}.linear"
        tr_key = f"gen.{gname}.translation"
        lin_line, _ = fields.get(lin_key, (0, ""))
        lin = _parse_rational_list(lin_key, _take(fields, lin_key), lin_line, 4)
        tr_line, _ = fields.get(tr_key, (0, ""))
        tr = _parse_rational_list(tr_key, _take(fields, tr_key), tr_line, 2)
        gens.append(
            (gname, AffineMap2(Mat2Q.of(*lin), (tr[0], tr[1])))
        )
    return AffineQ2(tuple(gens))


def load_descriptor_file(path: str | Path) -> DescriptorFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DescriptorFileError(f"cannot read {p}: {exc.strerror}") from None
    return parse_descriptor_text(text)


# --- serialization and digests --------------------------------------------------


def _mat_values(m: Mat2Q) -> str:
    return " ".join(format_rational(v) for v in (m.a, m.b, m.c, m.d))


def serialize_descriptor_file(df: DescriptorFile) -> str:
    desc = df.descriptor
    lines: list[str] = []
    if isinstance(desc, BSbar):
        lines.append("family = bsbar")
    elif isinstance(desc, MetabelianH31):
        lines.append("family = metabelian_h31")
    elif isinstance(desc, LatticeByZ):
        lines.append("family = lattice_by_z")
    elif isinstance(desc, AscHNNKb):
        lines.append("family = asc_hnn_kb")
    elif isinstance(desc, RankOneQ):
        lines.append("family = rank_one_q")
    elif isinstance(desc, AffineQ2):
        lines.append("family = affine_q2")
    else:
        raise TypeError(f"unknown descriptor {desc!r}")
    if df.name is not None:
        lines.append(f"name = {df.name}")
    if df.notes is not None:
        lines.append(f"notes = {df.notes}")

    if isinstance(desc, BSbar):
        lines += [f"m = {desc.m}", f"n = {desc.n}"]
    elif isinstance(desc, MetabelianH31):
        lines += [
            f"m = {desc.m}",
            f"n = {desc.n}",
            f"p = {desc.p}",
            f"q = {desc.q}",
            f"e = {format_rational(desc.e)}",
        ]
    elif isinstance(desc, LatticeByZ):
        lines.append(f"matrix = {_mat_values(desc.matrix)}")
    elif isinstance(desc, AscHNNKb):
        lines += [f"e = {desc.e}", f"f = {desc.f}", f"d = {desc.d}"]
    elif isinstance(desc, RankOneQ):
        gens = " ".join(format_rational(g) for g in desc.generators)
        lines.append(f"generators = {gens}")
    else:
        names = " ".join(gname for gname, _ in desc.generators)
        lines.append(f"generators = {names}")
        for gname, gmap in desc.generators:
            lines.append(f"gen.{gname}.linear = {_mat_values(gmap.linear)}")
            tx, ty = gmap.translation
            lines.append(
                f"gen.{gname}.translation = "
                f"{format_rational(tx)} {format_rational(ty)}"
            )

    if df.presentation is not None:
        lines.append(f"presentation = {format_presentation(df.presentation)}")
    return "\n".join(lines) + "\n"


def input_digest(df: DescriptorFile) -> str:
    """Digest of the mathematical payload: descriptor plus presentation,
    independent of cosmetic name and notes."""
    canonical = serialize_descriptor_file(
        DescriptorFile(df.descriptor, None, None, df.presentation)
    )
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


def _envelope(df: DescriptorFile, report: dict, notes: list[str]) -> dict:
    return {
        "tool": "hirsch3",
        "version": __version__,
        "input_digest": input_digest(df),
        "report": report,
        "notes": notes,
    }


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# --- element rendering ----------------------------------------------------------


def format_element(desc: GroupDescriptor, g) -> str:
    """Normal form of an element in the fixed letter order of its family."""
    if isinstance(desc, BSbar):
        assert isinstance(g, BSbarElem)
        return _syllables(("a", g.u), ("t", g.k))
    if isinstance(desc, MetabelianH31):
        assert isinstance(g, MetaH31Elem)
        return _syllables(("a", g.x), ("t", g.i), ("u", g.j))
    if isinstance(desc, LatticeByZ):
        assert isinstance(g, LatticeElem)
        return _syllables(("a", g.v[0]), ("b", g.v[1]), ("t", g.k))
    if isinstance(desc, AscHNNKb):
        assert isinstance(g, BrittonElem)
        core = _syllables(("x", g.g.a), ("y", g.g.b))
        parts = []
        if g.i:
            parts.append(f"s^-{g.i}")
        if core != "1":
            parts.append(core)
        if g.j:
            parts.append(f"s^{g.j}")
        return " ".join(parts) if parts else "1"
    if isinstance(desc, RankOneQ):
        return format_rational(g)
    if isinstance(desc, AffineQ2):
        assert isinstance(g, AffineMap2)
        tx, ty = g.translation
        return (
            f"linear [{_mat_values(g.linear)}], "
            f"translation ({format_rational(tx)}, {format_rational(ty)})"
        )
    raise TypeError(f"unknown descriptor {desc!r}")


def _syllables(*pairs: tuple[str, object]) -> str:
    parts = []
    for name, exp in pairs:
        if exp == 0:
            continue
        if exp == 1:
            parts.append(name)
        elif isinstance(exp, Fraction) and exp.denominator != 1:
            parts.append(f"{name}^({format_rational(exp)})")
        else:
            parts.append(f"{name}^{exp}")
    return " ".join(parts) if parts else "1"


# --- notes ----------------------------------------------------------------------


def classification_notes(report: ClassificationReport) -> list[str]:
    """Short statements of the structural facts the report relies on."""
    notes = ["all invariants are computed exactly over the rationals"]
    ct = report.constructible_type
    if ct is not None:
        kind = ct.to_json()["kind"]
        if kind == "Type1":
            notes.append(
                "a positive cone point of the dilation data yields an "
                "ascending extension with integral class "
                f"{ct.n}, hence a finite presentation"
            )
        elif kind == "Type2":
            notes.append(
                "the action is conjugate to an integral non-unimodular "
                "matrix, an ascending extension of a rank-two lattice"
            )
        else:
            notes.append(
                "a unimodular integral action makes the group polycyclic "
                "and the fundamental group of a closed three-manifold"
            )
    elif report.hirsch_length == 3 and not report.finitely_presentable:
        notes.append(
            "no positive cone of the dilation data meets an integral "
            "class, so the group admits no finite presentation"
        )
    if report.hirsch_length == 3:
        notes.append(
            "derived length, coherence, and dimension bounds follow from "
            "the radical and its infinite cyclic or dihedral quotient data"
        )
    return notes


def verification_notes(report_json: dict) -> list[str]:
    notes = [
        "randomized checks with a fixed seed; passing is evidence, "
        "not certification"
    ]
    resource = [
        c["name"]
        for c in report_json["checks"]
        if "budget" in c.get("note", "") or "window" in c.get("note", "")
    ]
    if resource:
        notes.append(
            "resource-bounded checks (see notes): " + ", ".join(resource)
        )
    return notes


# --- report rendering -------------------------------------------------------------


def _render_text(df: DescriptorFile, report: ClassificationReport) -> str:
    data = report.to_json()
    ct = data["constructible_type"]
    if ct is None:
        ct_text = "none"
    elif ct["kind"] == "Type1":
        ct_text = f"Type1 (n = {ct['n']})"
    elif ct["kind"] == "Type2":
        ct_text = f"Type2 (base {ct['base']})"
    else:
        ct_text = "Type3"
    md = data["manifold_dim"]
    if md["exact"] is not None:
        md_text = str(md["exact"])
    elif md["upper"] is not None:
        md_text = f"[{md['lower']}, {md['upper']}] (open)"
    else:
        md_text = f">= {md['lower']}"
    quotient = data["quotient"]["tag"] if data["quotient"] else "none"
    lines = [
        f"hirsch length:            {data['hirsch_length']}",
        f"radical:                  hirsch {data['radical']['hirsch']}, "
        + ("abelian" if data["radical"]["is_abelian"] else "nonabelian")
        + f", {data['radical']['module_description']}",
        f"radical quotient:         {quotient}",
        f"derived length:           {data['derived_length']}",
        f"polycyclic:               {_yn(data['polycyclic'])}",
        f"finitely presentable:     {_yn(data['finitely_presentable'])}",
        f"constructible:            {_yn(data['constructible'])}",
        f"constructible type:       {ct_text}",
        f"FP2:                      {data['fp2']['value']}",
        f"coherent:                 {data['coherent']['value']}",
        f"cohomological dimension:  {data['cohomological_dimension']}",
        f"minimax:                  {_yn(data['minimax']['value'])}"
        + (
            " (sections " + ", ".join(data["minimax"]["sections"]) + ")"
            if data["minimax"]["sections"]
            else ""
        ),
        f"manifold dimension:       {md_text}",
    ]
    header = []
    if df.name:
        header.append(f"name:                     {df.name}")
    return "\n".join(header + lines) + "\n"


def _yn(value: bool) -> str:
    return "true" if value else "false"


# --- commands -----------------------------------------------------------------


def cmd_classify(args) -> int:
    df = load_descriptor_file(args.path)
    try:
        report = classify(df.descriptor)
    except ClassifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        data = _envelope(df, report.to_json(), classification_notes(report))
        sys.stdout.write(_dump_json(data))
    else:
        sys.stdout.write(_render_text(df, report))
    return EXIT_OK


def cmd_word_eq(args) -> int:
    df = load_descriptor_file(args.path)
    ops = ops_for(df.descriptor)
    names = ops.generator_names
    try:
        w1 = parse_word(args.word1, names)
        w2 = parse_word(args.word2, names)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    g1 = ops.of_word(w1)
    g2 = ops.of_word(w2)
    verdict = "equal" if g1 == g2 else "unequal"
    print(verdict)
    print(f"  {format_word(w1)}  =  {format_element(df.descriptor, g1)}")
    print(f"  {format_word(w2)}  =  {format_element(df.descriptor, g2)}")
    return EXIT_OK


def cmd_simplify(args) -> int:
    p = Path(args.path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DescriptorFileError(f"cannot read {p}: {exc.strerror}") from None
    stripped = text.strip()
    if stripped.startswith("<"):
        pres_text: Optional[str] = stripped
    else:
        df = parse_descriptor_text(text)
        pres_text = None
        if df.presentation is not None:
            pres_text = format_presentation(df.presentation)
    if pres_text is None:
        print("error: the file carries no presentation", file=sys.stderr)
        return EXIT_INPUT
    try:
        pres = parse_presentation(pres_text)
        sf = standardize(pres)
    except (ParseError, SimplifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"standard form: m={sf.m} n={sf.n} p={sf.p} q={sf.q} c={sf.c}")
    print(format_presentation(expand_standard_form(sf)))
    return EXIT_OK


def cmd_verify(args) -> int:
    df = load_descriptor_file(args.path)
    cfg = TrialConfig(seed=args.seed, trials=args.trials)
    report = run_harness(
        df.descriptor, cfg, relators=df.presentation, window=args.window
    )
    data = report.to_json()
    sys.stdout.write(_dump_json(_envelope(df, data, verification_notes(data))))
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for fixture in FIXTURES:
            print(f"{fixture.name:18s} {fixture.note}")
        return EXIT_OK
    if not args.fixture:
        print("error: emit needs a fixture name", file=sys.stderr)
        return EXIT_INPUT
    try:
        fixture = fixture_named(args.fixture)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    df = DescriptorFile(
        fixture.descriptor, fixture.name, fixture.note, fixture.presentation
    )
    out = Path(args.dir or ".") / f"{fixture.name}.toml"
    out.write_text(serialize_descriptor_file(df))
    print(out)
    return EXIT_OK


# --- entry point -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hirsch3",
        description="Classify, query, and verify torsion-free solvable "
        "groups of Hirsch length at most three.",
    )
    parser.add_argument(
        "--version", action="version", version=f"hirsch3 {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a descriptor file")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("word-eq", help="decide equality of two words")
    p.add_argument("path")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(run=cmd_word_eq)

    p = sub.add_parser(
        "simplify", help="collapse a presentation to standard form"
    )
    p.add_argument("path")
    p.set_defaults(run=cmd_simplify)

    p = sub.add_parser("verify", help="run the randomized harness")
    p.add_argument("path")
    p.add_argument("--trials", type=int, default=150)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=12)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("examples", help="list or emit shipped fixtures")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("fixture", nargs="?")
    p.add_argument("--dir", default=None)
    p.set_defaults(run=cmd_examples)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except DescriptorFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
