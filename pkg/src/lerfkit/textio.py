"""Line-oriented text formats: problem files, graphs and certificates.

A problem file is split into ``[section]`` blocks; ``#`` starts a comment.

    [alphabet]        generator symbols, e.g. ``a b``
    [double]          factor alphabet line, optional primed alphabet line, then ``w``
    [subgroup]        one word per line (``1`` is the identity)
    [element]         a single word
    [presentation]    ``gens: a c`` and any number of ``rel: AcaCC`` lines
    [graph]           ``vertices N``, ``basepoint B``, then ``src label dst`` lines

Certificates are written as ``key value`` lines in a fixed order, so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .doubles import DoubleSpec
from .errors import LerfError, ParseError, UnknownLetter
from .free_cover import FreeCertificate
from .graphs import LabeledGraph
from .oracle import Presentation
from .pipeline import DoubleCertificate, StageRecord
from .words import Alphabet, Word, reduce

SECTIONS = ("alphabet", "double", "subgroup", "element", "presentation", "graph")
_HEADER = re.compile(r"\[([A-Za-z_-]+)\]")
_TOKEN = re.compile(r"[A-Za-z](?:'|′)*")


@dataclass
class Problem:
    alphabet: Optional[Alphabet] = None
    spec: Optional[DoubleSpec] = None
    subgroup: Optional[list] = None
    element: Optional[Word] = None
    presentation: Optional[Presentation] = None
    graph: Optional[LabeledGraph] = None

    @property
    def word_alphabet(self) -> Optional[Alphabet]:
        return self.spec.alphabet if self.spec is not None else self.alphabet


@dataclass
class _Line:
    number: int
    column: int
    text: str


@dataclass
class _Section:
    name: str
    number: int
    lines: list = field(default_factory=list)


def _split(text: str) -> dict:
    sections = {}
    current = None
    for number, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.strip()
        if not stripped:
            continue
        column = len(body) - len(body.lstrip()) + 1
        m = _HEADER.fullmatch(stripped)
        if m:
            name = m.group(1).lower()
            if name not in SECTIONS:
                raise ParseError(f"unknown section [{name}]", number, column)
            if name in sections:
                raise ParseError(f"section [{name}] given twice", number, column)
            current = sections[name] = _Section(name, number)
            continue
        if current is None:
            raise ParseError("text before the first section header", number, column)
        current.lines.append(_Line(number, column, stripped))
    return sections


def parse_word(alphabet: Alphabet, text: str, line: int = None, column: int = 1) -> Word:
    """Parse and freely reduce a word, reporting the position of a bad symbol."""
    text = text.strip()
    if text == "1":
        return ()
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        try:
            out.append(alphabet.letter(m.group(0)))
        except UnknownLetter:
            raise ParseError(f"unknown letter {m.group(0)!r}", line, column + pos) from None
        pos = m.end()
    return reduce(out)


def _alphabet(line: _Line) -> Alphabet:
    try:
        return Alphabet.of(line.text)
    except ValueError as exc:
        raise ParseError(str(exc), line.number, line.column) from None


def _single(section: _Section) -> _Line:
    if len(section.lines) != 1:
        raise ParseError(f"[{section.name}] takes exactly one line", section.number)
    return section.lines[0]


def _parse_double(section: _Section) -> DoubleSpec:
    lines = section.lines
    if len(lines) not in (2, 3):
        raise ParseError("[double] takes the factor alphabet, optionally its mirror, then w", section.number)
    x = _alphabet(lines[0])
    if len(lines) == 3:
        y = _alphabet(lines[1])
        if y.letters != tuple(s + "'" for s in x.letters):
            raise ParseError("mirror alphabet must be the primed factor alphabet", lines[1].number,
                             lines[1].column)
    w = parse_word(x, lines[-1].text, lines[-1].number, lines[-1].column)
    return DoubleSpec(x, w)


def _parse_presentation(section: _Section) -> Presentation:
    gens, rels = None, []
    for line in section.lines:
        key, _, value = line.text.partition(":")
        key = key.strip().lower()
        start = line.column + len(line.text) - len(value)
        if key in ("gens", "generators"):
            gens = _alphabet(_Line(line.number, start, value.strip()))
        elif key in ("rel", "rels", "relator", "relators"):
            if gens is None:
                raise ParseError("relator before gens", line.number, line.column)
            for m in re.finditer(r"\S+", value):
                rels.append(parse_word(gens, m.group(0), line.number, start + m.start()))
        else:
            raise ParseError(f"expected 'gens:' or 'rel:', got {key!r}", line.number, line.column)
    if gens is None:
        raise ParseError("[presentation] needs a gens: line", section.number)
    return Presentation(gens, tuple(rels))


def _int(token: str, line: _Line) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line.number, line.column) from None


def _parse_graph(section: _Section, alphabet: Alphabet) -> LabeledGraph:
    n, base, edges = None, 0, []
    for line in section.lines:
        parts = line.text.split()
        if parts[0] == "vertices" and len(parts) == 2:
            n = _int(parts[1], line)
        elif parts[0] == "basepoint" and len(parts) == 2:
            base = _int(parts[1], line)
        elif len(parts) == 3:
            try:
                x = alphabet.letter(parts[1])
            except UnknownLetter:
                raise ParseError(f"unknown letter {parts[1]!r}", line.number,
                                 line.column + line.text.index(parts[1], len(parts[0]))) from None
            edges.append((_int(parts[0], line), x, _int(parts[2], line), line))
        else:
            raise ParseError("expected 'vertices N', 'basepoint B' or 'src label dst'", line.number, line.column)
    if n is None:
        raise ParseError("[graph] needs a 'vertices N' line", section.number)
    if not 0 <= base < n:
        raise ParseError(f"basepoint {base} is not a vertex", section.number)
    g = LabeledGraph(alphabet, n, base)
    for u, x, v, line in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError("edge endpoint is not a vertex", line.number, line.column)
        g.add_edge(u, x, v)
    return g


def parse_input(text: str) -> Problem:
    sections = _split(text)
    p = Problem()
    if "alphabet" in sections:
        p.alphabet = _alphabet(_single(sections["alphabet"]))
    if "double" in sections:
        p.spec = _parse_double(sections["double"])
        if p.alphabet is not None and p.alphabet != p.spec.x_alphabet:
            raise ParseError("[alphabet] disagrees with [double]", sections["alphabet"].number)
    if "presentation" in sections:
        p.presentation = _parse_presentation(sections["presentation"])
    alphabet = p.word_alphabet or (p.presentation.generators if p.presentation else None)
    for name in ("subgroup", "element", "graph"):
        if name in sections and alphabet is None:
            raise ParseError(f"[{name}] needs an [alphabet], [double] or [presentation] section",
                             sections[name].number)
    if "subgroup" in sections:
        p.subgroup = [parse_word(alphabet, ln.text, ln.number, ln.column) for ln in sections["subgroup"].lines]
    if "element" in sections:
        ln = _single(sections["element"])
        p.element = parse_word(alphabet, ln.text, ln.number, ln.column)
    if "graph" in sections:
        p.graph = _parse_graph(sections["graph"], alphabet)
    return p


def format_graph(g: LabeledGraph, spec: Optional[DoubleSpec] = None) -> str:
    """A problem file holding just the alphabet (or double) and the graph."""
    if spec is not None:
        head = ["[double]", " ".join(spec.x_alphabet.letters), spec.x_alphabet.token(spec.w)]
    else:
        head = ["[alphabet]", " ".join(g.alphabet.letters)]
    lines = head + ["[graph]", f"vertices {g.num_vertices}", f"basepoint {g.basepoint}"]
    lines += [f"{u} {g.alphabet.symbol(x)} {v}" for u, x, v in g.positive_edges()]
    return "\n".join(lines) + "\n"


def format_certificate(cert) -> str:
    if isinstance(cert, FreeCertificate):
        alphabet = cert.alphabet
        lines = ["certificate free", "alphabet " + " ".join(alphabet.letters)]
    else:
        spec = cert.spec
        alphabet = spec.alphabet
        lines = ["certificate double", "alphabet " + " ".join(spec.x_alphabet.letters),
                 "w " + spec.x_alphabet.token(spec.w)]
    g = cert.cover
    lines += [f"vertices {g.num_vertices}", f"basepoint {cert.basepoint}"]
    lines += [f"edge {u} {alphabet.symbol(x)} {v}" for u, x, v in g.positive_edges()]
    lines += [f"generator {alphabet.token(s)}" for s in cert.subgroup_generators]
    lines += [f"witness {alphabet.token(cert.witness)}", f"witness_end {cert.witness_end}"]
    if isinstance(cert, DoubleCertificate):
        lines += [f"trail {r.format()}" for r in cert.trail]
    return "\n".join(lines) + "\n"


def _trail_record(text: str, number: int) -> StageRecord:
    parts = text.split()
    try:
        stage = parts[0]
        fields = dict(p.split("=", 1) for p in parts[1:])
        v, e = int(fields.pop("V")), int(fields.pop("E"))
    except (IndexError, KeyError, ValueError):
        raise ParseError("malformed trail record", number) from None
    params = tuple((k, int(x) if x.lstrip("-").isdigit() else x) for k, x in fields.items())
    return StageRecord(stage, v, e, params)


def parse_certificate(text: str):
    """Inverse of :func:`format_certificate`."""
    kind, alphabet, spec = None, None, None
    n, base, end, witness = None, None, None, None
    edges, gens, trail = [], [], []
    for number, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, _, value = body.partition(" ")
        value = value.strip()
        line = _Line(number, len(key) + 2, value)
        if key == "certificate":
            if value not in ("free", "double"):
                raise ParseError(f"unknown certificate kind {value!r}", number, line.column)
            kind = value
        elif key == "alphabet":
            alphabet = _alphabet(line)
        elif key == "w":
            if alphabet is None:
                raise ParseError("w before alphabet", number)
            try:
                spec = DoubleSpec(alphabet, parse_word(alphabet, value, number, line.column))
            except LerfError as exc:
                raise ParseError(str(exc), number, line.column) from None
        elif key == "vertices":
            n = _int(value, line)
        elif key == "basepoint":
            base = _int(value, line)
        elif key == "trail":
            trail.append(_trail_record(value, number))
        elif key in ("edge", "generator", "witness", "witness_end"):
            letters = spec.alphabet if spec is not None else alphabet
            if letters is None:
                raise ParseError(f"{key} before alphabet", number)
            if key == "edge":
                parts = value.split()
                if len(parts) != 3:
                    raise ParseError("expected 'edge src label dst'", number, line.column)
                try:
                    x = letters.letter(parts[1])
                except UnknownLetter:
                    raise ParseError(f"unknown letter {parts[1]!r}", number, line.column) from None
                edges.append((_int(parts[0], line), x, _int(parts[2], line), number))
            elif key == "generator":
                gens.append(parse_word(letters, value, number, line.column))
            elif key == "witness":
                witness = parse_word(letters, value, number, line.column)
            else:
                end = _int(value, line)
        else:
            raise ParseError(f"unknown certificate field {key!r}", number, 1)
    missing = [name for name, val in (("certificate", kind), ("alphabet", alphabet), ("vertices", n),
                                      ("basepoint", base), ("witness", witness), ("witness_end", end))
               if val is None]
    if kind == "double" and spec is None:
        missing.append("w")
    if missing:
        raise ParseError("certificate is missing " + ", ".join(missing))
    letters = spec.alphabet if kind == "double" else alphabet
    if n < 1:
        raise ParseError("certificate needs at least one vertex")
    g = LabeledGraph(letters, n, base if 0 <= base < n else 0)
    for u, x, v, number in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError("edge endpoint is not a vertex", number)
        g.add_edge(u, x, v)
    if kind == "free":
        return FreeCertificate(alphabet, g, base, gens, witness, end)
    return DoubleCertificate(spec, g, base, gens, witness, end, trail)
