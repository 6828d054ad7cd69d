"""Text input documents: quivers, algebras, modules, and Grassmannian data.

A document is a sequence of named blocks; the quiver block comes first and
declares the labels every later block may use:

    quiver {
      vertices: 1 2;
      arrows: a: 1 -> 1, b: 1 -> 2;
    }
    algebra {
      field: Q;                     # or F2, F3, ...
      max_len: 3;
      relations: [1*a*a];
    }
    module    { d: (1, 1); a: [[0]]; b: [[1]]; }
    point     { generators: [(1*b - 2*b*a).z1]; }
    weight    { theta: (-1, 1); }
    top       { mult: (1, 0); }
    dimvec    { d: (2, 1); }
    layering  { layers: [(1, 0), (1, 0), (0, 1)]; }
    skeleton  { elems: [e1.z1, a.z1, b*a.z1]; }
    direction { z1: (1*a).z1; }

Paths compose right to left ("b*a" means first a, then b), with "." accepted
as a synonym for "*"; e<v> names the length-zero path at vertex v. Point
generators are linear combinations of paths applied to the cover generators
z1, z2, ...; a generator mixing copies is a sum of such terms. In skeleton
elements the final ".z<r>" is always read as the copy marker, never as a
path component. Whitespace is free-form, "#" starts a comment, and every
block except point appears at most once; repeated point blocks form a list.

parse_input checks label references, composability, and shapes, reporting
positions as "line L, column C"; render_document writes the canonical form,
and parsing the rendered text reproduces the document exactly. The builders
at the bottom turn a parsed document into live algebra and module objects.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, build_algebra
from .errors import TypeMismatch, UnknownLabel
from .fields import Field, parse_field_name
from .grass import (
    EndoSpace,
    ProjectiveCover,
    Skeleton,
    SubmodulePoint,
    make_skeleton,
    point_from_generators,
)
from .linalg import zeros
from .quiver import Element, PathWord, Quiver, idempotent, make_quiver, path_from_labels
from .reps import Rep, rep_validate

# -- document shape -----------------------------------------------------------


@dataclass(frozen=True)
class PathRef:
    """A path named by its arrow labels in right-to-left order, or the
    idempotent at ``vertex`` when the label list is empty."""

    labels: tuple[str, ...]
    vertex: int | None = None

    def render(self) -> str:
        if not self.labels:
            return f"e{self.vertex}"
        return "*".join(self.labels)


@dataclass(frozen=True)
class PathTerm:
    coeff: Fraction
    ref: PathRef


Lincomb = tuple[PathTerm, ...]


@dataclass(frozen=True)
class GenPart:
    """One summand (lincomb).z<copy> of a point generator; copy is 1-based."""

    terms: Lincomb
    copy: int


Generator = tuple[GenPart, ...]
PointBlock = tuple[Generator, ...]


@dataclass(frozen=True)
class SkelElem:
    ref: PathRef
    copy: int


@dataclass(frozen=True)
class ModuleBlock:
    d: tuple[int, ...]
    mats: tuple[tuple[str, tuple[tuple[Fraction, ...], ...]], ...]


@dataclass(frozen=True)
class InputDocument:
    vertices: tuple[int, ...]
    arrows: tuple[tuple[str, int, int], ...]
    field: str
    max_len: int
    relations: tuple[Lincomb, ...]
    module: ModuleBlock | None = None
    points: tuple[PointBlock, ...] = ()
    weight: tuple[int, ...] | None = None
    top: tuple[int, ...] | None = None
    d: tuple[int, ...] | None = None
    layering: tuple[tuple[int, ...], ...] | None = None
    skeleton: tuple[SkelElem, ...] | None = None
    direction: tuple[tuple[int, Generator], ...] | None = None


# -- tokens -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, punct, eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[{}()\[\]:;,*+\-./])"
)


def _tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SyntaxError(
                f"line {line}, column {col}: unexpected character {text[pos]!r}"
            )
        kind = m.lastgroup
        raw = m.group()
        if kind == "arrow":
            toks.append(Token("punct", "->", line, col))
        elif kind in ("int", "ident", "punct"):
            toks.append(Token(kind, raw, line, col))
        nl = raw.count("\n")
        if nl:
            line += nl
            col = len(raw) - raw.rfind("\n")
        else:
            col += len(raw)
        pos = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


# -- parser -------------------------------------------------------------------

_BLOCKS = (
    "quiver",
    "algebra",
    "module",
    "point",
    "weight",
    "top",
    "dimvec",
    "layering",
    "skeleton",
    "direction",
)

_COPY_RE = re.compile(r"^z([1-9]\d*)$")
_IDEM_RE = re.compile(r"^e([1-9]\d*)$")


class _Parser:
    def __init__(self, text: str, known: InputDocument | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        if known is None:
            self.vertices: tuple[int, ...] = ()
            self.arrows: dict[str, tuple[int, int]] = {}
        else:
            self.vertices = known.vertices
            self.arrows = {lbl: (s, e) for lbl, s, e in known.arrows}

    # token plumbing

    def peek(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def fail(self, msg: str, tok: Token | None = None) -> None:
        t = tok or self.peek()
        raise SyntaxError(f"line {t.line}, column {t.col}: {msg}")

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.kind == "eof" or t.text != text:
            self.fail(f"expected {text!r}, found {t.text!r}" if t.kind != "eof" else f"expected {text!r}, found end of input")
        return self.advance()

    def expect_kind(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind}, found {t.text!r}")
        return self.advance()

    def bad_label(self, msg: str, tok: Token) -> None:
        raise UnknownLabel(f"line {tok.line}, column {tok.col}: {msg}")

    def bad_type(self, msg: str, tok: Token) -> None:
        raise TypeMismatch(f"line {tok.line}, column {tok.col}: {msg}")

    # scalars and tuples

    def parse_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        return sign * int(self.expect_kind("int").text)

    def parse_fraction(self) -> Fraction:
        num = self.parse_int()
        if self.at("/"):
            self.advance()
            den = int(self.expect_kind("int").text)
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_tuple(self) -> tuple[int, ...]:
        self.expect("(")
        out = [self.parse_int()]
        while self.at(","):
            self.advance()
            if self.at(")"):
                break
            out.append(self.parse_int())
        self.expect(")")
        return tuple(out)

    def vertex_tuple(self, tok: Token) -> tuple[int, ...]:
        t = self.parse_tuple()
        if len(t) != len(self.vertices):
            self.bad_type(
                f"expected {len(self.vertices)} entries, one per vertex, got {len(t)}",
                tok,
            )
        return t

    # paths and linear combinations

    def check_path(self, comps: list[Token]) -> PathRef:
        """Validate component labels and composability; text order is
        composition order, so comps[i] is applied after comps[i + 1]."""
        first = comps[0]
        if len(comps) == 1:
            m = _IDEM_RE.match(first.text)
            if m and first.text not in self.arrows:
                v = int(m.group(1))
                if v not in self.vertices:
                    self.bad_label(f"idempotent of undeclared vertex {v}", first)
                return PathRef((), v)
        for tok in comps:
            if tok.text not in self.arrows:
                if _IDEM_RE.match(tok.text):
                    self.bad_type(
                        f"idempotent {tok.text} cannot be composed with arrows", tok
                    )
                self.bad_label(f"unknown arrow label {tok.text!r}", tok)
        for later, earlier in zip(comps, comps[1:]):
            if self.arrows[later.text][0] != self.arrows[earlier.text][1]:
                self.bad_type(
                    f"path does not compose: {later.text} cannot follow {earlier.text}",
                    later,
                )
        return PathRef(tuple(t.text for t in comps))

    def parse_path(self) -> PathRef:
        comps = [self.expect_kind("ident")]
        while self.at("*") or self.at("."):
            self.advance()
            comps.append(self.expect_kind("ident"))
        return self.check_path(comps)

    def parse_lincomb(self) -> Lincomb:
        terms: list[PathTerm] = []
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        while True:
            if self.peek().kind == "int":
                coeff = self.parse_fraction()
                self.expect("*")
            else:
                coeff = Fraction(1)
            terms.append(PathTerm(sign * coeff, self.parse_path()))
            if self.at("+"):
                self.advance()
                sign = 1
            elif self.at("-"):
                self.advance()
                sign = -1
            else:
                return tuple(terms)

    def parse_copy(self) -> int:
        tok = self.expect_kind("ident")
        m = _COPY_RE.match(tok.text)
        if not m:
            self.fail(f"expected a copy marker z<r>, found {tok.text!r}", tok)
        return int(m.group(1))

    def parse_gen_part(self, sign: int) -> GenPart:
        self.expect("(")
        terms = self.parse_lincomb()
        self.expect(")")
        self.expect(".")
        copy = self.parse_copy()
        if sign < 0:
            terms = tuple(PathTerm(-t.coeff, t.ref) for t in terms)
        return GenPart(terms, copy)

    def parse_generator(self) -> Generator:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        parts = [self.parse_gen_part(sign)]
        while self.at("+") or self.at("-"):
            sign = 1 if self.advance().text == "+" else -1
            parts.append(self.parse_gen_part(sign))
        return tuple(parts)

    def parse_skel_elem(self) -> SkelElem:
        comps = [self.expect_kind("ident")]
        seps: list[str] = []
        while self.at("*") or self.at("."):
            seps.append(self.advance().text)
            comps.append(self.expect_kind("ident"))
        last = comps[-1]
        if len(comps) < 2 or seps[-1] != "." or not _COPY_RE.match(last.text):
            self.fail("skeleton element needs a trailing .z<r> copy marker", last)
        copy = int(_COPY_RE.match(last.text).group(1))
        return SkelElem(self.check_path(comps[:-1]), copy)

    # blocks

    def parse_quiver_block(self) -> tuple[tuple[int, ...], tuple[tuple[str, int, int], ...]]:
        self.expect("{")
        self.expect("vertices")
        self.expect(":")
        verts = [int(self.expect_kind("int").text)]
        while self.peek().kind == "int":
            verts.append(int(self.advance().text))
        self.expect(";")
        if tuple(verts) != tuple(range(1, len(verts) + 1)):
            raise TypeMismatch(
                f"vertices must be declared as 1..n in order, got {tuple(verts)}"
            )
        self.vertices = tuple(verts)
        arrows: list[tuple[str, int, int]] = []
        if self.at("arrows"):
            self.advance()
            self.expect(":")
            while True:
                lbl = self.expect_kind("ident")
                if lbl.text in self.arrows:
                    self.bad_type(f"arrow label {lbl.text!r} declared twice", lbl)
                self.expect(":")
                s = self.parse_int()
                self.expect("->")
                e = self.parse_int()
                for v in (s, e):
                    if v not in self.vertices:
                        self.bad_label(
                            f"arrow {lbl.text} uses undeclared vertex {v}", lbl
                        )
                arrows.append((lbl.text, s, e))
                self.arrows[lbl.text] = (s, e)
                if self.at(","):
                    self.advance()
                    continue
                break
            self.expect(";")
        self.expect("}")
        return self.vertices, tuple(arrows)

    def parse_algebra_block(self) -> tuple[str, int, tuple[Lincomb, ...]]:
        self.expect("{")
        field: str | None = None
        max_len: int | None = None
        relations: tuple[Lincomb, ...] = ()
        while not self.at("}"):
            key = self.expect_kind("ident")
            self.expect(":")
            if key.text == "field":
                tok = self.expect_kind("ident")
                try:
                    field = str(parse_field_name(tok.text))
                except ValueError as err:
                    self.bad_type(str(err), tok)
            elif key.text == "max_len":
                max_len = self.parse_int()
            elif key.text == "relations":
                self.expect("[")
                rels: list[Lincomb] = []
                if not self.at("]"):
                    rels.append(self.parse_lincomb())
                    while self.at(","):
                        self.advance()
                        rels.append(self.parse_lincomb())
                self.expect("]")
                relations = tuple(rels)
            else:
                self.fail(f"unknown algebra entry {key.text!r}", key)
            self.expect(";")
        self.expect("}")
        if max_len is None:
            self.fail("algebra block needs max_len")
        return field or "Q", max_len, relations

    def parse_module_block(self) -> ModuleBlock:
        self.expect("{")
        d: tuple[int, ...] | None = None
        mats: dict[str, tuple[tuple[Fraction, ...], ...]] = {}
        entries: list[Token] = []
        while not self.at("}"):
            key = self.expect_kind("ident")
            self.expect(":")
            if key.text == "d":
                d = self.vertex_tuple(key)
            else:
                if key.text not in self.arrows:
                    self.bad_label(f"unknown arrow label {key.text!r}", key)
                if key.text in mats:
                    self.bad_type(f"matrix for arrow {key.text!r} given twice", key)
                mats[key.text] = self.parse_matrix()
                entries.append(key)
            self.expect(";")
        self.expect("}")
        if d is None:
            self.fail("module block needs a dimension vector d")
        for key in entries:
            s, e = self.arrows[key.text]
            rows = mats[key.text]
            want_r, want_c = d[e - 1], d[s - 1]
            if len(rows) != want_r or any(len(r) != want_c for r in rows):
                self.bad_type(
                    f"matrix for {key.text} must be {want_r}x{want_c}", key
                )
        order = [lbl for lbl in self.arrows if lbl in mats]
        return ModuleBlock(d, tuple((lbl, mats[lbl]) for lbl in order))

    def parse_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        self.expect("[")
        rows: list[tuple[Fraction, ...]] = []
        while not self.at("]"):
            self.expect("[")
            row: list[Fraction] = []
            while not self.at("]"):
                row.append(self.parse_fraction())
                if self.at(","):
                    self.advance()
            self.expect("]")
            rows.append(tuple(row))
            if self.at(","):
                self.advance()
        self.expect("]")
        return tuple(rows)

    def parse_point_block(self) -> PointBlock:
        self.expect("{")
        self.expect("generators")
        self.expect(":")
        self.expect("[")
        gens = [self.parse_generator()]
        while self.at(","):
            self.advance()
            gens.append(self.parse_generator())
        self.expect("]")
        self.expect(";")
        self.expect("}")
        return tuple(gens)

    def parse_keyed_tuple_block(self, key: str) -> tuple[int, ...]:
        self.expect("{")
        tok = self.expect(key)
        self.expect(":")
        t = self.vertex_tuple(tok)
        self.expect(";")
        self.expect("}")
        return t

    def parse_layering_block(self) -> tuple[tuple[int, ...], ...]:
        self.expect("{")
        tok = self.expect("layers")
        self.expect(":")
        self.expect("[")
        rows = [self.vertex_tuple(tok)]
        while self.at(","):
            self.advance()
            rows.append(self.vertex_tuple(tok))
        self.expect("]")
        self.expect(";")
        self.expect("}")
        return tuple(rows)

    def parse_skeleton_block(self) -> tuple[SkelElem, ...]:
        self.expect("{")
        self.expect("elems")
        self.expect(":")
        self.expect("[")
        elems = [self.parse_skel_elem()]
        while self.at(","):
            self.advance()
            elems.append(self.parse_skel_elem())
        self.expect("]")
        self.expect(";")
        self.expect("}")
        return tuple(elems)

    def parse_direction_block(self) -> tuple[tuple[int, Generator], ...]:
        self.expect("{")
        out: dict[int, Generator] = {}
        while not self.at("}"):
            tok = self.expect_kind("ident")
            m = _COPY_RE.match(tok.text)
            if not m:
                self.fail(f"expected a generator key z<r>, found {tok.text!r}", tok)
            r = int(m.group(1))
            if r in out:
                self.bad_type(f"direction for z{r} given twice", tok)
            self.expect(":")
            out[r] = self.parse_generator()
            self.expect(";")
        self.expect("}")
        return tuple(sorted(out.items()))

    # documents

    def parse_document(self) -> InputDocument:
        head = self.expect_kind("ident")
        if head.text != "quiver":
            self.fail("the document must start with a quiver block", head)
        vertices, arrows = self.parse_quiver_block()
        fields: dict[str, object] = {
            "vertices": vertices,
            "arrows": arrows,
            "points": [],
        }
        seen: set[str] = set()
        while self.peek().kind != "eof":
            head = self.expect_kind("ident")
            name = head.text
            if name not in _BLOCKS:
                self.fail(f"unknown block {name!r}", head)
            if name != "point" and name in seen | {"quiver"}:
                self.fail(f"duplicate {name} block", head)
            seen.add(name)
            if name == "algebra":
                fields["field"], fields["max_len"], fields["relations"] = (
                    self.parse_algebra_block()
                )
            elif name == "module":
                fields["module"] = self.parse_module_block()
            elif name == "point":
                fields["points"].append(self.parse_point_block())
            elif name == "weight":
                fields["weight"] = self.parse_keyed_tuple_block("theta")
            elif name == "top":
                fields["top"] = self.parse_keyed_tuple_block("mult")
            elif name == "dimvec":
                fields["d"] = self.parse_keyed_tuple_block("d")
            elif name == "layering":
                fields["layering"] = self.parse_layering_block()
            elif name == "skeleton":
                fields["skeleton"] = self.parse_skeleton_block()
            else:
                fields["direction"] = self.parse_direction_block()
        if "max_len" not in fields:
            self.fail("the document needs an algebra block")
        fields["points"] = tuple(fields["points"])
        return InputDocument(**fields)  # type: ignore[arg-type]

    def parse_point_list(self) -> tuple[PointBlock, ...]:
        points: list[PointBlock] = []
        while self.peek().kind != "eof":
            head = self.expect_kind("ident")
            if head.text != "point":
                self.fail("a candidate file may contain only point blocks", head)
            points.append(self.parse_point_block())
        if not points:
            self.fail("the candidate file has no point blocks")
        return tuple(points)


def parse_input(text: str) -> InputDocument:
    """Parse a full document; positions in errors refer to the given text."""
    return _Parser(text).parse_document()


def parse_points(text: str, doc: InputDocument) -> tuple[PointBlock, ...]:
    """Parse a file of point blocks against the labels declared by doc."""
    return _Parser(text, known=doc).parse_point_list()


# -- rendering ----------------------------------------------------------------


def _render_lincomb(terms: Lincomb) -> str:
    parts: list[str] = []
    for k, t in enumerate(terms):
        c = t.coeff
        if k == 0:
            parts.append(f"{c}*{t.ref.render()}")
        elif c < 0:
            parts.append(f" - {-c}*{t.ref.render()}")
        else:
            parts.append(f" + {c}*{t.ref.render()}")
    return "".join(parts)


def _render_generator(gen: Generator) -> str:
    return " + ".join(f"({_render_lincomb(p.terms)}).z{p.copy}" for p in gen)


def _render_tuple(t: tuple[int, ...]) -> str:
    return "(" + ", ".join(str(x) for x in t) + ")"


def _render_matrix(rows: tuple[tuple[Fraction, ...], ...]) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


def render_document(doc: InputDocument) -> str:
    out: list[str] = []
    out.append("quiver {")
    out.append("  vertices: " + " ".join(str(v) for v in doc.vertices) + ";")
    if doc.arrows:
        decls = ", ".join(f"{lbl}: {s} -> {e}" for lbl, s, e in doc.arrows)
        out.append(f"  arrows: {decls};")
    out.append("}")
    out.append("algebra {")
    out.append(f"  field: {doc.field};")
    out.append(f"  max_len: {doc.max_len};")
    if doc.relations:
        rels = ", ".join(_render_lincomb(r) for r in doc.relations)
        out.append(f"  relations: [{rels}];")
    out.append("}")
    if doc.module is not None:
        out.append("module {")
        out.append(f"  d: {_render_tuple(doc.module.d)};")
        for lbl, rows in doc.module.mats:
            out.append(f"  {lbl}: {_render_matrix(rows)};")
        out.append("}")
    for block in doc.points:
        gens = ", ".join(_render_generator(g) for g in block)
        out.append("point {")
        out.append(f"  generators: [{gens}];")
        out.append("}")
    if doc.weight is not None:
        out.append(f"weight {{ theta: {_render_tuple(doc.weight)}; }}")
    if doc.top is not None:
        out.append(f"top {{ mult: {_render_tuple(doc.top)}; }}")
    if doc.d is not None:
        out.append(f"dimvec {{ d: {_render_tuple(doc.d)}; }}")
    if doc.layering is not None:
        rows = ", ".join(_render_tuple(r) for r in doc.layering)
        out.append(f"layering {{ layers: [{rows}]; }}")
    if doc.skeleton is not None:
        elems = ", ".join(f"{e.ref.render()}.z{e.copy}" for e in doc.skeleton)
        out.append(f"skeleton {{ elems: [{elems}]; }}")
    if doc.direction is not None:
        out.append("direction {")
        for r, gen in doc.direction:
            out.append(f"  z{r}: {_render_generator(gen)};")
        out.append("}")
    return "\n".join(out) + "\n"


# -- builders -----------------------------------------------------------------


def doc_quiver(doc: InputDocument) -> Quiver:
    return make_quiver(len(doc.vertices), list(doc.arrows))


def _path_word(quiver: Quiver, ref: PathRef) -> PathWord:
    if not ref.labels:
        return idempotent(ref.vertex)
    return path_from_labels(quiver, list(ref.labels))


def element_of(quiver: Quiver, field: Field, terms: Lincomb) -> Element:
    out = Element()
    for t in terms:
        p = _path_word(quiver, t.ref)
        c = field.add(out.terms.get(p, field.zero()), field.of_fraction(t.coeff))
        if field.is_zero(c):
            out.terms.pop(p, None)
        else:
            out.terms[p] = c
    return out


def doc_algebra(doc: InputDocument, field: Field | None = None) -> Algebra:
    if field is None:
        field = parse_field_name(doc.field)
    quiver = doc_quiver(doc)
    rels = [element_of(quiver, field, r) for r in doc.relations]
    return build_algebra(quiver, rels, field, doc.max_len)


def doc_module(doc: InputDocument, alg: Algebra) -> Rep:
    if doc.module is None:
        raise TypeMismatch("this command needs a module block")
    f = alg.field
    d = doc.module.d
    mats = {
        lbl: [[f.of_fraction(x) for x in row] for row in rows]
        for lbl, rows in doc.module.mats
    }
    for a in alg.quiver.arrows:
        if a.label not in mats:
            mats[a.label] = zeros(f, d[a.end - 1], d[a.start - 1])
    M = Rep(alg, d, mats)
    if not rep_validate(alg, M):
        raise TypeMismatch("module matrices do not satisfy the algebra relations")
    return M


def _gen_pairs(P: ProjectiveCover, gen: Generator) -> list[tuple[Element, int]]:
    quiver = P.alg.quiver
    f = P.alg.field
    pairs = []
    for part in gen:
        if not 1 <= part.copy <= len(P.gens):
            raise TypeMismatch(
                f"generator z{part.copy} does not exist: the cover has "
                f"{len(P.gens)} summands"
            )
        pairs.append((element_of(quiver, f, part.terms), part.copy - 1))
    return pairs


def doc_point(P: ProjectiveCover, block: PointBlock) -> SubmodulePoint:
    gens = [_gen_pairs(P, g) for g in block]
    return point_from_generators(P, gens)


def doc_skeleton(P: ProjectiveCover, doc: InputDocument) -> Skeleton:
    if doc.skeleton is None:
        raise TypeMismatch("this command needs a skeleton block")
    elems = []
    for e in doc.skeleton:
        if not 1 <= e.copy <= len(P.gens):
            raise TypeMismatch(
                f"generator z{e.copy} does not exist: the cover has "
                f"{len(P.gens)} summands"
            )
        elems.append((_path_word(P.alg.quiver, e.ref), e.copy - 1))
    return make_skeleton(P, elems)


def doc_direction(P: ProjectiveCover, endo: EndoSpace, doc: InputDocument) -> list:
    if doc.direction is None:
        raise TypeMismatch("this command needs a direction block")
    alg = P.alg
    f = alg.field
    coeffs = [f.zero()] * endo.dim
    for r, gen in doc.direction:
        if not 1 <= r <= len(P.gens):
            raise TypeMismatch(
                f"generator z{r} does not exist: the cover has "
                f"{len(P.gens)} summands"
            )
        for x, s in _gen_pairs(P, gen):
            for u, c in alg.normal_form(x).terms.items():
                try:
                    j = endo.coeff_index(r - 1, s, u)
                except ValueError:
                    raise TypeMismatch(
                        f"z{r} -> {P.describe((u, s))} is not an endomorphism "
                        f"of the cover"
                    ) from None
                coeffs[j] = f.add(coeffs[j], c)
    return coeffs
