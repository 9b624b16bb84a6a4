"""Line-oriented text format for mass functions.

::

    # comment
    frame X = x1 x2 ; Y = y1 y2
    norm abs
    m { (x1 y1) (x2 y2) } = 3/4
    m { (x1 y2) } = 0.25

Configuration tuples list values in frame declaration order.  Masses are
``p/q`` rationals, integers or decimal literals, all read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DSError, FrameError, InvalidMass
from .frame import EventSet, Frame, Variable, build_frame
from .massfun import MassFunction, NormMode, normalize


class ParseError(DSError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(?P<punct>[{}()=;])|(?P<word>[^\s{}()=;#]+))")
_NUMBER = re.compile(r"[+-]?(?:\d+/\d+|\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


def _tokens(text: str, lineno: int, offset: int = 0):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", lineno, offset + pos + 1)
        kind = "punct" if mt.group("punct") else "word"
        out.append((mt.group(kind), offset + mt.start(kind) + 1))
        pos = mt.end()
    return out


def parse_rational(text: str) -> Fraction:
    if not _NUMBER.fullmatch(text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


class _Cursor:
    def __init__(self, toks, lineno):
        self.toks, self.i, self.lineno = toks, 0, lineno

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def column(self):
        if self.i < len(self.toks):
            return self.toks[self.i][1]
        return (self.toks[-1][1] + len(self.toks[-1][0])) if self.toks else 1

    def take(self, expected=None):
        if self.i >= len(self.toks):
            raise ParseError(f"expected {expected or 'more input'} at end of line", self.lineno, self.column())
        tok, col = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", self.lineno, col)
        self.i += 1
        return tok

    def done(self):
        if self.i < len(self.toks):
            tok, col = self.toks[self.i]
            raise ParseError(f"unexpected {tok!r}", self.lineno, col)


def _parse_frame(cur: _Cursor) -> Frame:
    variables = []
    while cur.peek() is not None:
        col = cur.column()
        name = cur.take()
        cur.take("=")
        labels = []
        while cur.peek() not in (None, ";"):
            labels.append(cur.take())
        try:
            variables.append(Variable(name, tuple(labels)))
        except (ValueError, FrameError) as exc:
            raise ParseError(str(exc), cur.lineno, col) from None
        if cur.peek() is not None:
            cur.take(";")
    try:
        return build_frame(variables)
    except (ValueError, FrameError) as exc:
        raise ParseError(str(exc), cur.lineno, 1) from None


def _parse_set(cur: _Cursor, frame: Frame) -> int:
    open_col = cur.column()
    cur.take("{")
    mask = 0
    while cur.peek() == "(":
        col = cur.column()
        cur.take("(")
        values = []
        while cur.peek() not in (None, ")"):
            values.append(cur.take())
        cur.take(")")
        try:
            idx = frame.encode(values)
        except (ValueError, KeyError, FrameError) as exc:
            raise ParseError(str(exc), cur.lineno, col) from None
        mask |= 1 << idx
    cur.take("}")
    if not mask:
        raise ParseError("the empty set cannot carry mass", cur.lineno, open_col)
    return mask


def parse_set(frame: Frame, text: str) -> EventSet:
    """Read a set expression: ``{ (x1 y1) ... }`` or the cylinder shorthand ``X=x1``."""
    text = text.strip()
    short = re.fullmatch(r"([^\s={}()]+)\s*=\s*([^\s={}()]+)", text)
    if short:
        try:
            return EventSet.cylinder(frame, **{short.group(1): short.group(2)})
        except (KeyError, ValueError, FrameError) as exc:
            raise ParseError(str(exc), 1, 1) from None
    cur = _Cursor(_tokens(text, 1), 1)
    mask = _parse_set(cur, frame)
    cur.done()
    return EventSet(frame, mask)


@dataclass(frozen=True)
class BpaDocument:
    frame: Frame
    masses: tuple[tuple[int, Fraction], ...]
    mode: NormMode


def parse_document(text: str) -> BpaDocument:
    frame = None
    mode = NormMode.ABSOLUTE
    masses: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line, lineno)
        if not toks:
            continue
        cur = _Cursor(toks, lineno)
        head = cur.take()
        if head == "frame":
            if frame is not None:
                raise ParseError("duplicate frame declaration", lineno, toks[0][1])
            frame = _parse_frame(cur)
        elif head == "norm":
            col = cur.column()
            word = cur.take()
            if word not in ("abs", "signed"):
                raise ParseError(f"unknown norm mode {word!r}", lineno, col)
            mode = NormMode.ABSOLUTE if word == "abs" else NormMode.SIGNED
        elif head == "m":
            if frame is None:
                raise ParseError("mass line before frame declaration", lineno, toks[0][1])
            set_col = cur.column()
            mask = _parse_set(cur, frame)
            cur.take("=")
            col = cur.column()
            word = cur.take()
            try:
                value = parse_rational(word)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
            cur.done()
            if mask in masses:
                raise ParseError("duplicate focal set", lineno, set_col)
            masses[mask] = value
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, toks[0][1])
    if frame is None:
        raise ParseError("missing frame declaration", 1, 1)
    return BpaDocument(frame, tuple(masses.items()), mode)


def parse_bpa(text: str, *, normalized: bool = True) -> MassFunction:
    doc = parse_document(text)
    focal = {k: v for k, v in doc.masses if v != 0}
    if not focal:
        raise InvalidMass("document has no nonzero mass")
    m = MassFunction(doc.frame, focal, doc.mode)
    return normalize(m, doc.mode) if normalized else m


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_set(frame: Frame, mask: int) -> str:
    if not frame.variables:
        return "{ () }"
    parts = ["(" + " ".join(frame.decode(i)) + ")" for i in range(frame.size) if mask >> i & 1]
    return "{ " + " ".join(parts) + " }"


def format_frame(frame: Frame) -> str:
    return ("frame " + " ; ".join(f"{v.name} = " + " ".join(v.domain) for v in frame.variables)).rstrip()


def emit_bpa(m: MassFunction) -> str:
    """Canonical text: focal sets in increasing mask order."""
    lines = [format_frame(m.frame)]
    if m.mode is NormMode.SIGNED:
        lines.append("norm signed")
    for mask, value in sorted(m.masses.items()):
        lines.append(f"m {format_set(m.frame, mask)} = {format_rational(value)}")
    return "\n".join(lines) + "\n"


def load_bpa(path) -> MassFunction:
    with open(path, encoding="utf-8") as fh:
        return parse_bpa(fh.read())


def save_bpa(m: MassFunction, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_bpa(m))
