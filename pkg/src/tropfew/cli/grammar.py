"""Text format for polynomial systems.

A file holds one or two polynomials plus optional ``key: value`` metadata
lines (``name``, ``expect``).  ``#`` starts a comment.  A polynomial is::

    term (('+' | '-') term)*
    term = RAT ('*t^' RAT)? ('*x^' INT)? ('*y^' INT)?
    RAT  = '-'? DIGITS ('/' DIGITS)?   or a decimal such as 0.36008 (read exactly)

Blanks may separate tokens but not split digit runs.  A polynomial ends at
a newline or ``;`` unless the line ends with an operator or the next line
starts with ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..field import ExpVec, LaurentPoly, LaurentSystem, PuiseuxScalar

METADATA_KEYS = ("name", "expect")
_META = re.compile(r"^\s*([A-Za-z_]\w*)\s*:(.*)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SystemFile:
    polynomials: tuple[LaurentPoly, ...]
    name: str | None = None
    expect: int | None = None

    @property
    def system(self) -> LaurentSystem:
        if len(self.polynomials) != 2:
            raise ValueError(f"expected two polynomials, found {len(self.polynomials)}")
        return LaurentSystem(*self.polynomials, name=self.name)


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    return line, index - (text.rfind("\n", 0, index) + 1) + 1


class _Cursor:
    """Recursive descent over one statement; blanks may separate tokens."""

    def __init__(self, text: str, chars: list[tuple[int, str]]):
        self.text = text
        self.chars = chars
        self.i = 0

    def error(self, message: str, at: int | None = None) -> ParseError:
        i = self.i if at is None else at
        idx = self.chars[i][0] if i < len(self.chars) else (self.chars[-1][0] + 1 if self.chars else 0)
        return ParseError(message, *_position(self.text, idx))

    def skip(self) -> None:
        while self.i < len(self.chars) and self.chars[self.i][1].isspace():
            self.i += 1

    def at_end(self) -> bool:
        self.skip()
        return self.i >= len(self.chars)

    def peek(self) -> str:
        self.skip()
        return self.chars[self.i][1] if self.i < len(self.chars) else ""

    def take(self, literal: str) -> bool:
        save = self.i
        for ch in literal:
            if self.peek() != ch:
                self.i = save
                return False
            self.i += 1
        return True

    def digits(self) -> str:
        self.skip()
        start = self.i
        while self.i < len(self.chars) and self.chars[self.i][1].isdigit():
            self.i += 1
        if self.i == start:
            found = self.peek() or "end of input"
            raise self.error(f"expected digits, found {found!r}")
        return "".join(c for _, c in self.chars[start:self.i])

    def integer(self) -> int:
        neg = self.take("-")
        v = int(self.digits())
        return -v if neg else v

    def rational(self) -> Fraction:
        start = self.i
        neg = self.take("-")
        whole = self.digits()
        if self.take("/"):
            den = int(self.digits())
            if den == 0:
                raise self.error("zero denominator", start)
            v = Fraction(int(whole), den)
        elif self.take("."):
            v = Fraction(f"{whole}.{self.digits()}")
        else:
            v = Fraction(int(whole))
        return -v if neg else v

    def term(self) -> tuple[int, Fraction, Fraction, ExpVec]:
        self.skip()
        start = self.i
        c = self.rational()
        e = self.rational() if self.take("*t^") else Fraction(0)
        a = self.integer() if self.take("*x^") else 0
        b = self.integer() if self.take("*y^") else 0
        return start, c, e, (a, b)

    def polynomial(self) -> list[tuple[int, Fraction, Fraction, ExpVec]]:
        terms = [self.term()]
        while not self.at_end():
            op = self.peek()
            if op not in "+-":
                raise self.error(f"expected '+' or '-', found {op!r}")
            self.i += 1
            start, c, e, w = self.term()
            terms.append((start, -c if op == "-" else c, e, w))
        return terms


def _merge(cur: _Cursor, terms) -> LaurentPoly:
    acc: dict[ExpVec, dict[Fraction, Fraction]] = {}
    first: dict[tuple[ExpVec, Fraction], int] = {}
    for start, c, e, w in terms:
        if c == 0:
            raise cur.error("zero coefficient", start)
        slot = acc.setdefault(w, {})
        slot[e] = slot.get(e, Fraction(0)) + c
        first.setdefault((w, e), start)
    for w, series in acc.items():
        for e, c in series.items():
            if c == 0:
                raise cur.error(f"terms t^{e}*x^{w[0]}*y^{w[1]} cancel after merging",
                                first[(w, e)])
    return LaurentPoly({w: PuiseuxScalar.from_terms(s) for w, s in acc.items()})


def _statements(text: str) -> list[tuple[str, object]]:
    """Split into ("meta", (key, value, index)) and ("poly", [(index, char)])."""
    out: list[tuple[str, object]] = []
    pending: list[tuple[int, str]] | None = None
    offset = 0
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0]
        m = _META.match(line)
        if m:
            if pending is not None:
                out.append(("poly", pending))
                pending = None
            out.append(("meta", (m.group(1), m.group(2).strip(), offset + m.start(1))))
            offset += len(raw) + 1
            continue
        pos = offset
        for j, chunk in enumerate(line.split(";")):
            chars = [(pos + k, ch) for k, ch in enumerate(chunk)]
            pos += len(chunk) + 1
            while chars and chars[-1][1].isspace():
                chars.pop()
            while chars and chars[0][1].isspace():
                chars.pop(0)
            if pending is not None:
                # blank lines and continuation lines keep the polynomial open
                joined = j == 0 and (not chars or pending[-1][1] in "+-" or chars[0][1] == "+")
                if not joined:
                    out.append(("poly", pending))
                    pending = None
            if chars:
                pending = chars if pending is None else pending + chars
        offset += len(raw) + 1
    if pending is not None:
        out.append(("poly", pending))
    return out


def parse_file(text: str) -> SystemFile:
    polys, meta = [], {}
    for kind, item in _statements(text):
        if kind == "meta":
            key, value, idx = item
            if key not in METADATA_KEYS:
                raise ParseError(f"unknown metadata key {key!r}", *_position(text, idx))
            if key == "expect":
                try:
                    value = int(value)
                except ValueError:
                    raise ParseError("expect must be an integer", *_position(text, idx)) from None
            meta[key] = value
            continue
        cur = _Cursor(text, item)
        polys.append(_merge(cur, cur.polynomial()))
    if not polys:
        raise ParseError("no polynomial found", *_position(text, len(text)))
    if len(polys) > 2:
        raise ParseError(f"expected at most two polynomials, found {len(polys)}",
                         *_position(text, len(text)))
    return SystemFile(tuple(polys), meta.get("name"), meta.get("expect"))


def parse_polynomial(text: str) -> LaurentPoly:
    sf = parse_file(text)
    if len(sf.polynomials) != 1:
        raise ParseError(f"expected one polynomial, found {len(sf.polynomials)}",
                         *_position(text, len(text)))
    return sf.polynomials[0]


def parse_system(text: str) -> LaurentSystem:
    sf = parse_file(text)
    if len(sf.polynomials) != 2:
        raise ParseError(f"expected two polynomials, found {len(sf.polynomials)}",
                         *_position(text, len(text)))
    return sf.system


# ---- canonical printing -----------------------------------------------------------

def format_term(c: Fraction, e: Fraction, w: ExpVec) -> str:
    t = "" if e == 0 else f"*t^{e}"
    return f"{c}{t}*x^{w[0]}*y^{w[1]}"


def format_polynomial(f) -> str:
    """Canonical one-line form; truncation orders go into a trailing comment."""
    parts, notes = [], []
    for w in sorted(f):
        c = f[w]
        if isinstance(c, PuiseuxScalar):
            parts.extend(format_term(coef, e, w) for e, coef in c.terms)
            if c.truncation is not None:
                notes.append(f"x^{w[0]}*y^{w[1]} known below t^{c.truncation}")
        else:
            parts.append(format_term(Fraction(c), Fraction(0), w))
    line = " + ".join(parts)
    if notes:
        line += "  # " + "; ".join(notes)
    return line


def format_system(system: LaurentSystem | SystemFile | tuple, name: str | None = None,
                  expect: int | None = None) -> str:
    if isinstance(system, SystemFile):
        polys, name, expect = system.polynomials, system.name, system.expect
    else:
        polys = tuple(system)
        name = name if name is not None else getattr(system, "name", None)
    lines = []
    if name:
        lines.append(f"name: {name}")
    if expect is not None:
        lines.append(f"expect: {expect}")
    lines.extend(format_polynomial(f) for f in polys)
    return "\n".join(lines) + "\n"
