"""In-memory quad store with an N-Quads-subset reader and writer.

Every statement lives in a named graph; there is no default graph. All
subject, predicate, and graph positions hold IRIs (no blank nodes);
literals are allowed in the object position only.

The serialization is a line-oriented N-Quads subset: UTF-8 text, ``#``
comment lines, terms written as ``<iri>``, ``"lex"``, ``"lex"^^<dt>`` or
``"lex"@lang``, exactly four terms per statement, terminated by `` .``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from .errors import ParseError

__all__ = [
    "Iri",
    "Literal",
    "Term",
    "Triple",
    "Quad",
    "QuadStore",
    "parse_nquads",
    "write_nquads",
    "match_pattern",
    "serialize_term",
    "local_name",
]


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI. Serialized inside angle brackets."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if any(ch.isspace() for ch in self.value) or "<" in self.value or ">" in self.value:
            raise ValueError(f"IRI contains forbidden characters: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    """A literal value; datatype and language tag are mutually exclusive."""

    lexical: str
    datatype: Optional[Iri] = None
    langtag: Optional[str] = None

    def __post_init__(self) -> None:
        if self.datatype is not None and self.langtag is not None:
            raise ValueError("literal cannot carry both a datatype and a language tag")


Term = Union[Iri, Literal]


class Triple(NamedTuple):
    """A graph-less statement, used as minting input for semantic units."""

    s: Iri
    p: Iri
    o: Term


@dataclass(frozen=True)
class Quad:
    s: Iri
    p: Iri
    o: Term
    g: Iri

    def __post_init__(self) -> None:
        for position, term in (("subject", self.s), ("predicate", self.p), ("graph", self.g)):
            if not isinstance(term, Iri):
                raise TypeError(f"{position} must be an IRI, got {type(term).__name__}")
        if not isinstance(self.o, (Iri, Literal)):
            raise TypeError(f"object must be an IRI or literal, got {type(self.o).__name__}")

    def triple(self) -> Triple:
        return Triple(self.s, self.p, self.o)


def local_name(iri: Iri) -> str:
    """Last segment of an IRI (after ``#``, ``/`` or ``:``), as a display fallback."""
    value = iri.value
    cut = max(value.rfind("#"), value.rfind("/"), value.rfind(":"))
    return value[cut + 1 :] or value


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
# Codepoints that would break the line-oriented format if written raw.
_LINE_BREAKERS = {0x0B, 0x0C, 0x1C, 0x1D, 0x1E, 0x85, 0x2028, 0x2029}


def _escape(text: str) -> str:
    out: list[str] = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F or ord(ch) in _LINE_BREAKERS:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def serialize_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    out = f'"{_escape(term.lexical)}"'
    if term.datatype is not None:
        out += f"^^<{term.datatype.value}>"
    elif term.langtag is not None:
        out += f"@{term.langtag}"
    return out


def _quad_sort_key(quad: Quad) -> tuple:
    return (quad.g.value, quad.s.value, quad.p.value, serialize_term(quad.o))


class _LineParser:
    """Single-line term scanner for the N-Quads subset."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, reason: str) -> ParseError:
        return ParseError(self.lineno, reason)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text) or self.text[self.pos] == "#"

    def read_iri(self) -> Iri:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.error("unterminated IRI")
        raw = self.text[self.pos + 1 : end]
        self.pos = end + 1
        try:
            return Iri(raw)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def read_literal(self) -> Literal:
        chars: list[str] = []
        i = self.pos + 1
        while True:
            if i >= len(self.text):
                raise self.error("unterminated literal")
            ch = self.text[i]
            if ch == "\\":
                if i + 1 >= len(self.text):
                    raise self.error("dangling escape in literal")
                esc = self.text[i + 1]
                if esc in ("t", "n", "r"):
                    chars.append({"t": "\t", "n": "\n", "r": "\r"}[esc])
                    i += 2
                elif esc in ('"', "\\"):
                    chars.append(esc)
                    i += 2
                elif esc == "u" or esc == "U":
                    width = 4 if esc == "u" else 8
                    hexpart = self.text[i + 2 : i + 2 + width]
                    if len(hexpart) != width:
                        raise self.error("truncated unicode escape")
                    try:
                        chars.append(chr(int(hexpart, 16)))
                    except ValueError:
                        raise self.error("invalid unicode escape") from None
                    i += 2 + width
                else:
                    raise self.error(f"unsupported escape \\{esc}")
            elif ch == '"':
                i += 1
                break
            else:
                chars.append(ch)
                i += 1
        self.pos = i
        lexical = "".join(chars)
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.pos >= len(self.text) or self.text[self.pos] != "<":
                raise self.error("datatype must be an IRI")
            return Literal(lexical, datatype=self.read_iri())
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            start = self.pos + 1
            i = start
            while i < len(self.text) and (self.text[i].isalnum() or self.text[i] == "-"):
                i += 1
            tag = self.text[start:i]
            if not tag:
                raise self.error("empty language tag")
            self.pos = i
            return Literal(lexical, langtag=tag)
        return Literal(lexical)

    def read_term(self) -> Term:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of statement")
        ch = self.text[self.pos]
        if ch == "<":
            return self.read_iri()
        if ch == '"':
            return self.read_literal()
        if ch == ".":
            raise self.error("unexpected end of statement")
        raise self.error(f"malformed term starting at {self.text[self.pos:self.pos + 12]!r}")


def parse_nquads(text: str) -> list[Quad]:
    """Parse N-Quads-subset ``text`` into quads, preserving input order.

    Raises ParseError for a malformed term, a missing terminal dot, a
    literal outside the object position, or a term count other than four
    (this store has no default graph, so plain triples are rejected).
    """
    quads: list[Quad] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        parser = _LineParser(line.rstrip("\r"), lineno)
        if parser.at_end():
            continue
        terms: list[Term] = []
        while True:
            parser.skip_ws()
            if parser.pos < len(parser.text) and parser.text[parser.pos] == ".":
                parser.pos += 1
                break
            if parser.pos >= len(parser.text):
                raise parser.error("missing terminal dot")
            terms.append(parser.read_term())
            if len(terms) > 4:
                raise parser.error("statement has more than four terms")
        if not parser.at_end():
            raise parser.error("trailing content after terminal dot")
        if len(terms) != 4:
            raise parser.error(f"statement has {len(terms)} terms, expected four")
        s, p, o, g = terms
        if not isinstance(s, Iri):
            raise parser.error("literal in subject position")
        if not isinstance(p, Iri):
            raise parser.error("literal in predicate position")
        if not isinstance(g, Iri):
            raise parser.error("literal in graph position")
        quads.append(Quad(s, p, o, g))
    return quads


def write_nquads(quads: Iterable[Quad]) -> str:
    """Canonical serialization: unique quads sorted by (g, s, p, o)."""
    unique = sorted(set(quads), key=_quad_sort_key)
    if not unique:
        return ""
    lines = [
        f"{serialize_term(q.s)} {serialize_term(q.p)} {serialize_term(q.o)} {serialize_term(q.g)} ."
        for q in unique
    ]
    return "\n".join(lines) + "\n"


class QuadStore:
    """Set of quads with hash indexes by graph, subject, and (subject, predicate).

    Mutations require exclusive access; all query methods are pure reads
    and return fresh, deterministically ordered lists.
    """

    def __init__(self, quads: Iterable[Quad] = ()):
        self._quads: set[Quad] = set()
        self._by_g: dict[Iri, set[Quad]] = {}
        self._by_s: dict[Iri, set[Quad]] = {}
        self._by_sp: dict[tuple[Iri, Iri], set[Quad]] = {}
        self.add_all(quads)

    def __len__(self) -> int:
        return len(self._quads)

    def __contains__(self, quad: Quad) -> bool:
        return quad in self._quads

    def __iter__(self) -> Iterator[Quad]:
        return iter(sorted(self._quads, key=_quad_sort_key))

    def add(self, quad: Quad) -> None:
        if quad in self._quads:
            return
        self._quads.add(quad)
        self._by_g.setdefault(quad.g, set()).add(quad)
        self._by_s.setdefault(quad.s, set()).add(quad)
        self._by_sp.setdefault((quad.s, quad.p), set()).add(quad)

    def add_all(self, quads: Iterable[Quad]) -> None:
        for quad in quads:
            self.add(quad)

    def discard(self, quad: Quad) -> None:
        if quad not in self._quads:
            return
        self._quads.remove(quad)
        self._by_g[quad.g].discard(quad)
        self._by_s[quad.s].discard(quad)
        self._by_sp[(quad.s, quad.p)].discard(quad)

    def quads(self) -> list[Quad]:
        return sorted(self._quads, key=_quad_sort_key)

    def graphs(self) -> list[Iri]:
        return sorted((g for g, quads in self._by_g.items() if quads), key=lambda i: i.value)

    def graph(self, g: Iri) -> list[Quad]:
        return sorted(self._by_g.get(g, ()), key=_quad_sort_key)

    def match(
        self,
        s: Optional[Iri] = None,
        p: Optional[Iri] = None,
        o: Optional[Term] = None,
        g: Optional[Iri] = None,
    ) -> list[Quad]:
        """All quads matching the bound positions; unbound positions match anything."""
        if s is not None and p is not None:
            candidates = self._by_sp.get((s, p), set())
        elif s is not None:
            candidates = self._by_s.get(s, set())
        elif g is not None:
            candidates = self._by_g.get(g, set())
        else:
            candidates = self._quads
        out = [
            q
            for q in candidates
            if (p is None or q.p == p) and (o is None or q.o == o) and (g is None or q.g == g)
        ]
        out.sort(key=_quad_sort_key)
        return out

    def copy(self) -> "QuadStore":
        return QuadStore(self._quads)

    def to_nquads(self) -> str:
        return write_nquads(self._quads)

    @classmethod
    def from_nquads(cls, text: str) -> "QuadStore":
        return cls(parse_nquads(text))

    @classmethod
    def load(cls, path: str | Path) -> "QuadStore":
        return cls.from_nquads(Path(path).read_text(encoding="utf-8"))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_nquads(), encoding="utf-8")


def match_pattern(
    store: QuadStore,
    s: Optional[Iri] = None,
    p: Optional[Iri] = None,
    o: Optional[Term] = None,
    g: Optional[Iri] = None,
) -> list[Quad]:
    """Pattern query over a store; wrapper around :meth:`QuadStore.match`."""
    return store.match(s=s, p=p, o=o, g=g)
