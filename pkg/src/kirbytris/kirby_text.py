"""
Text formats for Kirby diagrams.

Two interchangeable encodings: a small DSL for humans and a JSON mirror
(the canonical machine format, field names ``handles``, ``crossings``,
``components``, ``markers``, ``anchors``).

DSL statements::

    handle h1 [reversing] [feet (a1 a2) (b1 b2) pairing (a1>b1 a2>b2)]
    crossing c1 slots (w s e n) over (w e)
    marker m1 slots (p q)
    component K1 framing (blackboard 0 | coeff 1) { c1:w m1:p ... }
    anchor m1 in face (outer | c1:w)

``#`` starts a comment.  Crossing slots are counterclockwise; component
bodies list (node:entry-slot) events in traversal order.
"""

from __future__ import annotations

import json
import re

from .kirby import (Anchor, CrossingNode, FramedComponent, Framing,
                    KirbyDiagram, KirbyError, MarkerNode, OneHandle)


class ParseError(KirbyError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"[A-Za-z0-9_.+-]+|[(){}>:]|#[^\n]*|\n|[ \t\r]+")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, int, int]] = []
        line, col, pos = 1, 1, 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}",
                                 line, col)
            tok = m.group(0)
            if tok == "\n":
                line += 1
                col = 1
            else:
                if not tok.startswith("#") and not tok.isspace():
                    self.items.append((tok, line, col))
                col += len(tok)
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i][0] if self.i < len(self.items) else None

    def next(self, what: str = "token") -> str:
        if self.i >= len(self.items):
            last = self.items[-1] if self.items else ("", 1, 1)
            raise ParseError(f"expected {what}, found end of input",
                             last[1], last[2])
        tok, self.line, self.col = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, literal: str) -> None:
        tok = self.next(repr(literal))
        if tok != literal:
            raise ParseError(f"expected {literal!r}, found {tok!r}",
                             self.line, self.col)

    def error(self, msg: str):
        raise ParseError(msg, getattr(self, "line", 1),
                         getattr(self, "col", 1))


def _ident(t: _Tokens, what="identifier") -> str:
    tok = t.next(what)
    if tok in "(){}>:" or tok.lstrip("+-").isdigit():
        t.error(f"expected {what}, found {tok!r}")
    return tok


def _int(t: _Tokens) -> int:
    tok = t.next("integer")
    try:
        return int(tok)
    except ValueError:
        t.error(f"expected integer, found {tok!r}")


def _paren_list(t: _Tokens) -> list[str]:
    t.expect("(")
    out = []
    while t.peek() != ")":
        out.append(_ident(t, "slot"))
    t.expect(")")
    return out


def parse_dsl(text: str) -> KirbyDiagram:
    t = _Tokens(text)
    d = KirbyDiagram()
    while t.peek() is not None:
        stmt = t.next("statement")
        if stmt == "handle":
            hid = _ident(t)
            reversing = False
            if t.peek() == "reversing":
                t.next()
                reversing = True
            feet: tuple[tuple[str, ...], tuple[str, ...]] = ((), ())
            pairing: dict[str, str] = {}
            if t.peek() == "feet":
                t.next()
                f0 = tuple(_paren_list(t))
                f1 = tuple(_paren_list(t))
                t.expect("pairing")
                t.expect("(")
                while t.peek() != ")":
                    a = _ident(t, "slot")
                    t.expect(">")
                    b = _ident(t, "slot")
                    pairing[a] = b
                t.expect(")")
                feet = (f0, f1)
            d.handles.append(OneHandle(hid, reversing, feet, pairing))
        elif stmt == "crossing":
            cid = _ident(t)
            t.expect("slots")
            slots = _paren_list(t)
            if len(slots) != 4:
                t.error("a crossing needs exactly 4 slots")
            t.expect("over")
            over = _paren_list(t)
            if len(over) != 2:
                t.error("over() needs exactly 2 slots")
            d.crossings.append(CrossingNode(cid, tuple(slots), tuple(over)))
        elif stmt == "marker":
            mid = _ident(t)
            t.expect("slots")
            slots = _paren_list(t)
            if len(slots) != 2:
                t.error("a marker needs exactly 2 slots")
            d.markers.append(MarkerNode(mid, tuple(slots)))
        elif stmt == "component":
            cid = _ident(t)
            t.expect("framing")
            kind = t.next("framing kind")
            if kind not in ("blackboard", "coeff"):
                t.error(f"unknown framing kind {kind!r}")
            value = _int(t)
            t.expect("{")
            events = []
            while t.peek() != "}":
                nid = _ident(t, "node")
                t.expect(":")
                slot = _ident(t, "slot")
                events.append((nid, slot))
            t.expect("}")
            d.components.append(
                FramedComponent(cid, Framing(kind, value), events))
        elif stmt == "anchor":
            piece = _ident(t)
            t.expect("in")
            t.expect("face")
            tok = t.next("face")
            if tok == "outer":
                face = None
            else:
                t.expect(":")
                face = (tok, _ident(t, "slot"))
            d.anchors.append(Anchor(piece, face))
        else:
            t.error(f"unknown statement {stmt!r}")
    return d


def serialize_dsl(d: KirbyDiagram) -> str:
    lines = []
    for h in d.handles:
        parts = ["handle", h.id]
        if h.reversing:
            parts.append("reversing")
        if h.feet[0]:
            parts.append("feet (" + " ".join(h.feet[0]) + ")")
            parts.append("(" + " ".join(h.feet[1]) + ")")
            parts.append("pairing (" + " ".join(
                f"{a}>{h.pairing[a]}" for a in h.feet[0]) + ")")
        lines.append(" ".join(parts))
    for c in d.crossings:
        lines.append(f"crossing {c.id} slots (" + " ".join(c.slots)
                     + ") over (" + " ".join(c.over) + ")")
    for m in d.markers:
        lines.append(f"marker {m.id} slots (" + " ".join(m.slots) + ")")
    for comp in d.components:
        ev = " ".join(f"{n}:{s}" for n, s in comp.events)
        lines.append(f"component {comp.id} framing {comp.framing.kind} "
                     f"{comp.framing.value} {{ {ev} }}")
    for a in d.anchors:
        face = "outer" if a.face is None else f"{a.face[0]}:{a.face[1]}"
        lines.append(f"anchor {a.piece} in face {face}")
    return "\n".join(lines) + "\n"


def to_json_obj(d: KirbyDiagram) -> dict:
    return {
        "handles": [{"id": h.id, "reversing": h.reversing,
                     "feet": [list(h.feet[0]), list(h.feet[1])],
                     "pairing": dict(h.pairing)} for h in d.handles],
        "crossings": [{"id": c.id, "slots": list(c.slots),
                       "over": list(c.over)} for c in d.crossings],
        "markers": [{"id": m.id, "slots": list(m.slots)} for m in d.markers],
        "components": [{"id": c.id,
                        "framing": {"kind": c.framing.kind,
                                    "value": c.framing.value},
                        "events": [list(e) for e in c.events]}
                       for c in d.components],
        "anchors": [{"piece": a.piece,
                     "face": list(a.face) if a.face else None}
                    for a in d.anchors],
    }


def from_json_obj(obj: dict) -> KirbyDiagram:
    try:
        d = KirbyDiagram()
        for h in obj.get("handles", []):
            d.handles.append(OneHandle(
                h["id"], bool(h.get("reversing", False)),
                (tuple(h.get("feet", [[], []])[0]),
                 tuple(h.get("feet", [[], []])[1])),
                dict(h.get("pairing", {}))))
        for c in obj.get("crossings", []):
            d.crossings.append(CrossingNode(c["id"], tuple(c["slots"]),
                                            tuple(c["over"])))
        for m in obj.get("markers", []):
            d.markers.append(MarkerNode(m["id"], tuple(m["slots"])))
        for c in obj.get("components", []):
            fr = c["framing"]
            d.components.append(FramedComponent(
                c["id"], Framing(fr["kind"], int(fr["value"])),
                [tuple(e) for e in c["events"]]))
        for a in obj.get("anchors", []):
            face = a.get("face")
            d.anchors.append(Anchor(a["piece"],
                                    tuple(face) if face else None))
        return d
    except (KeyError, IndexError, TypeError) as exc:
        raise KirbyError(f"malformed Kirby JSON: {exc}") from exc


def parse_kirby(text: str) -> KirbyDiagram:
    """Parse either encoding (JSON if the text starts with '{') and
    validate the result."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise KirbyError(f"bad JSON: {exc}") from exc
        d = from_json_obj(obj)
    else:
        d = parse_dsl(text)
    d.validate()
    return d


def serialize_kirby(d: KirbyDiagram, fmt: str = "dsl") -> str:
    if fmt == "dsl":
        return serialize_dsl(d)
    if fmt == "json":
        return json.dumps(to_json_obj(d), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
