"""Reader and writer for a small Normaliz-style input format.

Example::

    amb_space 24
    excluded_faces 3
    <3 rows of 24 integers>
    inequalities 1
    <1 row>
    nonnegative
    total_degree

Rows are read one per line and must have exactly ``amb_space`` entries;
a fused token such as ``00`` therefore shows up as an arity error
instead of being split silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .polytope import HPolytope

BLOCKS = ("inequalities", "excluded_faces")
FLAGS = ("nonnegative", "total_degree")


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


@dataclass
class InputDocument:
    ambient_dim: int
    inequalities: List[Tuple[int, ...]] = field(default_factory=list)
    excluded_faces: List[Tuple[int, ...]] = field(default_factory=list)
    nonnegative: bool = False
    total_degree: bool = False

    def to_polytope(self, name: str = "") -> HPolytope:
        if not self.total_degree:
            raise ParseError("missing grading (total_degree)")
        return HPolytope(
            self.ambient_dim,
            closed=list(self.inequalities),
            strict=list(self.excluded_faces),
            nonnegative=self.nonnegative,
            name=name,
        )


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", lineno) from None


def parse_input(text: str) -> InputDocument:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    doc: Optional[InputDocument] = None
    pos = 0
    while pos < len(lines):
        lineno, toks = lines[pos]
        pos += 1
        key = toks[0]
        if key == "amb_space":
            if doc is not None:
                raise ParseError("amb_space given twice", lineno)
            if len(toks) != 2:
                raise ParseError("amb_space takes one argument", lineno)
            dim = _int(toks[1], lineno)
            if dim < 1:
                raise ParseError("amb_space must be positive", lineno)
            doc = InputDocument(dim)
            continue
        if doc is None:
            raise ParseError("missing amb_space before " + repr(key), lineno)
        if key in FLAGS:
            if len(toks) != 1:
                raise ParseError(f"{key} takes no arguments", lineno)
            setattr(doc, key, True)
        elif key in BLOCKS:
            if len(toks) != 2:
                raise ParseError(f"{key} needs a row count", lineno)
            count = _int(toks[1], lineno)
            if count < 0:
                raise ParseError("negative row count", lineno)
            rows = getattr(doc, key)
            for _ in range(count):
                if pos >= len(lines):
                    raise ParseError(f"{key}: expected {count} rows, file ended", lineno)
                rl, rt = lines[pos]
                pos += 1
                if len(rt) != doc.ambient_dim:
                    raise ParseError(f"row has {len(rt)} entries, expected {doc.ambient_dim}", rl)
                rows.append(tuple(_int(t, rl) for t in rt))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)
    if doc is None:
        raise ParseError("missing amb_space")
    if not doc.total_degree:
        raise ParseError("missing grading (total_degree)")
    return doc


def document_of(P: HPolytope) -> InputDocument:
    if any(g != 1 for g in P.grading):
        raise ValueError("only the total degree grading can be written")
    return InputDocument(P.ambient_dim, list(P.closed), list(P.strict), P.nonnegative, True)


def emit_input(P) -> str:
    """Input file text for a polytope (or an InputDocument)."""
    doc = P if isinstance(P, InputDocument) else document_of(P)
    out = [f"amb_space {doc.ambient_dim}"]
    for key in ("excluded_faces", "inequalities"):
        rows = getattr(doc, key)
        if rows:
            out.append(f"{key} {len(rows)}")
            out.extend(" ".join(str(x) for x in r) for r in rows)
    if doc.nonnegative:
        out.append("nonnegative")
    out.append("total_degree")
    return "\n".join(out) + "\n"


def read_input(path: str) -> InputDocument:
    with open(path, encoding="utf-8") as f:
        return parse_input(f.read())
