"""S-expression reader and writer.

Atoms are bare symbols (no strings or numbers beyond the endpoint symbols
0 and 1); `;` comments run to end of line.  Every node carries its source
position for error reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(Exception):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


@dataclass
class Node:
    line: int
    col: int
    atom: str | None = None
    items: list["Node"] = field(default_factory=list)

    @property
    def is_atom(self) -> bool:
        return self.atom is not None

    def head(self) -> str | None:
        if not self.is_atom and self.items and self.items[0].is_atom:
            return self.items[0].atom
        return None

    def err(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col)


_DELIMS = set(" \t\r\n();")


def read_all(text: str) -> list[Node]:
    """Read every toplevel s-expression in the input."""
    pos = 0
    line, col = 1, 1
    n = len(text)
    stack: list[Node] = []
    top: list[Node] = []

    def push(node: Node):
        (stack[-1].items if stack else top).append(node)

    while pos < n:
        c = text[pos]
        if c == "\n":
            pos += 1
            line += 1
            col = 1
        elif c in " \t\r":
            pos += 1
            col += 1
        elif c == ";":
            while pos < n and text[pos] != "\n":
                pos += 1
        elif c == "(":
            node = Node(line, col)
            push(node)
            stack.append(node)
            pos += 1
            col += 1
        elif c == ")":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            stack.pop()
            pos += 1
            col += 1
        else:
            start = pos
            scol = col
            while pos < n and text[pos] not in _DELIMS and text[pos] != "(" and text[pos] != ")":
                pos += 1
                col += 1
            push(Node(line, scol, atom=text[start:pos]))
    if stack:
        raise ParseError("unclosed '('", stack[-1].line, stack[-1].col)
    return top


def write(x) -> str:
    """Serialize nested lists/strings to s-expression text."""
    if isinstance(x, str):
        return x
    return "(" + " ".join(write(e) for e in x) + ")"
