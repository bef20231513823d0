"""Hand-written indentation-aware lexer for MiniDyn."""

from __future__ import annotations

from dataclasses import dataclass


class MiniDynSyntaxError(Exception):
    """Parse or lex failure, located at a line/column in the source."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


KEYWORDS = frozenset(
    {
        "def",
        "class",
        "if",
        "elif",
        "else",
        "while",
        "return",
        "assert",
        "use",
        "as",
        "and",
        "or",
        "not",
        "True",
        "False",
        "None",
    }
)

# Longest operators first so the lexer matches greedily.
OPERATORS = ("->", "==", "!=", "<=", ">=", "+", "-", "*", "/", "%", "<", ">", "=")
PUNCT = ("(", ")", "[", "]", ",", ":", ".")


@dataclass(slots=True)
class Token:
    kind: str  # NAME, INT, FLOAT, STRING, KEYWORD, OP, NEWLINE, INDENT, DEDENT, EOF
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    """Split source text into tokens with INDENT/DEDENT block markers."""
    tokens: list[Token] = []
    indents = [0]
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = _measure_indent(raw, lineno)
        if indent > indents[-1]:
            indents.append(indent)
            tokens.append(Token("INDENT", "", lineno, 1))
        else:
            while indent < indents[-1]:
                indents.pop()
                tokens.append(Token("DEDENT", "", lineno, 1))
            if indent != indents[-1]:
                raise MiniDynSyntaxError("inconsistent dedent", lineno, indent + 1)
        _lex_line(raw, lineno, tokens)
        tokens.append(Token("NEWLINE", "", lineno, len(raw) + 1))
    final_line = len(lines) + 1
    while indents[-1] > 0:
        indents.pop()
        tokens.append(Token("DEDENT", "", final_line, 1))
    tokens.append(Token("EOF", "", final_line, 1))
    return tokens


def _measure_indent(raw: str, lineno: int) -> int:
    indent = 0
    for ch in raw:
        if ch == " ":
            indent += 1
        elif ch == "\t":
            raise MiniDynSyntaxError("tabs are not allowed in indentation", lineno, indent + 1)
        else:
            break
    return indent


def _lex_line(raw: str, lineno: int, out: list[Token]) -> None:
    pos = 0
    length = len(raw)
    while pos < length:
        ch = raw[pos]
        if ch in " \t":
            pos += 1
            continue
        if ch == "#":
            return
        col = pos + 1
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < length and (raw[pos].isalnum() or raw[pos] == "_"):
                pos += 1
            word = raw[start:pos]
            out.append(Token("KEYWORD" if word in KEYWORDS else "NAME", word, lineno, col))
            continue
        if ch.isdigit() or (ch == "." and pos + 1 < length and raw[pos + 1].isdigit()):
            pos = _lex_number(raw, pos, lineno, out)
            continue
        if ch == '"':
            pos = _lex_string(raw, pos, lineno, out)
            continue
        for op in OPERATORS:
            if raw.startswith(op, pos):
                out.append(Token("OP", op, lineno, col))
                pos += len(op)
                break
        else:
            if ch in PUNCT:
                out.append(Token("OP", ch, lineno, col))
                pos += 1
            else:
                raise MiniDynSyntaxError(f"unexpected character {ch!r}", lineno, col)


def _lex_number(raw: str, pos: int, lineno: int, out: list[Token]) -> int:
    start = pos
    col = pos + 1
    length = len(raw)
    is_float = False
    while pos < length and raw[pos].isdigit():
        pos += 1
    if pos < length and raw[pos] == ".":
        is_float = True
        pos += 1
        while pos < length and raw[pos].isdigit():
            pos += 1
    if pos < length and raw[pos] in "eE":
        mark = pos
        pos += 1
        if pos < length and raw[pos] in "+-":
            pos += 1
        if pos < length and raw[pos].isdigit():
            is_float = True
            while pos < length and raw[pos].isdigit():
                pos += 1
        else:
            pos = mark  # not an exponent, e.g. a name follows
    text = raw[start:pos]
    out.append(Token("FLOAT" if is_float else "INT", text, lineno, col))
    return pos


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


def _lex_string(raw: str, pos: int, lineno: int, out: list[Token]) -> int:
    col = pos + 1
    pos += 1
    chars: list[str] = []
    length = len(raw)
    while pos < length:
        ch = raw[pos]
        if ch == '"':
            out.append(Token("STRING", "".join(chars), lineno, col))
            return pos + 1
        if ch == "\\":
            if pos + 1 >= length:
                break
            escape = raw[pos + 1]
            if escape not in _ESCAPES:
                raise MiniDynSyntaxError(f"unknown escape \\{escape}", lineno, pos + 2)
            chars.append(_ESCAPES[escape])
            pos += 2
            continue
        chars.append(ch)
        pos += 1
    raise MiniDynSyntaxError("unterminated string literal", lineno, col)
