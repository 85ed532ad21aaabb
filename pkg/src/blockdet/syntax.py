"""Regular expressions over blocks: parsing, printing, marking, position functions.

A block is a non-empty word over the base alphabet used as a single symbol;
plain regular expressions are the width-1 special case.  Concrete syntax:
union ``+`` (lowest precedence), concatenation by juxtaposition or ``.``,
postfix ``*`` (highest), parentheses, ``[xyz]`` block literals, ``eps`` for
the empty word and ``empty`` for the empty set.  Whitespace is ignored and
base letters are restricted to alphanumerics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

KEYWORDS = ("empty", "eps")


class ExprSyntaxError(ValueError):
    """Malformed expression text; carries the offending column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class BlockSymbol:
    """A literal/transition label: a non-empty word over the base alphabet."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a block needs at least one letter")
        if not self.letters.isalnum():
            raise ValueError(f"block letters must be alphanumeric: {self.letters!r}")

    @property
    def width(self) -> int:
        return len(self.letters)

    def drop(self) -> "BlockSymbol":
        return self

    def pretty(self) -> str:
        return self.letters if len(self.letters) == 1 else f"[{self.letters}]"

    def __str__(self) -> str:
        return self.pretty()


@dataclass(frozen=True, order=True)
class Position:
    """One indexed block occurrence of a marked expression."""

    index: int
    block: BlockSymbol

    def drop(self) -> BlockSymbol:
        return self.block

    def state_name(self) -> str:
        return f"{self.block.letters}_{self.index}"

    def pretty(self) -> str:
        return f"{self.block.pretty()}_{self.index}"

    def __str__(self) -> str:
        return self.pretty()


class RegexAst:
    """Base class of expression nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Empty(RegexAst):
    pass


@dataclass(frozen=True)
class Epsilon(RegexAst):
    pass


@dataclass(frozen=True)
class Literal(RegexAst):
    # BlockSymbol in plain expressions; Position / ExpandedSymbol in derived ones.
    symbol: object


@dataclass(frozen=True)
class Union(RegexAst):
    left: RegexAst
    right: RegexAst


@dataclass(frozen=True)
class Concat(RegexAst):
    left: RegexAst
    right: RegexAst


@dataclass(frozen=True)
class Star(RegexAst):
    child: RegexAst


# --- parsing ---------------------------------------------------------------

_ATOM_STARTS = {"letter", "block", "(", "eps", "empty"}


def _lex(text: str) -> list[tuple[str, str | None, int]]:
    out: list[tuple[str, str | None, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        keyword = next((kw for kw in KEYWORDS if text.startswith(kw, i)), None)
        if keyword is not None:
            out.append((keyword, None, i))
            i += len(keyword)
            continue
        if ch == "[":
            end = text.find("]", i + 1)
            if end < 0:
                raise ExprSyntaxError("unterminated block literal", i)
            inner = text[i + 1 : end]
            if not inner:
                raise ExprSyntaxError("empty block []", i)
            if not inner.isalnum():
                raise ExprSyntaxError("block letters must be alphanumeric", i + 1)
            out.append(("block", inner, i))
            i = end + 1
            continue
        if ch in "+.*()":
            out.append((ch, None, i))
            i += 1
            continue
        if ch.isalnum():
            out.append(("letter", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    out.append(("end", None, n))
    return out


def parse(text: str) -> RegexAst:
    """Parse expression text into an AST; ``parse(to_text(e)) == e``."""
    tokens = _lex(text)
    ast, i = _parse_union(tokens, 0)
    kind, _, pos = tokens[i]
    if kind != "end":
        raise ExprSyntaxError("unexpected trailing input", pos)
    return ast


def _parse_union(toks, i):
    node, i = _parse_concat(toks, i)
    while toks[i][0] == "+":
        right, i = _parse_concat(toks, i + 1)
        node = Union(node, right)
    return node, i


def _parse_concat(toks, i):
    node, i = _parse_star(toks, i)
    while True:
        kind = toks[i][0]
        if kind == ".":
            right, i = _parse_star(toks, i + 1)
        elif kind in _ATOM_STARTS:
            right, i = _parse_star(toks, i)
        else:
            return node, i
        node = Concat(node, right)


def _parse_star(toks, i):
    node, i = _parse_atom(toks, i)
    while toks[i][0] == "*":
        node, i = Star(node), i + 1
    return node, i


def _parse_atom(toks, i):
    kind, value, pos = toks[i]
    if kind in ("letter", "block"):
        return Literal(BlockSymbol(value)), i + 1
    if kind == "eps":
        return Epsilon(), i + 1
    if kind == "empty":
        return Empty(), i + 1
    if kind == "(":
        node, i = _parse_union(toks, i + 1)
        if toks[i][0] != ")":
            raise ExprSyntaxError("expected )", toks[i][2])
        return node, i + 1
    raise ExprSyntaxError("expected an expression", pos)


# --- printing --------------------------------------------------------------


def to_text(ast: RegexAst) -> str:
    """Render to concrete syntax (round-trips through parse for plain ASTs)."""
    return _render(ast, 1)


def _render(node: RegexAst, min_prec: int) -> str:
    if isinstance(node, Empty):
        text, prec = "empty", 4
    elif isinstance(node, Epsilon):
        text, prec = "eps", 4
    elif isinstance(node, Literal):
        text, prec = _symbol_text(node.symbol), 4
    elif isinstance(node, Star):
        text, prec = _render(node.child, 3) + "*", 3
    elif isinstance(node, Concat):
        text, prec = _join(_render(node.left, 2), _render(node.right, 3)), 2
    elif isinstance(node, Union):
        text, prec = _render(node.left, 1) + "+" + _render(node.right, 2), 1
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return f"({text})" if prec < min_prec else text


def _symbol_text(symbol) -> str:
    pretty = getattr(symbol, "pretty", None)
    return pretty() if pretty is not None else str(symbol)


def _join(left: str, right: str) -> str:
    # Juxtaposition may not create an `eps`/`empty` keyword across the seam;
    # fall back to the explicit concatenation dot when it would.
    joined = left + right
    cut = len(left)
    for kw in KEYWORDS:
        for start in range(max(0, cut - len(kw) + 1), cut):
            if joined.startswith(kw, start):
                return left + "." + right
    return joined


# --- marking and dropping ---------------------------------------------------


@dataclass(frozen=True)
class MarkedExpression:
    """An expression whose literal occurrences carry unique indices."""

    ast: RegexAst
    positions: tuple


def literal_symbols(ast: RegexAst) -> Iterator:
    """Leaf symbols in left-to-right order."""
    if isinstance(ast, Literal):
        yield ast.symbol
    elif isinstance(ast, (Union, Concat)):
        yield from literal_symbols(ast.left)
        yield from literal_symbols(ast.right)
    elif isinstance(ast, Star):
        yield from literal_symbols(ast.child)


def width(ast: RegexAst) -> int:
    """Largest block width occurring in the expression (0 if none)."""
    return max((sym.drop().width for sym in literal_symbols(ast)), default=0)


def _contains_empty(ast: RegexAst) -> bool:
    if isinstance(ast, Empty):
        return True
    if isinstance(ast, (Union, Concat)):
        return _contains_empty(ast.left) or _contains_empty(ast.right)
    if isinstance(ast, Star):
        return _contains_empty(ast.child)
    return False


def is_trimmed(ast: RegexAst) -> bool:
    """True iff the expression is `empty` itself or contains no `empty` node."""
    return isinstance(ast, Empty) or not _contains_empty(ast)


def mark(ast: RegexAst) -> MarkedExpression:
    """Index block occurrences 1..n left to right."""
    if not is_trimmed(ast):
        raise ValueError("expression is not trimmed: `empty` occurs as a subterm")
    acc: list[Position] = []
    marked = _mark(ast, acc)
    return MarkedExpression(marked, tuple(acc))


def _mark(node: RegexAst, acc: list[Position]) -> RegexAst:
    if isinstance(node, Literal):
        if not isinstance(node.symbol, BlockSymbol):
            raise ValueError("expression is already marked")
        position = Position(len(acc) + 1, node.symbol)
        acc.append(position)
        return Literal(position)
    if isinstance(node, Union):
        return Union(_mark(node.left, acc), _mark(node.right, acc))
    if isinstance(node, Concat):
        return Concat(_mark(node.left, acc), _mark(node.right, acc))
    if isinstance(node, Star):
        return Star(_mark(node.child, acc))
    return node


def drop(value: MarkedExpression | RegexAst) -> RegexAst:
    """Remove indices (and flatten expanded letters) back to a plain expression."""
    ast = value.ast if isinstance(value, MarkedExpression) else value
    return _drop(ast)


def _drop(node: RegexAst) -> RegexAst:
    if isinstance(node, Literal):
        return Literal(node.symbol.drop())
    if isinstance(node, Union):
        return Union(_drop(node.left), _drop(node.right))
    if isinstance(node, Concat):
        return Concat(_drop(node.left), _drop(node.right))
    if isinstance(node, Star):
        return Star(_drop(node.child))
    return node


# --- position functions ------------------------------------------------------


@dataclass(frozen=True)
class PositionTable:
    """Null/First/Last/Follow of a marked expression."""

    nullable: bool
    first: frozenset
    last: frozenset
    follow: Mapping


def positions(marked: MarkedExpression | RegexAst) -> PositionTable:
    """Compute the position functions by structural induction."""
    ast = marked.ast if isinstance(marked, MarkedExpression) else marked
    follow: dict = {}
    for sym in literal_symbols(ast):
        if sym in follow:
            raise ValueError(f"symbol occurs twice, input is not marked: {sym}")
        follow[sym] = set()
    nullable, first, last = _scan(ast, follow)
    return PositionTable(
        nullable,
        frozenset(first),
        frozenset(last),
        {x: frozenset(s) for x, s in follow.items()},
    )


def _scan(node: RegexAst, follow: dict) -> tuple[bool, set, set]:
    if isinstance(node, Empty):
        return False, set(), set()
    if isinstance(node, Epsilon):
        return True, set(), set()
    if isinstance(node, Literal):
        return False, {node.symbol}, {node.symbol}
    if isinstance(node, Union):
        nl, fl, ll = _scan(node.left, follow)
        nr, fr, lr = _scan(node.right, follow)
        return nl or nr, fl | fr, ll | lr
    if isinstance(node, Concat):
        nl, fl, ll = _scan(node.left, follow)
        nr, fr, lr = _scan(node.right, follow)
        for x in ll:
            follow[x] |= fr
        return nl and nr, fl | (fr if nl else set()), lr | (ll if nr else set())
    if isinstance(node, Star):
        n, f, l = _scan(node.child, follow)
        for x in l:
            follow[x] |= f
        return True, f, l
    raise TypeError(f"not an expression node: {node!r}")


# --- bounded language semantics ----------------------------------------------


def language(ast: RegexAst, max_symbols: int) -> set[tuple]:
    """All words of L(ast) with at most ``max_symbols`` symbols, symbols atomic.

    Computed from the inductive language definition, independently of any
    automaton construction; serves as the brute-force oracle.
    """
    if max_symbols < 0:
        raise ValueError("max_symbols must be >= 0")
    return _language(ast, max_symbols)


@lru_cache(maxsize=None)
def _language(ast: RegexAst, max_symbols: int) -> frozenset:
    if isinstance(ast, Empty):
        return frozenset()
    if isinstance(ast, Epsilon):
        return frozenset({()})
    if isinstance(ast, Literal):
        return frozenset({(ast.symbol,)}) if max_symbols >= 1 else frozenset()
    if isinstance(ast, Union):
        return _language(ast.left, max_symbols) | _language(ast.right, max_symbols)
    if isinstance(ast, Concat):
        out = set()
        for u in _language(ast.left, max_symbols):
            room = max_symbols - len(u)
            for v in _language(ast.right, room):
                out.add(u + v)
        return frozenset(out)
    if isinstance(ast, Star):
        steps_by_len: dict[int, list] = {}
        for w in _language(ast.child, max_symbols):
            if w:
                steps_by_len.setdefault(len(w), []).append(w)
        words: set[tuple] = {()}
        frontier: set[tuple] = {()}
        while frontier:
            grown: set[tuple] = set()
            for u in frontier:
                for step_len in range(1, max_symbols - len(u) + 1):
                    for v in steps_by_len.get(step_len, ()):
                        grown.add(u + v)
            frontier = grown - words
            words |= frontier
        return frozenset(words)
    raise TypeError(f"not an expression node: {ast!r}")


def base_language(ast: RegexAst, max_letters: int) -> set[str]:
    """Words of L(ast) flattened to base letters, up to ``max_letters`` long."""
    out = set()
    for word in language(ast, max_letters):
        flat = "".join(sym.drop().letters for sym in word)
        if len(flat) <= max_letters:
            out.add(flat)
    return out


# --- JSON ---------------------------------------------------------------------


def ast_to_json(ast: RegexAst) -> dict:
    if isinstance(ast, Empty):
        return {"kind": "empty"}
    if isinstance(ast, Epsilon):
        return {"kind": "epsilon"}
    if isinstance(ast, Literal):
        symbol = ast.symbol
        text = symbol.letters if isinstance(symbol, BlockSymbol) else str(symbol)
        return {"kind": "literal", "symbol": text}
    if isinstance(ast, Union):
        return {"kind": "union", "left": ast_to_json(ast.left), "right": ast_to_json(ast.right)}
    if isinstance(ast, Concat):
        return {"kind": "concat", "left": ast_to_json(ast.left), "right": ast_to_json(ast.right)}
    if isinstance(ast, Star):
        return {"kind": "star", "child": ast_to_json(ast.child)}
    raise TypeError(f"not an expression node: {ast!r}")


def ast_from_json(data: dict) -> RegexAst:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("expression JSON must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "empty":
        return Empty()
    if kind == "epsilon":
        return Epsilon()
    if kind == "literal":
        return Literal(BlockSymbol(data["symbol"]))
    if kind == "union":
        return Union(ast_from_json(data["left"]), ast_from_json(data["right"]))
    if kind == "concat":
        return Concat(ast_from_json(data["left"]), ast_from_json(data["right"]))
    if kind == "star":
        return Star(ast_from_json(data["child"]))
    raise ValueError(f"unknown expression node kind: {kind!r}")
