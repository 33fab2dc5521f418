"""Parser and AST for the module-expression mini-language.

The grammar covers rank-1 module expressions with symbolic Frobenius
twists as they appear in the shipped table files:

    flist   := sum ("/" sum)*
    sum     := item ("+" item)*
    item    := "0|" sum "|0"                    (two-trivial wrapping)
             | power
    power   := primary ("^[" twist "]" | "^" INT)*
    primary := INT | "W(" INT ")" | ref | "(" sum ("," sum)* ")"
    ref     := NAME "(#" INT ("^{" twist ("," twist)* "}")? ")"

"*" is the tensor product; an exponent without brackets is a factor
multiplicity; "^[r]" is a Frobenius twist by a variable or constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sl2 import (
    Character,
    FactorMultiset,
    SL2Error,
    decompose,
    direct_sum,
    irred_char,
    tensor as char_tensor,
    twist as char_twist,
    weyl_char,
)


class ParseError(ValueError):
    def __init__(self, text, pos, message):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


@dataclass(frozen=True)
class Irr:
    n: int


@dataclass(frozen=True)
class WeylM:
    n: int


@dataclass(frozen=True)
class Twist:
    node: object
    by: object  # variable name or non-negative int


@dataclass(frozen=True)
class Tensor:
    parts: tuple


@dataclass(frozen=True)
class Plus:
    parts: tuple  # of (node, multiplicity)


@dataclass(frozen=True)
class FList:
    parts: tuple  # of (node, multiplicity)


@dataclass(frozen=True)
class Tup:
    parts: tuple


@dataclass(frozen=True)
class Socle:
    inner: object  # wrapped as 0 | inner | 0


@dataclass(frozen=True)
class Ref:
    group: str
    rid: int
    args: tuple | None  # twist expressions bound to the target row's vars
    shift: object = 0  # uniform extra twist


_PUNCT = ("(#", "^[", "^{", "|0", "0|")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        two = text[i : i + 2]
        if two == "(#":
            toks.append(("REFOPEN", two, i))
            i += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum()):
                j += 1
            toks.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in "()+*/^[]{},|":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(text, i, f"unexpected character {ch!r}")
    toks.append(("END", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self, k=0):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(self.text, t[2], f"expected {kind!r}, got {t[1]!r}")
        return t

    def fail(self, message):
        raise ParseError(self.text, self.peek()[2], message)

    # grammar -----------------------------------------------------------

    def parse_flist(self):
        items = [self.parse_sum()]
        while self.peek()[0] == "/":
            self.next()
            items.append(self.parse_sum())
        if len(items) == 1:
            return items[0]
        parts = []
        for it in items:
            if isinstance(it, FList):
                parts.extend(it.parts)
            else:
                parts.append((it, 1))
        return FList(tuple(parts))

    def parse_sum(self):
        items = [self.parse_item()]
        while self.peek()[0] == "+":
            self.next()
            items.append(self.parse_item())
        if len(items) == 1:
            return items[0]
        parts = []
        for it in items:
            if isinstance(it, Plus):
                parts.extend(it.parts)
            else:
                parts.append((it, 1))
        return Plus(tuple(parts))

    def parse_item(self):
        # "0|" opens a two-trivial wrapping, closed by "|0"
        if (
            self.peek()[0] == "INT"
            and self.peek()[1] == "0"
            and self.peek(1)[0] == "|"
        ):
            self.next()
            self.next()
            inner = self.parse_sum()
            self.expect("|")
            z = self.expect("INT")
            if z[1] != "0":
                raise ParseError(self.text, z[2], "wrapping must close with |0")
            return Socle(inner)
        return self.parse_power()

    def parse_power(self):
        node = self.parse_tensor()
        return self.parse_suffixes(node)

    def parse_suffixes(self, node):
        while self.peek()[0] == "^":
            self.next()
            t = self.next()
            if t[0] == "[":
                tw = self.parse_twist()
                self.expect("]")
                node = Twist(node, tw) if tw != 0 else node
            elif t[0] == "INT":
                mult = int(t[1])
                node = Plus(((node, mult),))
            else:
                raise ParseError(self.text, t[2], "expected twist or multiplicity")
        return node

    def parse_tensor(self):
        parts = [self.parse_primary_with_twist()]
        while self.peek()[0] == "*":
            self.next()
            parts.append(self.parse_primary_with_twist())
        if len(parts) == 1:
            return parts[0]
        return Tensor(tuple(parts))

    def parse_primary_with_twist(self):
        node = self.parse_primary()
        # twists bind to the primary, multiplicities to the whole power
        while self.peek()[0] == "^" and self.peek(1)[0] == "[":
            self.next()
            self.next()
            tw = self.parse_twist()
            self.expect("]")
            node = Twist(node, tw) if tw != 0 else node
        return node

    def parse_primary(self):
        t = self.next()
        if t[0] == "INT":
            return Irr(int(t[1]))
        if t[0] == "NAME":
            if t[1] == "W" and self.peek()[0] == "(":
                self.next()
                n = self.expect("INT")
                self.expect(")")
                return WeylM(int(n[1]))
            if self.peek()[0] == "REFOPEN":
                return self.parse_ref(t[1])
            raise ParseError(self.text, t[2], f"unexpected name {t[1]!r}")
        if t[0] == "(":
            items = [self.parse_sum()]
            while self.peek()[0] == ",":
                self.next()
                items.append(self.parse_sum())
            self.expect(")")
            if len(items) == 1:
                return items[0]
            return Tup(tuple(items))
        raise ParseError(self.text, t[2], f"unexpected token {t[1]!r}")

    def parse_ref(self, group):
        self.expect("REFOPEN")
        rid = int(self.expect("INT")[1])
        args = None
        if self.peek()[0] == "^" and self.peek(1)[0] == "{":
            self.next()
            self.next()
            args = [self.parse_twist()]
            while self.peek()[0] == ",":
                self.next()
                args.append(self.parse_twist())
            self.expect("}")
            args = tuple(args)
        self.expect(")")
        node = Ref(group, rid, args)
        # a ^[s] suffix on a ref is a uniform extra twist
        if self.peek()[0] == "^" and self.peek(1)[0] == "[":
            self.next()
            self.next()
            tw = self.parse_twist()
            self.expect("]")
            node = Ref(group, rid, args, tw)
        return node

    def parse_twist(self):
        t = self.next()
        if t[0] == "INT":
            return int(t[1])
        if t[0] == "NAME":
            return t[1]
        raise ParseError(self.text, t[2], "expected twist variable or constant")


def parse_expr(text: str):
    p = _Parser(text)
    node = p.parse_flist()
    if p.peek()[0] != "END":
        p.fail("trailing input")
    return node


# ---------------------------------------------------------------------------
# querying and evaluation
# ---------------------------------------------------------------------------


def free_vars(node) -> set:
    if isinstance(node, (Irr, WeylM)):
        return set()
    if isinstance(node, Twist):
        out = free_vars(node.node)
        if isinstance(node.by, str):
            out = out | {node.by}
        return out
    if isinstance(node, (Tensor, Tup)):
        out = set()
        for p in node.parts:
            out |= free_vars(p)
        return out
    if isinstance(node, (Plus, FList)):
        out = set()
        for p, _ in node.parts:
            out |= free_vars(p)
        return out
    if isinstance(node, Socle):
        return free_vars(node.inner)
    if isinstance(node, Ref):
        out = set()
        for a in node.args or ():
            if isinstance(a, str):
                out.add(a)
        if isinstance(node.shift, str):
            out.add(node.shift)
        return out
    raise TypeError(node)


def resolve_twist(tw, twists: dict) -> int:
    if isinstance(tw, int):
        return tw
    try:
        return twists[tw]
    except KeyError:
        raise SL2Error(f"unbound twist variable {tw!r}")


def char_of(node, twists: dict, p) -> Character:
    """Character of a pure rank-1 expression (no refs, no tuples)."""
    if isinstance(node, Irr):
        return irred_char(node.n, p)
    if isinstance(node, WeylM):
        return weyl_char(node.n)
    if isinstance(node, Twist):
        return char_twist(char_of(node.node, twists, p),
                          resolve_twist(node.by, twists), p)
    if isinstance(node, Tensor):
        out = None
        for part in node.parts:
            c = char_of(part, twists, p)
            out = c if out is None else char_tensor(out, c)
        return out
    if isinstance(node, (Plus, FList)):
        return direct_sum(*(
            char_of(part, twists, p)
            for part, mult in node.parts
            for _ in range(mult)
        ))
    if isinstance(node, Socle):
        return direct_sum(char_of(node.inner, twists, p),
                          Character({0: 2}))
    raise SL2Error(f"cannot evaluate {type(node).__name__} as a character")


def fm_of(node, twists: dict, p) -> FactorMultiset:
    """Factor multiset of a pure rank-1 expression."""
    return decompose(char_of(node, twists, p), p)


def summands(node):
    """Top-level orthogonal-sum structure: list of (node, multiplicity)."""
    if isinstance(node, (Plus, FList)):
        return list(node.parts)
    return [(node, 1)]


def tuple_parts(node, arity: int):
    if isinstance(node, Tup):
        if len(node.parts) != arity:
            raise SL2Error(
                f"expected a {arity}-slot tuple, got {len(node.parts)} slots"
            )
        return list(node.parts)
    if arity == 1:
        return [node]
    raise SL2Error(f"expected a {arity}-slot tuple")


def pretty(node) -> str:
    return _pretty(node, 0)


def _pretty(node, level) -> str:
    # level: 0 flist, 1 sum, 2 tensor, 3 atom
    if isinstance(node, Irr):
        return str(node.n)
    if isinstance(node, WeylM):
        return f"W({node.n})"
    if isinstance(node, Twist):
        base = _pretty(node.node, 3)
        return f"{base}^[{node.by}]"
    if isinstance(node, Tensor):
        s = "*".join(_pretty(p, 3) for p in node.parts)
        return f"({s})" if level >= 3 else s
    if isinstance(node, FList):
        s = " / ".join(
            _pretty(p, 1) + (f"^{m}" if m > 1 else "") for p, m in node.parts
        )
        return f"({s})" if level >= 1 else s
    if isinstance(node, Plus):
        if len(node.parts) == 1:
            p, m = node.parts[0]
            body = _pretty(p, 3)
            return f"{body}^{m}" if m > 1 else body
        s = " + ".join(
            (_pretty(p, 2) + (f"^{m}" if m > 1 else "")) for p, m in node.parts
        )
        return f"({s})" if level >= 2 else s
    if isinstance(node, Socle):
        return f"0|({_pretty(node.inner, 1)})|0"
    if isinstance(node, Tup):
        return "(" + ",".join(_pretty(p, 1) for p in node.parts) + ")"
    if isinstance(node, Ref):
        args = ""
        if node.args is not None:
            args = "^{" + ",".join(str(a) for a in node.args) + "}"
        shift = f"^[{node.shift}]" if node.shift != 0 else ""
        return f"{node.group}(#{node.rid}{args}){shift}"
    raise TypeError(node)
