"""The sentence language: Boolean connectives plus consistency operators.

Kinds: T, F, atoms, schematic atoms (@name, registered vocabulary), ~, &, |,
->, Con(s), ordinal-iterated Con[a](s), 1Con(s) (one-consistency), and the
auxiliary theory-relative consistencies ConCF(s) and ConI[n](s).

Text grammar (whitespace between tokens is ignored; canonical rendering puts
one space around binary operators and none elsewhere):

    s   := "T" | "F" | IDENT | "@" NAME | "~" s | "(" s OP s ")"
         | "Con(" s ")" | "Con[" ord "](" s ")" | "1Con(" s ")"
         | "ConCF(" s ")" | "ConI[" NUM "](" s ")"
    OP  := "&" | "|" | "->"

IDENT = [a-z][a-z0-9_]*; schematic NAME additionally allows uppercase, since
the vocabulary mirrors function symbols like F_eps0_total_at_3.

parse(render(s)) == s for every sentence; render(parse(t)) == t for canonical t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import ordinals
from .errors import ParseError, SizeCapExceeded, UnknownSchematicAtom
from .ordinals import Kind, Ordinal

SIZE_CAP = 4096

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_SCHEMATIC_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# registered schematic vocabulary: exact names plus allowed name prefixes
_SCHEMATIC_EXACT: set[str] = {"pi2_soundness"}
_SCHEMATIC_PREFIXES: list[str] = [
    "theta",
    "phi1_",
    "true_pi1",
    "true_pi3",
    "F_eps0_total_at_",
]


def register_schematic(name: str):
    if not _SCHEMATIC_RE.match(name):
        raise ParseError(f"bad schematic atom name: {name!r}")
    _SCHEMATIC_EXACT.add(name)


def register_schematic_prefix(prefix: str):
    _SCHEMATIC_PREFIXES.append(prefix)


def schematic_registered(name: str) -> bool:
    return name in _SCHEMATIC_EXACT or any(
        name.startswith(p) for p in _SCHEMATIC_PREFIXES
    )


class Sentence:
    """Base class; subclasses are immutable and hash-consed by value."""

    __slots__ = ()

    def _children(self) -> tuple["Sentence", ...]:
        return ()

    def size(self) -> int:
        return self._size

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"<{render(self)}>"


def _finish(node: Sentence):
    # cache size and hash once; children are already finished
    size = 1 + sum(c._size for c in node._children())
    if size > SIZE_CAP:
        raise SizeCapExceeded(f"sentence exceeds {SIZE_CAP} nodes")
    object.__setattr__(node, "_size", size)
    object.__setattr__(node, "_hash", hash(node._key()))


@dataclass(frozen=True, eq=False, repr=False)
class Top(Sentence):
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _key(self):
        return ("T",)

    def __eq__(self, other):
        return isinstance(other, Top)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class Bot(Sentence):
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _key(self):
        return ("F",)

    def __eq__(self, other):
        return isinstance(other, Bot)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class Atom(Sentence):
    name: str
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        if not _ATOM_RE.match(self.name):
            raise ParseError(f"bad atom name: {self.name!r}")
        _finish(self)

    def _key(self):
        return ("a", self.name)

    def __eq__(self, other):
        return isinstance(other, Atom) and other.name == self.name

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class SchematicAtom(Sentence):
    """A named stand-in for a sentence fixed outside the language.

    Constructing one registers its name, so rendered output always parses
    back; parsing a never-registered @name is an error.
    """

    name: str
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        if not _SCHEMATIC_RE.match(self.name):
            raise ParseError(f"bad schematic atom name: {self.name!r}")
        if not schematic_registered(self.name):
            register_schematic(self.name)
        _finish(self)

    def _key(self):
        return ("@", self.name)

    def __eq__(self, other):
        return isinstance(other, SchematicAtom) and other.name == self.name

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class Not(Sentence):
    body: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _children(self):
        return (self.body,)

    def _key(self):
        return ("~", self.body._hash)

    def __eq__(self, other):
        return isinstance(other, Not) and other.body == self.body

    def __hash__(self):
        return self._hash


class _Binary(Sentence):
    __slots__ = ()

    def _children(self):
        return (self.left, self.right)

    def _key(self):
        return (self.OP, self.left._hash, self.right._hash)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class And(_Binary):
    left: Sentence
    right: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)
    OP = "&"

    def __post_init__(self):
        _finish(self)


@dataclass(frozen=True, eq=False, repr=False)
class Or(_Binary):
    left: Sentence
    right: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)
    OP = "|"

    def __post_init__(self):
        _finish(self)


@dataclass(frozen=True, eq=False, repr=False)
class Imp(_Binary):
    left: Sentence
    right: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)
    OP = "->"

    def __post_init__(self):
        _finish(self)


@dataclass(frozen=True, eq=False, repr=False)
class Con(Sentence):
    body: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _children(self):
        return (self.body,)

    def _key(self):
        return ("Con", self.body._hash)

    def __eq__(self, other):
        return isinstance(other, Con) and other.body == self.body

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class ConIter(Sentence):
    """Con[a](s): the a-th iterate of s |-> Con(s & .) along an ordinal notation."""

    index: Ordinal
    body: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _children(self):
        return (self.body,)

    def _key(self):
        return ("ConIter", self.index, self.body._hash)

    def __eq__(self, other):
        return (
            isinstance(other, ConIter)
            and other.index == self.index
            and other.body == self.body
        )

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False, repr=False)
class OneCon(Sentence):
    body: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _children(self):
        return (self.body,)

    def _key(self):
        return ("1Con", self.body._hash)

    def __eq__(self, other):
        return isinstance(other, OneCon) and other.body == self.body

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class AuxTag:
    """Which auxiliary theory: cut-free arithmetic, or I-Sigma_n."""

    kind: str  # "cf" | "isigma"
    level: int | None = None

    def __post_init__(self):
        if self.kind not in ("cf", "isigma"):
            raise ValueError(f"bad aux tag kind: {self.kind!r}")
        if (self.kind == "isigma") != (self.level is not None):
            raise ValueError("isigma tags carry a level, cf tags do not")
        if self.level is not None and self.level < 0:
            raise ValueError("isigma level must be >= 0")


CF = AuxTag("cf")


def isigma(n: int) -> AuxTag:
    return AuxTag("isigma", n)


@dataclass(frozen=True, eq=False, repr=False)
class ConAux(Sentence):
    tag: AuxTag
    body: Sentence
    _size: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        _finish(self)

    def _children(self):
        return (self.body,)

    def _key(self):
        return ("ConAux", self.tag, self.body._hash)

    def __eq__(self, other):
        return (
            isinstance(other, ConAux)
            and other.tag == self.tag
            and other.body == self.body
        )

    def __hash__(self):
        return self._hash


TOP = Top()
BOT = Bot()


# --- convenience builders ----------------------------------------------------


def conj(parts) -> Sentence:
    """Right-nested conjunction; empty -> T, singleton -> the part itself."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def iff(a: Sentence, b: Sentence) -> Sentence:
    return And(Imp(a, b), Imp(b, a))


def box(s: Sentence) -> Sentence:
    """Provability of s, expressed by duality: ~Con(~s)."""
    return Not(Con(Not(s)))


def subsentences(s: Sentence):
    yield s
    for c in s._children():
        yield from subsentences(c)


def is_letterless(s: Sentence) -> bool:
    """No atoms or schematic atoms, no 1Con/ConAux, only finite Con[..] indices."""
    if isinstance(s, (Atom, SchematicAtom, OneCon, ConAux)):
        return False
    if isinstance(s, ConIter) and ordinals.as_int(s.index) is None:
        return False
    return all(is_letterless(c) for c in s._children())


# --- iterate unfolding -------------------------------------------------------


def unfold_iter(s: Sentence, budget: int = 8) -> tuple[Sentence, bool]:
    """Rewrite every Con[a](t) by the defining clauses.

    Index 0 gives T, a successor index gives Con(t & Con[pred](t)), and a
    limit index gives the conjunction of the first `budget` fundamental-step
    iterates, which is inexact: the second component is False as soon as any
    limit index was unfolded.  Unfolded output contains no ConIter nodes, so
    unfolding is idempotent.
    """
    if budget < 1:
        raise ValueError("unfold budget must be >= 1")
    return _unfold(s, budget, {})


def _unfold(s: Sentence, budget: int, memo: dict) -> tuple[Sentence, bool]:
    # memo is keyed by object identity: constructed sentences share subtrees
    # heavily, and each shared node only needs one rewrite
    hit = memo.get(id(s))
    if hit is not None:
        return hit
    if isinstance(s, ConIter):
        body, exact = _unfold(s.body, budget, memo)
        expanded, exact2 = _expand_index(s.index, body, budget)
        out = expanded, exact and exact2
    else:
        kids = s._children()
        if not kids:
            out = s, True
        else:
            done = [_unfold(c, budget, memo) for c in kids]
            exact = all(e for _, e in done)
            if all(d is c for (d, _), c in zip(done, kids)):
                out = s, exact
            else:
                out = _rebuild(s, [d for d, _ in done]), exact
    memo[id(s)] = out
    return out


def _expand_index(index: Ordinal, body: Sentence, budget: int) -> tuple[Sentence, bool]:
    kind = ordinals.classify(index)
    if kind is Kind.ZERO:
        return TOP, True
    if kind is Kind.SUCCESSOR:
        inner, exact = _expand_index(ordinals.predecessor(index), body, budget)
        return Con(And(body, inner)), exact
    parts = []
    for i in range(budget):
        step, _ = _expand_index(ordinals.fundamental_step(index, i), body, budget)
        parts.append(step)
    return conj(parts), False


def _rebuild(s: Sentence, kids: list[Sentence]) -> Sentence:
    if isinstance(s, Not):
        return Not(kids[0])
    if isinstance(s, And):
        return And(kids[0], kids[1])
    if isinstance(s, Or):
        return Or(kids[0], kids[1])
    if isinstance(s, Imp):
        return Imp(kids[0], kids[1])
    if isinstance(s, Con):
        return Con(kids[0])
    if isinstance(s, OneCon):
        return OneCon(kids[0])
    if isinstance(s, ConAux):
        return ConAux(s.tag, kids[0])
    raise TypeError(f"cannot rebuild {type(s).__name__}")


# --- text form ---------------------------------------------------------------


def render(s: Sentence) -> str:
    if isinstance(s, Top):
        return "T"
    if isinstance(s, Bot):
        return "F"
    if isinstance(s, Atom):
        return s.name
    if isinstance(s, SchematicAtom):
        return "@" + s.name
    if isinstance(s, Not):
        return "~" + render(s.body)
    if isinstance(s, _Binary):
        return f"({render(s.left)} {s.OP} {render(s.right)})"
    if isinstance(s, Con):
        return f"Con({render(s.body)})"
    if isinstance(s, ConIter):
        return f"Con[{ordinals.render(s.index)}]({render(s.body)})"
    if isinstance(s, OneCon):
        return f"1Con({render(s.body)})"
    if isinstance(s, ConAux):
        if s.tag.kind == "cf":
            return f"ConCF({render(s.body)})"
        return f"ConI[{s.tag.level}]({render(s.body)})"
    raise TypeError(f"cannot render {type(s).__name__}")


_SENT_TOKEN = re.compile(
    r"""\s*(?:
        (?P<arrow>->) | (?P<amp>&) | (?P<bar>\|) | (?P<neg>~)
      | (?P<lpar>\() | (?P<rpar>\))
      | (?P<onecon>1Con\() | (?P<concf>ConCF\() | (?P<coni>ConI\[)
      | (?P<coniter>Con\[) | (?P<con>Con\()
      | (?P<top>T) | (?P<bot>F)
      | (?P<schematic>@[A-Za-z][A-Za-z0-9_]*)
      | (?P<ident>[a-z][a-z0-9_]*)
    )""",
    re.VERBOSE,
)


class _SentenceParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def next_token(self) -> tuple[str, str]:
        m = _SENT_TOKEN.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos :].strip()
            if not rest:
                self.error("unexpected end of input")
            self.error(f"bad token {rest[:10]!r}")
        self.pos = m.end()
        return m.lastgroup, m.group().strip()

    def parse(self) -> Sentence:
        s = self.parse_sentence()
        if self.text[self.pos :].strip():
            self.error(f"trailing input {self.text[self.pos:]!r}")
        return s

    def parse_sentence(self) -> Sentence:
        kind, text = self.next_token()
        if kind == "top":
            return TOP
        if kind == "bot":
            return BOT
        if kind == "ident":
            return Atom(text)
        if kind == "schematic":
            name = text[1:]
            if not schematic_registered(name):
                raise UnknownSchematicAtom(f"unregistered schematic atom @{name}")
            return SchematicAtom(name)
        if kind == "neg":
            return Not(self.parse_sentence())
        if kind == "lpar":
            left = self.parse_sentence()
            op_kind, _ = self.next_token()
            ops = {"amp": And, "bar": Or, "arrow": Imp}
            if op_kind not in ops:
                self.error("expected a binary operator")
            right = self.parse_sentence()
            self.expect("rpar")
            return ops[op_kind](left, right)
        if kind == "con":
            return self.wrap(Con)
        if kind == "onecon":
            return self.wrap(OneCon)
        if kind == "concf":
            return self.wrap(lambda b: ConAux(CF, b))
        if kind == "coniter":
            index = ordinals.parse_ordinal(self.bracket_contents())
            self.expect("lpar")
            return self.wrap(lambda b: ConIter(index, b))
        if kind == "coni":
            level_text = self.bracket_contents()
            if not re.fullmatch(r"0|[1-9][0-9]*", level_text):
                self.error(f"bad ConI level {level_text!r}")
            self.expect("lpar")
            return self.wrap(lambda b: ConAux(isigma(int(level_text)), b))
        self.error(f"unexpected token {text!r}")

    def wrap(self, build) -> Sentence:
        body = self.parse_sentence()
        self.expect("rpar")
        return build(body)

    def expect(self, kind: str):
        got, text = self.next_token()
        if got != kind:
            self.error(f"unexpected token {text!r}")

    def bracket_contents(self) -> str:
        end = self.text.find("]", self.pos)
        if end < 0:
            self.error("missing ]")
        contents = self.text[self.pos : end]
        self.pos = end + 1
        return contents


def parse_sentence(text: str) -> Sentence:
    return _SentenceParser(text).parse()
