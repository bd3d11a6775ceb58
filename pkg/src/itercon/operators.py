"""Sentence operators and the monotonicity harness.

An operator is a total deterministic map on sentences.  The built-ins cover
the maps the workbench studies: the identity, s and its consistency, s and
its k-fold iterated consistency, bare consistency, and negation as the
standard non-example.  Declared properties are claims for the test harness,
nothing here assumes them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import ordinals
from .errors import ParseError
from .oracle import Verdict, proves
from .sentences import (
    BOT,
    TOP,
    And,
    Atom,
    Con,
    ConAux,
    ConIter,
    Imp,
    Not,
    Or,
    SchematicAtom,
    Sentence,
    conj,
    isigma,
    render,
)


def ordinal_label(a: ordinals.Ordinal) -> str:
    """Identifier-safe tag for an ordinal: w^2*3+1 becomes we2x3_1."""
    text = ordinals.render(a)
    for src, dst in (("^", "e"), ("*", "x"), ("+", "_"), ("(", ""), (")", "")):
        text = text.replace(src, dst)
    return text


@dataclass(frozen=True)
class OperatorSpec:
    name: str
    transform: Callable[[Sentence], Sentence]
    declared_properties: frozenset = frozenset()

    def __call__(self, s: Sentence) -> Sentence:
        return self.transform(s)


def apply(op: OperatorSpec, s: Sentence) -> Sentence:
    return op.transform(s)


def conj_con_k(k: int) -> OperatorSpec:
    if k < 0:
        raise ValueError("iteration count must be >= 0")
    index = ordinals.from_int(k)
    return OperatorSpec(
        name=f"conj_con_{k}",
        transform=lambda s: And(s, ConIter(index, s)),
        declared_properties=frozenset(
            {"monotone", "implies_input", f"bounded_by_con_k({k})"}
        ),
    )


def conj_con_ord(a: ordinals.Ordinal) -> OperatorSpec:
    return OperatorSpec(
        name="conj_con_" + ordinal_label(a),
        transform=lambda s: And(s, ConIter(a, s)),
        declared_properties=frozenset({"monotone", "implies_input"}),
    )


IDENTITY = OperatorSpec(
    name="identity",
    transform=lambda s: s,
    declared_properties=frozenset(
        {"monotone", "implies_input", "bounded_by_con_k(0)"}
    ),
)

CONJ_CON = OperatorSpec(
    name="conj_con",
    transform=lambda s: And(s, Con(s)),
    declared_properties=frozenset(
        {"monotone", "implies_input", "bounded_by_con_k(1)"}
    ),
)

CON = OperatorSpec(
    name="con",
    transform=Con,
    declared_properties=frozenset({"monotone", "pi01_valued"}),
)

NEGATE = OperatorSpec(
    name="negate",
    transform=Not,
    declared_properties=frozenset(),
)

BUILTIN_OPERATORS = {
    op.name: op for op in (IDENTITY, CONJ_CON, CON, NEGATE)
}


def get_operator(name: str) -> OperatorSpec:
    """Resolve a registry name, conj_con_K, or conj_con[ordinal]."""
    op = BUILTIN_OPERATORS.get(name)
    if op is not None:
        return op
    if name.startswith("conj_con_") and name[len("conj_con_") :].isdigit():
        return conj_con_k(int(name[len("conj_con_") :]))
    if name.startswith("conj_con[") and name.endswith("]"):
        return conj_con_ord(ordinals.parse_ordinal(name[len("conj_con[") : -1]))
    raise ParseError(f"unknown operator: {name}")


# --- bounded quantifier instantiations ------------------------------------------


def build_star(s: Sentence, bound: int) -> Sentence:
    """s plus the bounded progression conjuncts over the fragment levels."""
    if bound < 1:
        raise ValueError("instantiation bound must be >= 1")
    parts = []
    for x in range(bound):
        tag = isigma(x)
        parts.append(
            Imp(ConAux(tag, s), ConAux(tag, And(s, ConAux(tag, s))))
        )
    return And(s, conj(parts))


def build_slowcon(s: Sentence, bound: int) -> Sentence:
    """Bounded slow-consistency conjunction, guarded by totality atoms."""
    if bound < 1:
        raise ValueError("instantiation bound must be >= 1")
    parts = [
        Imp(SchematicAtom(f"F_eps0_total_at_{x}"), ConAux(isigma(x), s))
        for x in range(bound)
    ]
    return conj(parts)


# --- monotonicity harness --------------------------------------------------------

_LEAVES = (Atom("p"), Atom("q"), TOP, BOT)


def _random_sentence(rng: random.Random, size: int) -> Sentence:
    if size <= 1:
        return _LEAVES[rng.randrange(4)]
    pick = rng.randrange(5)
    if pick == 0:
        return Not(_random_sentence(rng, size - 1))
    if pick == 1:
        return Con(_random_sentence(rng, size - 1))
    split = rng.randrange(1, size - 1) if size > 2 else 1
    left = _random_sentence(rng, split)
    right = _random_sentence(rng, size - 1 - split)
    if pick == 2:
        return And(left, right)
    if pick == 3:
        return Or(left, right)
    return Imp(left, right)


def weakening_pair(rng: random.Random) -> tuple[Sentence, Sentence]:
    """A pair (s, t) with s proving t by construction, via a shared core."""
    core = _random_sentence(rng, rng.randrange(2, 6))
    s = core
    for _ in range(rng.randrange(3)):
        extra = _random_sentence(rng, rng.randrange(1, 4))
        s = And(s, extra) if rng.randrange(2) else And(extra, s)
    t = core
    for _ in range(rng.randrange(3)):
        extra = _random_sentence(rng, rng.randrange(1, 4))
        t = (Or(t, extra), Or(extra, t), Imp(extra, t))[rng.randrange(3)]
    return s, t


def weakening_corpus(count: int, seed: int) -> list:
    rng = random.Random(seed)
    return [weakening_pair(rng) for _ in range(count)]


@dataclass(frozen=True)
class MonotoneItem:
    index: int
    source: Sentence
    target: Sentence
    verdict: Verdict


@dataclass(frozen=True)
class MonotoneReport:
    operator: str
    seed: int
    items: tuple

    def count(self, status: str) -> int:
        return sum(1 for item in self.items if item.verdict.status == status)

    @property
    def valid(self) -> int:
        return self.count("Valid")

    @property
    def invalid(self) -> int:
        return self.count("Invalid")

    @property
    def unknown(self) -> int:
        return self.count("Unknown")

    def render(self) -> str:
        lines = []
        for item in self.items:
            lines.append(f"ITEM {item.index} VERDICT {item.verdict.status}")
            if item.verdict.is_invalid:
                lines.append(
                    f"WITNESS {render(item.source)} => {render(item.target)}"
                )
                lines.append(item.verdict.countermodel.render())
        return "\n".join(lines)


def check_monotone(
    op: OperatorSpec, corpus_size: int, seed: int, **limits
) -> MonotoneReport:
    """Probe op on seeded provable-implication pairs; report each verdict."""
    items = []
    for i, (s, t) in enumerate(weakening_corpus(corpus_size, seed)):
        verdict = proves(op.transform(s), op.transform(t), **limits)
        items.append(MonotoneItem(i, s, t, verdict))
    return MonotoneReport(operator=op.name, seed=seed, items=tuple(items))
