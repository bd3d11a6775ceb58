"""Provability decision oracle for the consistency-operator language.

``decide`` settles validity over finite transitive irreflexive Kripke models,
which on this fragment coincides with schematic provability of the sentence
under every arithmetical reading of Con.  The procedure is a backtracking
tableau: searching for a model of ``~s``, every propositional rule is applied
in leftmost-lowest node-id order, and a true consistency statement Con(a)
spawns a child world seeded with ``a``, with ``~Con(a)`` (the witness is
chosen maximal), and with every consistency statement already known false,
which is what keeps the search well-founded.  Memoizing on the seeded
formula set gives the subformula loop check.

Everything outside the decidable fragment (1Con, ConCF/ConI, transfinite
iteration indices) yields Unknown immediately; schematic atoms are fine and
are treated as opaque atoms.  Resource exhaustion also yields Unknown, never
a guessed verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ordinals
from .errors import NotLetterless
from .sentences import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Con,
    ConAux,
    ConIter,
    Imp,
    Not,
    OneCon,
    Or,
    SchematicAtom,
    Sentence,
    Top,
    is_letterless,
    render,
    subsentences,
    unfold_iter,
)

DEFAULT_BUDGET = 1_000_000
DEFAULT_MODEL_CAP = 512

VALID = "Valid"
INVALID = "Invalid"
UNKNOWN = "Unknown"

REASON_ONECON = "1Con outside the decidable fragment"
REASON_AUX = "ConCF/ConI auxiliary consistency outside the decidable fragment"
REASON_TRANSFINITE = "transfinite iteration index outside the decidable fragment"
REASON_BUDGET = "resource: expansion budget exceeded"
REASON_MODEL_CAP = "resource: countermodel size cap exceeded"


@dataclass(frozen=True)
class Countermodel:
    """Finite pointed model: worlds 0..n-1, strict order, atoms per world."""

    worlds: int
    relation: frozenset
    valuation: tuple
    root: int

    def __post_init__(self):
        succ = {}
        for i, j in self.relation:
            if not (0 <= i < self.worlds and 0 <= j < self.worlds):
                raise ValueError("relation out of range")
            if i == j:
                raise ValueError("relation not irreflexive")
            succ.setdefault(i, set()).add(j)
        for i, out in succ.items():
            for j in out:
                if not succ.get(j, set()) <= out:
                    raise ValueError("relation not transitive")
        if len(self.valuation) != self.worlds:
            raise ValueError("valuation does not cover the worlds")
        if not (0 <= self.root < self.worlds):
            raise ValueError("designated world out of range")

    def render(self) -> str:
        lines = [f"WORLDS {self.worlds}"]
        for i, j in sorted(self.relation):
            lines.append(f"REL {i} {j}")
        for i, names in enumerate(self.valuation):
            for name in sorted(names):
                lines.append(f"VAL {i} {name}")
        lines.append(f"ROOT {self.root}")
        return "\n".join(lines)


def render_countermodel(cm: Countermodel) -> str:
    return cm.render()


@dataclass(frozen=True)
class Verdict:
    status: str
    countermodel: Countermodel | None = None
    reason: str | None = None

    @property
    def is_valid(self) -> bool:
        return self.status == VALID

    @property
    def is_invalid(self) -> bool:
        return self.status == INVALID

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    @property
    def resource_limited(self) -> bool:
        return self.status == UNKNOWN and (self.reason or "").startswith("resource")


def _valid() -> Verdict:
    return Verdict(VALID)


def _invalid(cm: Countermodel) -> Verdict:
    return Verdict(INVALID, countermodel=cm)


def _unknown(reason: str) -> Verdict:
    return Verdict(UNKNOWN, reason=reason)


def _scan_fragment(s: Sentence) -> tuple[str | None, bool]:
    """(first reason outside the decidable fragment, any Con[..] present)."""
    seen = set()
    stack = [s]
    has_iter = False
    while stack:
        sub = stack.pop()
        if id(sub) in seen:
            continue
        seen.add(id(sub))
        if isinstance(sub, OneCon):
            return REASON_ONECON, has_iter
        if isinstance(sub, ConAux):
            return REASON_AUX, has_iter
        if isinstance(sub, ConIter):
            if ordinals.as_int(sub.index) is None:
                return REASON_TRANSFINITE, has_iter
            has_iter = True
        stack.extend(reversed(sub._children()))
    return None, has_iter


def fragment_reason(s: Sentence) -> str | None:
    """First reason the sentence falls outside the decidable fragment."""
    return _scan_fragment(s)[0]


# --- interned formula store ----------------------------------------------------

_TOP, _BOT, _ATOM, _NOT, _AND, _OR, _IMP, _DIA = range(8)

_BINOP = {And: _AND, Or: _OR, Imp: _IMP}


class _Budget(Exception):
    pass


class _World:
    __slots__ = ("atoms", "children", "size")

    def __init__(self, atoms, children):
        self.atoms = atoms
        self.children = children
        self.size = 1 + sum(c.size for c in children)


class _Search:
    """One decide call: interned nodes plus the tableau state."""

    __slots__ = ("kind", "a1", "a2", "name", "ids", "budget", "memo", "_tcache")

    def __init__(self, budget):
        self.kind = []
        self.a1 = []
        self.a2 = []
        self.name = []
        self.ids = {}
        self.budget = budget
        self.memo = {}
        self._tcache = {}

    def _intern(self, key, name=None):
        i = self.ids.get(key)
        if i is None:
            i = len(self.kind)
            self.ids[key] = i
            self.kind.append(key[0])
            self.a1.append(key[1] if len(key) > 1 else None)
            self.a2.append(key[2] if len(key) > 2 else None)
            self.name.append(name)
        return i

    def translate(self, s: Sentence) -> int:
        # cache on object identity so shared subtrees translate once
        i = self._tcache.get(id(s))
        if i is not None:
            return i
        if isinstance(s, Top):
            i = self._intern((_TOP,))
        elif isinstance(s, Bot):
            i = self._intern((_BOT,))
        elif isinstance(s, Atom):
            i = self._intern((_ATOM, s.name), s.name)
        elif isinstance(s, SchematicAtom):
            i = self._intern((_ATOM, "@" + s.name), "@" + s.name)
        elif isinstance(s, Not):
            i = self._intern((_NOT, self.translate(s.body)))
        elif isinstance(s, Con):
            i = self._intern((_DIA, self.translate(s.body)))
        else:
            op = _BINOP[type(s)]
            left = self.translate(s.left)
            i = self._intern((op, left, self.translate(s.right)))
        self._tcache[id(s)] = i
        return i

    def _spend(self):
        self.budget -= 1
        if self.budget < 0:
            raise _Budget()

    def _add(self, assign, alpha, beta, i, sign) -> bool:
        """Record a signed formula; False means the branch just closed."""
        k = self.kind[i]
        if k == _TOP:
            return sign
        if k == _BOT:
            return not sign
        have = assign.get(i)
        if have is not None:
            return have == sign
        assign[i] = sign
        if k == _NOT:
            alpha.add(i)
        elif k == _AND:
            (alpha if sign else beta).add(i)
        elif k == _OR or k == _IMP:
            (beta if sign else alpha).add(i)
        return True

    # non-branching rules drain before any branching rule fires, so clashes
    # surface as early as possible; within each pool the lowest node id goes
    # first, keeping countermodels reproducible
    def _saturate(self, assign, alpha, beta):
        while alpha:
            self._spend()
            i = min(alpha)
            alpha.discard(i)
            k = self.kind[i]
            sign = assign[i]
            if k == _NOT:
                if not self._add(assign, alpha, beta, self.a1[i], not sign):
                    return None
                continue
            left, right = self.a1[i], self.a2[i]
            if k == _AND:
                parts = ((left, True), (right, True))
            elif k == _OR:
                parts = ((left, False), (right, False))
            else:
                parts = ((left, True), (right, False))
            for j, sj in parts:
                if not self._add(assign, alpha, beta, j, sj):
                    return None
        if beta:
            self._spend()
            i = min(beta)
            beta.discard(i)
            k = self.kind[i]
            sign = assign[i]
            left, right = self.a1[i], self.a2[i]
            if k == _AND:
                alts = ((left, False), (right, False))
            elif k == _OR:
                alts = ((left, True), (right, True))
            else:
                alts = ((left, False), (right, True))
            for j, sj in alts:
                branch_assign = dict(assign)
                branch_alpha = set(alpha)
                branch_beta = set(beta)
                if self._add(branch_assign, branch_alpha, branch_beta, j, sj):
                    model = self._saturate(
                        branch_assign, branch_alpha, branch_beta
                    )
                    if model is not None:
                        return model
            return None
        return self._modal(assign)

    def _modal(self, assign):
        dias = sorted(i for i, sign in assign.items() if self.kind[i] == _DIA)
        seed_base = []
        for i in dias:
            if not assign[i]:
                seed_base.append((self.a1[i], False))
                seed_base.append((i, False))
        children = []
        for i in dias:
            if assign[i]:
                self._spend()
                seed = frozenset(seed_base + [(self.a1[i], True), (i, False)])
                child = self._solve(seed)
                if child is None:
                    return None
                children.append(child)
        atoms = frozenset(
            self.name[i]
            for i, sign in assign.items()
            if sign and self.kind[i] == _ATOM
        )
        return _World(atoms, tuple(children))

    def _solve(self, seed):
        if seed in self.memo:
            return self.memo[seed]
        assign = {}
        alpha = set()
        beta = set()
        model = None
        for j, sj in sorted(seed):
            if not self._add(assign, alpha, beta, j, sj):
                break
        else:
            model = self._saturate(assign, alpha, beta)
        self.memo[seed] = model
        return model


def _assemble(tree: _World) -> Countermodel:
    valuation = []
    edges = []

    def emit(node):
        idx = len(valuation)
        valuation.append(node.atoms)
        for child in node.children:
            ci = emit(child)
            edges.extend((idx, j) for j in range(ci, ci + child.size))
        return idx

    emit(tree)
    return Countermodel(
        worlds=len(valuation),
        relation=frozenset(edges),
        valuation=tuple(valuation),
        root=0,
    )


def decide(
    s: Sentence,
    *,
    budget: int = DEFAULT_BUDGET,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> Verdict:
    """Valid, Invalid with a countermodel, or Unknown. Deterministic."""
    reason, has_iter = _scan_fragment(s)
    if reason is not None:
        return _unknown(reason)
    if has_iter:
        unfolded, exact = unfold_iter(s)
        assert exact
    else:
        unfolded = s
    search = _Search(budget)
    root = search.translate(unfolded)
    try:
        tree = search._solve(frozenset([(root, False)]))
    except _Budget:
        return _unknown(REASON_BUDGET)
    if tree is None:
        return _valid()
    if tree.size > model_cap:
        return _unknown(REASON_MODEL_CAP)
    return _invalid(_assemble(tree))


def proves(s: Sentence, t: Sentence, **limits) -> Verdict:
    """decide(s -> t): does every reading that proves s also prove t."""
    return decide(Imp(s, t), **limits)


@dataclass(frozen=True)
class StrictResult:
    answer: str
    forward: Verdict
    backward: Verdict | None = None


def strictly_proves(s: Sentence, t: Sentence, **limits) -> StrictResult:
    """Yes iff s proves t and t does not prove s back."""
    forward = proves(s, t, **limits)
    if forward.is_invalid:
        return StrictResult("No", forward)
    if forward.is_unknown:
        return StrictResult("Unknown", forward)
    backward = proves(t, s, **limits)
    if backward.is_invalid:
        return StrictResult("Yes", forward, backward)
    if backward.is_valid:
        return StrictResult("No", forward, backward)
    return StrictResult("Unknown", forward, backward)


# --- letterless fragment --------------------------------------------------------

# Truth of a letterless sentence at a world depends only on how long a chain
# descends from the world, so each sentence has a height profile that
# stabilizes by its Con-nesting depth.  Standard-model truth is the stable
# value, and the canonical form reads off the profile's true-intervals along
# the chain Con[k](T), whose profile is "height >= k".


def _require_letterless(s: Sentence):
    if not is_letterless(s):
        raise NotLetterless(
            "letterless evaluation needs a sentence without atoms, schematic "
            "atoms, 1Con, ConCF/ConI, or transfinite indices: " + render(s)
        )


def _con_depth(s: Sentence) -> int:
    if isinstance(s, Con):
        return 1 + _con_depth(s.body)
    kids = s._children()
    return max((_con_depth(c) for c in kids), default=0)


def _profile(s: Sentence, top: int, memo) -> tuple:
    got = memo.get(s)
    if got is not None:
        return got
    if isinstance(s, Top):
        out = (True,) * (top + 1)
    elif isinstance(s, Bot):
        out = (False,) * (top + 1)
    elif isinstance(s, Not):
        out = tuple(not v for v in _profile(s.body, top, memo))
    elif isinstance(s, And):
        left = _profile(s.left, top, memo)
        right = _profile(s.right, top, memo)
        out = tuple(a and b for a, b in zip(left, right))
    elif isinstance(s, Or):
        left = _profile(s.left, top, memo)
        right = _profile(s.right, top, memo)
        out = tuple(a or b for a, b in zip(left, right))
    elif isinstance(s, Imp):
        left = _profile(s.left, top, memo)
        right = _profile(s.right, top, memo)
        out = tuple((not a) or b for a, b in zip(left, right))
    elif isinstance(s, Con):
        inner = _profile(s.body, top, memo)
        seen = False
        acc = []
        for v in inner:
            acc.append(seen)
            seen = seen or v
        out = tuple(acc)
    else:
        raise AssertionError("unreachable after the letterless gate")
    memo[s] = out
    return out


def _letterless_profile(s: Sentence):
    _require_letterless(s)
    unfolded, exact = unfold_iter(s)
    assert exact
    depth = _con_depth(unfolded)
    return _profile(unfolded, depth, {}), depth


def truth_letterless(s: Sentence) -> bool:
    """Truth with every iterated consistency statement of T counted true."""
    profile, depth = _letterless_profile(s)
    return profile[depth]


def _chain(k: int) -> Sentence:
    return ConIter(ordinals.from_int(k), TOP)


def letterless_nf(s: Sentence) -> Sentence:
    """Canonical equivalent over the chain {Con[k](T)}; idempotent."""
    profile, depth = _letterless_profile(s)
    parts = []
    d = 0
    while d <= depth:
        if not profile[d]:
            d += 1
            continue
        start = d
        while d <= depth and profile[d]:
            d += 1
        if d > depth:
            parts.append(TOP if start == 0 else _chain(start))
        elif start == 0:
            parts.append(Not(_chain(d)))
        else:
            parts.append(And(_chain(start), Not(_chain(d))))
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out
