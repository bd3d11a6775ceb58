"""Staged construction of a recursively enumerable set of letterless sentences.

The run walks a fixed enumeration phi_0, phi_1, ... of letterless sentences.
Stage 0 numerates phi_0 and its negation and keeps both "active" after
strengthening each with its own consistency.  Every later stage splits each
active sentence on the next phi, numerates both halves, and reactivates the
halves strengthened with their own consistency again.  Splitting on every
sentence in turn keeps exactly one active sentence true while the numerated
set accumulates arbitrarily strong true members.

After each stage the numerated set is closed, boundedly, under provable
equivalence: every sentence from a small ambient universe whose canonical
letterless form matches a numerated sentence is checked against it with the
oracle in both directions and numerated on success.  Genuine closure under
provable equivalence never terminates, so both the universe size and the
number of closure rounds are explicit bounds carried by the state.

Verification helpers re-check the two claims that make the construction
interesting: distinct active sentences are jointly refutable, and every true
member of the enumeration is provable from some true numerated sentence.  A
bounded search for a sentence strictly between phi & Con(phi) and phi that
escaped numeration is included; exhausting the search proves nothing, which
is why its negative result is only reported, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .constructions import ClaimEntry, ClaimReport, _entry
from .errors import NotLetterless, StageCapExceeded
from .oracle import (
    decide,
    letterless_nf,
    proves,
    strictly_proves,
    truth_letterless,
)
from .sentences import (
    BOT,
    TOP,
    And,
    Con,
    Imp,
    Not,
    Or,
    Sentence,
    is_letterless,
    render,
)

DEFAULT_STAGE_CAP = 8
DEFAULT_UNIVERSE = 5

_UNIVERSE_BY_SIZE: dict[int, tuple[Sentence, ...]] = {}


def _of_size(n: int) -> tuple[Sentence, ...]:
    got = _UNIVERSE_BY_SIZE.get(n)
    if got is None:
        if n == 1:
            items = [BOT, TOP]
        else:
            items = []
            for s in _of_size(n - 1):
                items.append(Con(s))
                items.append(Not(s))
            for left_n in range(1, n - 1):
                for a in _of_size(left_n):
                    for b in _of_size(n - 1 - left_n):
                        items.append(And(a, b))
                        items.append(Or(a, b))
                        items.append(Imp(a, b))
        got = tuple(sorted(items, key=render))
        _UNIVERSE_BY_SIZE[n] = got
    return got


def letterless_universe(max_size: int) -> list[Sentence]:
    """Every letterless sentence up to max_size nodes, smallest first.

    The grammar is T, F, Con, ~, &, |, ->; ties within a size are broken by
    render text, so the order is reproducible across runs.
    """
    out: list[Sentence] = []
    for n in range(1, max_size + 1):
        out.extend(_of_size(n))
    return out


def canonical_enumeration(count: int) -> tuple[Sentence, ...]:
    """The first `count` sentences of the default enumeration."""
    out: list[Sentence] = []
    n = 1
    while len(out) < count:
        out.extend(_of_size(n))
        n += 1
    return tuple(out[:count])


def _key(s: Sentence):
    return (s.size(), render(s))


def _sorted(sentences) -> list[Sentence]:
    return sorted(sentences, key=_key)


@lru_cache(maxsize=None)
def _nf_key(s: Sentence) -> str:
    return render(letterless_nf(s))


@dataclass(frozen=True)
class EnumeratorState:
    """One snapshot of the staged run; every operation returns a new state."""

    stage: int
    enumeration: tuple[Sentence, ...]
    numerated: frozenset[Sentence]
    active: frozenset[Sentence]
    closure_depth: int
    stage_cap: int = DEFAULT_STAGE_CAP
    closure_universe: int = DEFAULT_UNIVERSE


def _close(
    numerated: set[Sentence], closure_depth: int, closure_universe: int
) -> frozenset[Sentence]:
    out = set(numerated)
    if closure_depth <= 0:
        return frozenset(out)
    candidates = [
        (u, _nf_key(u)) for u in letterless_universe(closure_universe)
    ]
    for _ in range(closure_depth):
        reps: dict[str, Sentence] = {}
        for s in _sorted(out):
            reps.setdefault(_nf_key(s), s)
        grew = False
        for u, key in candidates:
            if u in out:
                continue
            rep = reps.get(key)
            if rep is None:
                continue
            if proves(u, rep).is_valid and proves(rep, u).is_valid:
                out.add(u)
                grew = True
        if not grew:
            break
    return frozenset(out)


def init(
    closure_depth: int,
    enumeration=None,
    *,
    stage_cap: int = DEFAULT_STAGE_CAP,
    closure_universe: int = DEFAULT_UNIVERSE,
) -> EnumeratorState:
    """Stage 0: numerate phi_0 and ~phi_0, activate both with their Con."""
    if closure_depth < 0:
        raise ValueError("closure depth must be >= 0")
    if stage_cap < 0:
        raise ValueError("stage cap must be >= 0")
    if enumeration is None:
        phis = canonical_enumeration(stage_cap + 1)
    else:
        phis = tuple(enumeration)
        if not phis:
            raise ValueError("enumeration must contain at least one sentence")
        for phi in phis:
            if not is_letterless(phi):
                raise NotLetterless(
                    "enumeration entries must be letterless: " + render(phi)
                )
        stage_cap = min(stage_cap, len(phis) - 1)
    phi0 = phis[0]
    numerated = {phi0, Not(phi0)}
    active = frozenset(And(s, Con(s)) for s in numerated)
    return EnumeratorState(
        stage=0,
        enumeration=phis,
        numerated=_close(numerated, closure_depth, closure_universe),
        active=active,
        closure_depth=closure_depth,
        stage_cap=stage_cap,
        closure_universe=closure_universe,
    )


def step(st: EnumeratorState) -> EnumeratorState:
    """Split every active sentence on the next phi and re-close."""
    if st.stage >= st.stage_cap:
        raise StageCapExceeded(
            f"stage cap {st.stage_cap} reached at stage {st.stage}"
        )
    phi = st.enumeration[st.stage + 1]
    numerated = set(st.numerated)
    active = set()
    for psi in _sorted(st.active):
        for half in (And(psi, phi), And(psi, Not(phi))):
            numerated.add(half)
            active.add(And(half, Con(half)))
    return replace(
        st,
        stage=st.stage + 1,
        numerated=_close(numerated, st.closure_depth, st.closure_universe),
        active=frozenset(active),
    )


def run(
    stages: int,
    closure_depth: int,
    enumeration=None,
    *,
    stage_cap: int = DEFAULT_STAGE_CAP,
    closure_universe: int = DEFAULT_UNIVERSE,
) -> list[EnumeratorState]:
    """States for stage 0 through `stages`, in order."""
    st = init(
        closure_depth,
        enumeration,
        stage_cap=stage_cap,
        closure_universe=closure_universe,
    )
    out = [st]
    for _ in range(stages):
        st = step(st)
        out.append(st)
    return out


def true_actives(st: EnumeratorState) -> tuple[Sentence, ...]:
    """The active sentences that are true; the invariant is exactly one."""
    return tuple(s for s in _sorted(st.active) if truth_letterless(s))


def dump(st: EnumeratorState) -> str:
    lines = [f"STAGE {st.stage}"]
    for s in _sorted(st.numerated):
        lines.append(f"NUM {render(s)}")
    for s in _sorted(st.active):
        lines.append(f"ACT {render(s)}")
    for s in true_actives(st):
        lines.append(f"TRUE {render(s)}")
    lines.append(
        f"CLOSURE DEPTH {st.closure_depth} "
        f"UNIVERSE {st.closure_universe} CAP {st.stage_cap}"
    )
    return "\n".join(lines)


def verify_incompatibility(st: EnumeratorState, **limits) -> ClaimReport:
    """No two distinct active sentences have a consistent conjunction."""
    acts = _sorted(st.active)
    entries = []
    for i in range(len(acts)):
        for j in range(i + 1, len(acts)):
            claim = Not(And(acts[i], acts[j]))
            entries.append(
                _entry(f"pair-{i}-{j}", decide(claim, **limits), claim)
            )
    return ClaimReport(claims=tuple(entries))


def verify_unbounded_truth(
    st: EnumeratorState, horizon: int, **limits
) -> ClaimReport:
    """Each true phi_k up to the horizon follows from a true numerated one."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    if horizon > st.stage:
        raise ValueError(
            f"horizon {horizon} exceeds the current stage {st.stage}"
        )
    numerated = _sorted(st.numerated)
    entries = []
    for k in range(horizon + 1):
        phi = st.enumeration[k]
        if not truth_letterless(phi):
            continue
        unknown_reason = None
        witness = None
        for psi in numerated:
            if not truth_letterless(psi):
                continue
            verdict = proves(psi, phi, **limits)
            if verdict.is_valid:
                witness = psi
                break
            if verdict.is_unknown and unknown_reason is None:
                unknown_reason = verdict.reason
        if witness is not None:
            entry = ClaimEntry(
                f"phi-{k}", "Yes", trace="witness: " + render(witness)
            )
        elif unknown_reason is not None:
            entry = ClaimEntry(f"phi-{k}", "Unknown", reason=unknown_reason)
        else:
            entry = ClaimEntry(
                f"phi-{k}",
                "No",
                trace="no true numerated sentence proves " + render(phi),
            )
        entries.append(entry)
    return ClaimReport(claims=tuple(entries))


@dataclass(frozen=True)
class GapResult:
    """Outcome of the bounded search for a skipped intermediate sentence."""

    found: bool
    base: Sentence
    witness: Sentence | None = None

    def render(self) -> str:
        lines = [f"GAP BASE {render(self.base)}"]
        if self.found:
            lines.append(f"GAP WITNESS {render(self.witness)}")
        else:
            lines.append("GAP NOT FOUND")
        return "\n".join(lines)


def search_gap_witness(
    st: EnumeratorState, size_bound: int, **limits
) -> GapResult:
    """Look for psi outside the numerated set strictly between
    phi & Con(phi) and phi, for the smallest true numerated phi.

    A NotFound outcome only exhausts the bounded universe; it does not
    refute the existence of such a sentence.
    """
    true_nums = [s for s in _sorted(st.numerated) if truth_letterless(s)]
    if not true_nums:
        raise ValueError("no numerated sentence is true")
    base = true_nums[0]
    upper = And(base, Con(base))
    for psi in letterless_universe(size_bound):
        if psi in st.numerated:
            continue
        above = strictly_proves(upper, psi, **limits)
        if above.answer != "Yes":
            continue
        below = strictly_proves(psi, base, **limits)
        if below.answer == "Yes":
            return GapResult(True, base, psi)
    return GapResult(False, base)
