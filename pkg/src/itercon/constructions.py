"""Executable proof gadgets with machine-checked instance verification.

Each constructor builds the sentence the argument needs and then runs the
oracle on the finitely many implication claims the argument actually uses.
Quantified side conditions are replaced by their explicit instances, which
are conjoined as antecedents and listed in hypotheses_used, so a report
always shows exactly what was assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ordinals
from .errors import HypothesisNotMet, StageCapExceeded
from .operators import OperatorSpec, ordinal_label
from .oracle import Countermodel, Verdict, decide, proves, strictly_proves
from .sentences import (
    TOP,
    And,
    Con,
    ConIter,
    Imp,
    Not,
    SchematicAtom,
    Sentence,
    conj,
    iff,
    render,
    unfold_iter,
)


@dataclass(frozen=True)
class ClaimEntry:
    label: str
    verdict: str
    witness: Countermodel | None = None
    falsified: Sentence | None = None
    trace: str | None = None
    reason: str | None = None


@dataclass(frozen=True)
class ClaimReport:
    claims: tuple
    hypotheses_used: tuple = ()

    @property
    def verdict(self) -> str:
        statuses = {c.verdict for c in self.claims}
        if "No" in statuses:
            return "No"
        if "Unknown" in statuses:
            return "Unknown"
        return "Yes"

    def render(self) -> str:
        lines = []
        for c in self.claims:
            lines.append(f"CLAIM {c.label} VERDICT {c.verdict}")
            if c.trace:
                lines.append(f"TRACE {c.trace}")
            if c.reason:
                lines.append(f"REASON {c.reason}")
            if c.witness is not None:
                lines.append(c.witness.render())
        for h in self.hypotheses_used:
            lines.append(f"HYP {render(h)}")
        return "\n".join(lines)


def _entry(label: str, verdict: Verdict, claim: Sentence) -> ClaimEntry:
    if verdict.is_valid:
        return ClaimEntry(label, "Yes")
    if verdict.is_invalid:
        return ClaimEntry(
            label, "No", witness=verdict.countermodel, falsified=claim
        )
    return ClaimEntry(label, "Unknown", reason=verdict.reason)


def _checked(label: str, claim: Sentence, **limits) -> ClaimEntry:
    return _entry(label, decide(claim, **limits), claim)


# --- consistency inversion -------------------------------------------------------


def inversion_witness(s: Sentence, **limits):
    """The witness Con(T) -> s, with both halves of its equivalence to s."""
    pre = proves(s, Con(TOP), **limits)
    if pre.is_invalid:
        raise HypothesisNotMet(
            "the input does not prove Con(T): " + render(s),
            countermodel=pre.countermodel,
        )
    psi = Imp(Con(TOP), s)
    pack = And(psi, Con(psi))
    report = ClaimReport(
        claims=(
            _checked("forward", Imp(s, pack), **limits),
            _checked("backward", Imp(pack, s), **limits),
        )
    )
    return psi, report


# --- the theta trick -------------------------------------------------------------


def _chi_at(op: OperatorSpec, x: Sentence) -> Sentence:
    return Imp(Con(x), Con(And(x, Not(op.transform(x)))))


def _strictness_entry(op: OperatorSpec, psi: Sentence, **limits) -> ClaimEntry:
    consistency = decide(Not(psi), **limits)
    if consistency.is_valid:
        return ClaimEntry(
            "strictness", "Yes", trace="vacuous: constructed sentence refutable"
        )
    if consistency.is_unknown:
        return ClaimEntry("strictness", "Unknown", reason=consistency.reason)
    strict = strictly_proves(op.transform(psi), psi, **limits)
    if strict.answer == "Yes":
        return ClaimEntry("strictness", "Yes")
    if strict.answer == "Unknown":
        reason = (strict.forward.reason or
                  (strict.backward.reason if strict.backward else None))
        return ClaimEntry("strictness", "Unknown", reason=reason)
    if strict.forward.is_invalid:
        return ClaimEntry(
            "strictness",
            "No",
            witness=strict.forward.countermodel,
            falsified=Imp(op.transform(psi), psi),
        )
    return ClaimEntry(
        "strictness",
        "No",
        witness=consistency.countermodel,
        falsified=Not(psi),
        trace="mutual provable implication, operator not strict here",
    )


def bbb_theta(psi0: Sentence, op: OperatorSpec, **limits):
    """Build theta over psi0 and machine-check the three claims it rests on."""
    psi = And(psi0, _chi_at(op, psi0))
    op_psi = op.transform(psi)
    theta = And(psi, Imp(op_psi, Con(psi)))
    op_theta = op.transform(theta)
    h_implies = Imp(op_theta, theta)
    chi_psi = _chi_at(op, psi)
    claims = (
        _strictness_entry(op, psi, **limits),
        _checked(
            "claim-1",
            Imp(And(h_implies, op_theta), And(theta, op_psi)),
            **limits,
        ),
        _checked(
            "claim-2",
            Imp(And(theta, op_psi), And(psi, Con(psi))),
            **limits,
        ),
        _checked(
            "claim-3",
            Imp(And(chi_psi, And(psi, Con(psi))), And(theta, Con(theta))),
            **limits,
        ),
        _checked(
            "conclusion",
            Imp(conj([h_implies, chi_psi, op_theta]), And(theta, Con(theta))),
            **limits,
        ),
    )
    report = ClaimReport(claims=claims, hypotheses_used=(h_implies, chi_psi))
    return theta, report


# --- the finite tower ------------------------------------------------------------


def _con_pow(k: int, s: Sentence) -> Sentence:
    unfolded, exact = unfold_iter(ConIter(ordinals.from_int(k), s))
    assert exact
    return unfolded


def ttt_tower(phi1: Sentence, op: OperatorSpec, n: int, *, cap: int = 4, **limits):
    """The tower phi_{k+1} = phi_k & (op(phi_k) -> Con^k(phi_k)), checked."""
    if not 0 <= n <= cap:
        raise ValueError(f"tower height must be between 0 and {cap}")
    seq = [phi1]
    for k in range(1, n + 1):
        prev = seq[-1]
        seq.append(And(prev, Imp(op.transform(prev), _con_pow(k, prev))))
    claims = []
    hyps = []
    for k in range(1, n + 1):
        phi_k = seq[k - 1]
        op_k = op.transform(phi_k)
        h_a = Imp(Con(phi_k), Con(And(phi_k, Not(op_k))))
        h_b = Imp(
            _con_pow(k, phi_k),
            Con(Not(iff(And(phi_k, _con_pow(k - 1, phi_k)), op_k))),
        )
        hyps.extend((h_a, h_b))
        claim = Imp(
            conj([h_a, h_b, And(phi_k, _con_pow(k, phi_k))]),
            _con_pow(k, seq[k]),
        )
        claims.append(_checked(f"lemma-{k}", claim, **limits))
    if n >= 1:
        claims.append(_equivalence_entry(seq, op, n, **limits))
    report = ClaimReport(claims=tuple(claims), hypotheses_used=tuple(hyps))
    return seq, report


def _equivalence_entry(seq, op: OperatorSpec, n: int, **limits) -> ClaimEntry:
    saw_unknown = None
    for k in range(n + 1):
        for i, phi in enumerate(seq, start=1):
            target = And(phi, _con_pow(k, phi))
            refutable = decide(Not(target), **limits)
            if refutable.is_valid:
                continue
            if refutable.is_unknown:
                saw_unknown = refutable.reason
                continue
            equal = decide(iff(op.transform(phi), target), **limits)
            if equal.is_valid:
                return ClaimEntry(
                    "equivalence", "Yes", trace=f"k={k} at phi_{i}"
                )
            if equal.is_unknown:
                saw_unknown = equal.reason
    if saw_unknown is not None:
        return ClaimEntry("equivalence", "Unknown", reason=saw_unknown)
    return ClaimEntry(
        "equivalence",
        "No",
        trace=f"no coincidence with the k-jump for k <= {n} on this tower",
    )


# --- transfinite schematic sequences ---------------------------------------------


def _limit_samples(limit_ordinal, budget: int):
    samples = []
    i = 0
    while len(samples) < budget:
        step = ordinals.fundamental_step(limit_ordinal, i)
        i += 1
        if step.is_zero():
            continue
        samples.append(step)
    return samples


def _staged_sequence(alpha, build_one, build_succ, build_limit, limit_budget, stage_cap):
    if alpha.is_zero():
        raise ValueError("stage sequences start at 1")
    stages = {}

    def ensure(beta):
        got = stages.get(beta)
        if got is not None:
            return got
        if len(stages) >= stage_cap:
            raise StageCapExceeded(f"more than {stage_cap} stages on the path")
        kind = ordinals.classify(beta)
        if beta == ordinals.ONE:
            built = build_one()
        elif kind is ordinals.Kind.SUCCESSOR:
            prev = ensure(ordinals.predecessor(beta))
            built = build_succ(beta, prev, stages)
        else:
            for gamma in _limit_samples(beta, limit_budget):
                ensure(gamma)
            built = build_limit(beta, stages)
        stages[beta] = built
        return built

    ensure(alpha)
    return list(stages.items())


def theta_sequence(
    alpha, op: OperatorSpec, limit_budget: int, *, stage_cap: int = 64
):
    """Schematic theta stages along the canonical path up to alpha."""

    def build_one():
        return SchematicAtom("theta1_" + op.name)

    def build_succ(beta, prev, stages):
        step = SchematicAtom(f"theta_step_{ordinal_label(beta)}_{op.name}")
        return And(prev, step)

    def build_limit(beta, stages):
        return conj(
            [
                SchematicAtom(f"true_pi3_theta_{ordinal_label(g)}_{op.name}")
                for g in stages
            ]
        )

    return _staged_sequence(
        alpha, build_one, build_succ, build_limit, limit_budget, stage_cap
    )


def _true_pi1(op: OperatorSpec, delta, value: Sentence) -> Sentence:
    applied = op.transform(value)
    if isinstance(applied, Con):
        return applied
    if isinstance(applied, ConIter) and (ordinals.as_int(applied.index) or 0) >= 1:
        return applied
    return SchematicAtom(f"true_pi1_phi_{ordinal_label(delta)}_{op.name}")


def main_phi_sequence(
    alpha, op: OperatorSpec, limit_budget: int, *, stage_cap: int = 64
):
    """The phi stages: the four-conjunct base plus guarded reflection steps."""
    phi1 = conj(
        [
            SchematicAtom("phi1_strictness_" + op.name),
            SchematicAtom("phi1_noncoincidence_" + op.name),
            SchematicAtom("phi1_monotone_" + op.name),
            SchematicAtom("pi2_soundness"),
        ]
    )

    def build_one():
        return phi1

    def step_conjuncts(beta, stages):
        parts = []
        for delta, value in stages.items():
            if ordinals.compare(delta, beta) is ordinals.Order.LT:
                parts.append(
                    Imp(_true_pi1(op, delta, value), ConIter(delta, value))
                )
        return parts

    def build_succ(beta, prev, stages):
        return And(phi1, conj(step_conjuncts(beta, stages)))

    def build_limit(beta, stages):
        return And(phi1, conj(step_conjuncts(beta, stages)))

    return _staged_sequence(
        alpha, build_one, build_succ, build_limit, limit_budget, stage_cap
    )


# --- successor step for 1-consistency --------------------------------------------


def onecon_successor_check(s: Sentence, k: int, *, cap: int = 5, **limits) -> ClaimReport:
    """Check the successor derivation under its substitution-instance hypothesis."""
    if not 0 <= k <= cap:
        raise ValueError(f"iteration count must be between 0 and {cap}")
    con_k = ConIter(ordinals.from_int(k), s)
    hyp = Imp(con_k, Con(And(s, con_k)))
    claim = Imp(And(hyp, con_k), ConIter(ordinals.from_int(k + 1), s))
    return ClaimReport(
        claims=(_checked("successor-step", claim, **limits),),
        hypotheses_used=(hyp,),
    )
