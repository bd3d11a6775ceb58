"""Construction gadgets: inversion, the theta trick, towers, staged sequences,
and the one-consistency successor step."""

import pytest

import ref_gl
from itercon.constructions import (
    ClaimEntry,
    ClaimReport,
    bbb_theta,
    inversion_witness,
    main_phi_sequence,
    onecon_successor_check,
    theta_sequence,
    ttt_tower,
)
from itercon.errors import HypothesisNotMet, StageCapExceeded
from itercon.operators import CONJ_CON, IDENTITY, NEGATE, conj_con_k, get_operator
from itercon.ordinals import OMEGA, ZERO, parse_ordinal
from itercon.oracle import decide, proves
from itercon.sentences import (
    And,
    Atom,
    BOT,
    Con,
    Imp,
    Not,
    TOP,
    iff,
    parse_sentence,
    render,
)

p = Atom("p")


def assert_no_entries_verified(report):
    """Every No entry must carry a countermodel that falsifies its claim."""
    for entry in report.claims:
        if entry.verdict == "No" and entry.falsified is not None:
            assert entry.witness is not None
            assert ref_gl.is_transitive_irreflexive(entry.witness)
            assert ref_gl.falsifies(entry.witness, entry.falsified)


class TestClaimReport:
    def test_verdict_aggregation(self):
        yes = ClaimEntry("a", "Yes")
        no = ClaimEntry("b", "No")
        unk = ClaimEntry("c", "Unknown", reason="why")
        assert ClaimReport(claims=(yes,)).verdict == "Yes"
        assert ClaimReport(claims=(yes, unk)).verdict == "Unknown"
        assert ClaimReport(claims=(yes, unk, no)).verdict == "No"
        assert ClaimReport(claims=()).verdict == "Yes"

    def test_render_lines(self):
        report = ClaimReport(
            claims=(ClaimEntry("a", "Yes"), ClaimEntry("c", "Unknown", reason="why")),
            hypotheses_used=(TOP,),
        )
        assert report.render().splitlines() == [
            "CLAIM a VERDICT Yes",
            "CLAIM c VERDICT Unknown",
            "REASON why",
            "HYP T",
        ]


class TestInversionWitness:
    def test_on_consistency_itself(self):
        psi, report = inversion_witness(Con(TOP))
        assert render(psi) == "(Con(T) -> Con(T))"
        assert report.verdict == "Yes"
        assert [c.label for c in report.claims] == ["forward", "backward"]

    def test_witness_is_equivalent_package(self):
        s = And(Con(p), Con(TOP))
        psi, report = inversion_witness(s)
        assert psi == Imp(Con(TOP), s)
        assert report.verdict == "Yes"
        package = And(psi, Con(psi))
        assert decide(iff(s, package)).is_valid

    def test_hypothesis_refuted(self):
        with pytest.raises(HypothesisNotMet) as info:
            inversion_witness(Not(Con(TOP)))
        assert info.value.countermodel is not None
        assert ref_gl.falsifies(
            info.value.countermodel, Imp(Not(Con(TOP)), Con(TOP))
        )

    def test_atom_does_not_qualify(self):
        with pytest.raises(HypothesisNotMet):
            inversion_witness(p)

    def test_ex_falso_qualifies(self):
        psi, report = inversion_witness(BOT)
        assert report.verdict == "Yes"


class TestBbbTheta:
    def test_conj_con_on_top(self):
        theta, report = bbb_theta(TOP, CONJ_CON)
        assert report.verdict == "Yes"
        assert [c.label for c in report.claims] == [
            "strictness",
            "claim-1",
            "claim-2",
            "claim-3",
            "conclusion",
        ]
        assert len(report.hypotheses_used) == 2
        assert theta.size() == 57

    def test_conj_con_k_on_top(self):
        _, report = bbb_theta(TOP, conj_con_k(2))
        assert report.verdict == "Yes"

    def test_identity_is_not_strict(self):
        theta, report = bbb_theta(TOP, IDENTITY)
        by_label = {c.label: c for c in report.claims}
        assert by_label["strictness"].verdict == "No"
        assert (
            by_label["strictness"].trace
            == "mutual provable implication, operator not strict here"
        )
        assert report.verdict == "No"
        for label in ("claim-1", "claim-2", "claim-3", "conclusion"):
            assert by_label[label].verdict == "Yes"
        assert_no_entries_verified(report)

    def test_transfinite_operator_goes_unknown(self):
        _, report = bbb_theta(TOP, get_operator("conj_con[w]"))
        assert report.verdict == "Unknown"

    def test_deterministic(self):
        t1, r1 = bbb_theta(p, CONJ_CON)
        t2, r2 = bbb_theta(p, CONJ_CON)
        assert t1 == t2
        assert r1.render() == r2.render()


class TestTttTower:
    def test_height_two(self):
        seq, report = ttt_tower(TOP, CONJ_CON, 2)
        assert len(seq) == 3
        assert report.verdict == "Yes"
        by_label = {c.label: c for c in report.claims}
        assert by_label["lemma-1"].verdict == "Yes"
        assert by_label["lemma-2"].verdict == "Yes"
        assert by_label["equivalence"].trace == "k=1 at phi_1"
        assert len(report.hypotheses_used) == 4

    def test_height_one(self):
        seq, report = ttt_tower(TOP, CONJ_CON, 1)
        assert len(seq) == 2
        assert report.verdict == "Yes"
        assert seq[1] == And(seq[0], Imp(CONJ_CON(seq[0]), Con(And(seq[0], TOP))))

    def test_height_zero_is_trivial(self):
        seq, report = ttt_tower(TOP, CONJ_CON, 0)
        assert seq == [TOP]
        assert report.claims == ()
        assert report.verdict == "Yes"

    def test_height_validated(self):
        with pytest.raises(ValueError):
            ttt_tower(TOP, CONJ_CON, 5)
        with pytest.raises(ValueError):
            ttt_tower(TOP, CONJ_CON, -1)

    def test_raising_the_cap_hits_the_size_cap(self):
        from itercon.errors import SizeCapExceeded

        with pytest.raises(SizeCapExceeded):
            ttt_tower(TOP, CONJ_CON, 5, cap=5, budget=10)

    def test_tower_members_descend(self):
        seq, _ = ttt_tower(TOP, CONJ_CON, 2)
        for higher, lower in zip(seq[1:], seq):
            assert proves(higher, lower).is_valid


class TestThetaSequence:
    def test_finite_path(self):
        stages = theta_sequence(parse_ordinal("3"), CONJ_CON, 2)
        texts = [(str(b), render(s)) for b, s in stages]
        assert texts == [
            ("1", "@theta1_conj_con"),
            ("2", "(@theta1_conj_con & @theta_step_2_conj_con)"),
            (
                "3",
                "((@theta1_conj_con & @theta_step_2_conj_con) & @theta_step_3_conj_con)",
            ),
        ]

    def test_limit_stage_collects_truth_claims(self):
        stages = theta_sequence(OMEGA, CONJ_CON, 2)
        assert [str(b) for b, _ in stages] == ["1", "2", "w"]
        assert render(stages[-1][1]) == (
            "(@true_pi3_theta_1_conj_con & @true_pi3_theta_2_conj_con)"
        )

    def test_starts_at_one(self):
        with pytest.raises(ValueError):
            theta_sequence(ZERO, CONJ_CON, 2)

    def test_stage_cap(self):
        with pytest.raises(StageCapExceeded):
            theta_sequence(parse_ordinal("w*3"), CONJ_CON, 2, stage_cap=3)


class TestMainPhiSequence:
    def test_base_stage_conjuncts(self):
        stages = main_phi_sequence(parse_ordinal("1"), CONJ_CON, 2)
        assert len(stages) == 1
        base = render(stages[0][1])
        for part in (
            "@phi1_strictness_conj_con",
            "@phi1_noncoincidence_conj_con",
            "@phi1_monotone_conj_con",
            "@pi2_soundness",
        ):
            assert part in base

    def test_successor_guards_reflection(self):
        stages = main_phi_sequence(parse_ordinal("2"), CONJ_CON, 2)
        text = render(stages[-1][1])
        assert "(@true_pi1_phi_1_conj_con -> Con[1](" in text

    def test_limit_path(self):
        stages = main_phi_sequence(parse_ordinal("w+1"), CONJ_CON, 2)
        assert [str(b) for b, _ in stages] == ["1", "2", "w", "w+1"]

    def test_con_valued_operator_skips_truth_atom(self):
        from itercon.operators import CON

        stages = main_phi_sequence(parse_ordinal("2"), CON, 2)
        text = render(stages[-1][1])
        assert "(Con(" in text and "@true_pi1_phi_1_con" not in text


class TestOneconSuccessorCheck:
    def test_top_examples(self):
        for k in range(3):
            report = onecon_successor_check(TOP, k)
            assert report.verdict == "Yes"
            assert report.claims[0].label == "successor-step"
        report = onecon_successor_check(TOP, 2)
        assert render(report.hypotheses_used[0]) == "(Con[2](T) -> Con((T & Con[2](T))))"

    def test_other_bases(self):
        assert onecon_successor_check(Con(TOP), 1).verdict == "Yes"
        assert onecon_successor_check(p, 0).verdict == "Yes"

    def test_bounds(self):
        with pytest.raises(ValueError):
            onecon_successor_check(TOP, 6)
        with pytest.raises(ValueError):
            onecon_successor_check(TOP, -1)
        assert onecon_successor_check(TOP, 6, cap=6, budget=10).verdict in (
            "Yes",
            "Unknown",
        )
