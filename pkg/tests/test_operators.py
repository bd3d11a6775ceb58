"""Sentence operators, the seeded weakening corpus, and the monotonicity
harness."""

import pytest

from itercon.errors import ParseError
from itercon.operators import (
    BUILTIN_OPERATORS,
    CON,
    CONJ_CON,
    IDENTITY,
    NEGATE,
    OperatorSpec,
    apply,
    build_slowcon,
    build_star,
    check_monotone,
    conj_con_k,
    conj_con_ord,
    get_operator,
    ordinal_label,
    weakening_corpus,
    weakening_pair,
)
from itercon.oracle import proves
from itercon.ordinals import OMEGA, from_int, parse_ordinal
from itercon.sentences import And, Atom, Con, ConIter, Not, TOP, render

p = Atom("p")


class TestRegistry:
    def test_builtin_names(self):
        assert set(BUILTIN_OPERATORS) == {"identity", "conj_con", "con", "negate"}
        for name, op in BUILTIN_OPERATORS.items():
            assert get_operator(name) is op

    def test_builtin_transforms(self):
        assert IDENTITY(p) is p
        assert CONJ_CON(p) == And(p, Con(p))
        assert CON(p) == Con(p)
        assert NEGATE(p) == Not(p)
        assert apply(CONJ_CON, p) == CONJ_CON(p)

    def test_numbered_iterates(self):
        op = get_operator("conj_con_3")
        assert op.name == "conj_con_3"
        assert op(p) == And(p, ConIter(from_int(3), p))
        assert conj_con_k(0)(p) == And(p, ConIter(from_int(0), p))
        with pytest.raises(ValueError):
            conj_con_k(-1)

    def test_ordinal_indexed(self):
        op = get_operator("conj_con[w]")
        assert op(p) == And(p, ConIter(OMEGA, p))
        assert op.name == "conj_con_w"
        assert conj_con_ord(OMEGA)(p) == op(p)

    def test_unknown_name(self):
        with pytest.raises(ParseError):
            get_operator("banana")
        with pytest.raises(ParseError):
            get_operator("conj_con[w+w]")

    def test_declared_properties(self):
        assert "monotone" in CONJ_CON.declared_properties
        assert "bounded_by_con_k(1)" in CONJ_CON.declared_properties
        assert "bounded_by_con_k(0)" in IDENTITY.declared_properties
        assert "bounded_by_con_k(2)" in conj_con_k(2).declared_properties
        assert NEGATE.declared_properties == frozenset()

    def test_ordinal_label(self):
        assert ordinal_label(parse_ordinal("w^2*3+1")) == "we2x3_1"
        assert ordinal_label(parse_ordinal("w^(w+1)")) == "wew_1"


class TestInstantiations:
    def test_star_shape(self):
        got = render(build_star(p, 2))
        assert got == (
            "(p & ((ConI[0](p) -> ConI[0]((p & ConI[0](p)))) & "
            "(ConI[1](p) -> ConI[1]((p & ConI[1](p))))))"
        )

    def test_star_implies_input_conjunct(self):
        star = build_star(p, 3)
        assert isinstance(star, And) and star.left == p

    def test_slowcon_shape(self):
        got = render(build_slowcon(p, 2))
        assert got == (
            "((@F_eps0_total_at_0 -> ConI[0](p)) & "
            "(@F_eps0_total_at_1 -> ConI[1](p)))"
        )

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            build_star(p, 0)
        with pytest.raises(ValueError):
            build_slowcon(p, 0)


class TestWeakeningCorpus:
    def test_deterministic(self):
        a = weakening_corpus(10, 11)
        b = weakening_corpus(10, 11)
        assert [(render(s), render(t)) for s, t in a] == [
            (render(s), render(t)) for s, t in b
        ]

    def test_pairs_are_provable(self):
        for s, t in weakening_corpus(30, 11):
            assert proves(s, t).is_valid

    def test_different_seeds_differ(self):
        a = [render(s) for s, _ in weakening_corpus(10, 1)]
        b = [render(s) for s, _ in weakening_corpus(10, 2)]
        assert a != b


class TestCheckMonotone:
    def test_monotone_operators_all_valid(self):
        for op in (IDENTITY, CONJ_CON, CON, conj_con_k(2)):
            report = check_monotone(op, 20, 5)
            assert (report.valid, report.invalid, report.unknown) == (20, 0, 0)
            assert report.operator == op.name and report.seed == 5

    def test_negation_is_not_monotone(self):
        report = check_monotone(NEGATE, 20, 5)
        assert (report.valid, report.invalid, report.unknown) == (8, 12, 0)

    def test_transfinite_index_goes_unknown(self):
        report = check_monotone(get_operator("conj_con[w]"), 10, 5)
        assert (report.valid, report.invalid, report.unknown) == (0, 0, 10)

    def test_render_lists_items_and_witnesses(self):
        report = check_monotone(NEGATE, 20, 5)
        lines = report.render().splitlines()
        assert lines[0] == "ITEM 0 VERDICT Valid"
        assert sum(1 for l in lines if l.startswith("ITEM ")) == 20
        assert any(l.startswith("WITNESS ") for l in lines)
        assert any(l.startswith("WORLDS ") for l in lines)

    def test_invalid_items_carry_checked_witnesses(self):
        import ref_gl
        from itercon.sentences import Imp

        report = check_monotone(NEGATE, 20, 5)
        for item in report.items:
            if item.verdict.is_invalid:
                claim = Imp(Not(item.source), Not(item.target))
                assert ref_gl.falsifies(item.verdict.countermodel, claim)

    def test_limits_are_forwarded(self):
        report = check_monotone(CONJ_CON, 5, 5, budget=3)
        assert report.unknown > 0
        reasons = {i.verdict.reason for i in report.items if i.verdict.is_unknown}
        assert reasons == {"resource: expansion budget exceeded"}
