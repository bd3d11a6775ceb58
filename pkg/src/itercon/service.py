"""HTTP face of the workbench.

Every operation is a POST endpoint taking a small JSON body and returning the
same envelope: the preformatted text a terminal client prints verbatim, the
exit code that client should use, and the structured pieces of the result.
Operational failures (malformed input text, out-of-fragment verdicts,
exceeded caps) are reported inside the envelope rather than as transport
errors, so remote and in-process clients behave identically byte for byte.

Exit code mapping: 0 for definite results, 1 for input problems, 2 for an
Unknown verdict, 3 when a resource budget or cap was the cause.
"""

from __future__ import annotations

from fastapi import FastAPI
from pydantic import BaseModel

from . import constructions, enumerator, operators, ordinals, sentences
from .errors import (
    HypothesisNotMet,
    IterconError,
    ParseError,
    SizeCapExceeded,
    StageCapExceeded,
)
from .oracle import (
    DEFAULT_BUDGET,
    DEFAULT_MODEL_CAP,
    Verdict,
    decide,
    letterless_nf,
    proves,
    strictly_proves,
    truth_letterless,
)

app = FastAPI(
    title="itercon",
    description="Iterated-consistency workbench over a provability oracle.",
)


class Envelope(BaseModel):
    output: str
    exit_code: int
    data: dict = {}


def _input_error(message: str) -> Envelope:
    return Envelope(output=f"ERROR: {message}", exit_code=1)


def _guarded(build) -> Envelope:
    try:
        return build()
    except HypothesisNotMet as e:
        lines = [f"HYPOTHESIS NOT MET: {e}"]
        if e.countermodel is not None:
            lines.append(e.countermodel.render())
        return Envelope(
            output="\n".join(lines),
            exit_code=0,
            data={"hypothesis_met": False},
        )
    except (SizeCapExceeded, StageCapExceeded) as e:
        return Envelope(output=f"ERROR: {e}", exit_code=3)
    except (ParseError, ValueError, IterconError) as e:
        return _input_error(str(e))


def _verdict_exit(v: Verdict) -> int:
    if not v.is_unknown:
        return 0
    return 3 if v.reason.startswith("resource") else 2


def _verdict_lines(v: Verdict) -> list[str]:
    lines = [f"RESULT: {v.status.upper()}"]
    if v.is_invalid:
        lines.append(v.countermodel.render())
    if v.is_unknown:
        lines.append(f"REASON: {v.reason}")
    return lines


def _verdict_data(v: Verdict) -> dict:
    data = {"status": v.status}
    if v.is_invalid:
        data["countermodel"] = v.countermodel.render()
    if v.is_unknown:
        data["reason"] = v.reason
    return data


def _report_exit(report) -> int:
    if report.verdict != "Unknown":
        return 0
    for claim in report.claims:
        if claim.reason is not None and claim.reason.startswith("resource"):
            return 3
    return 2


class OracleLimits(BaseModel):
    budget: int = DEFAULT_BUDGET
    model_cap: int = DEFAULT_MODEL_CAP

    def kwargs(self) -> dict:
        return {"budget": self.budget, "model_cap": self.model_cap}


class SentenceRequest(OracleLimits):
    sentence: str


class PairRequest(OracleLimits):
    left: str
    right: str


@app.post("/v1/decide", response_model=Envelope)
def decide_endpoint(req: SentenceRequest) -> Envelope:
    def build():
        v = decide(sentences.parse_sentence(req.sentence), **req.kwargs())
        return Envelope(
            output="\n".join(_verdict_lines(v)),
            exit_code=_verdict_exit(v),
            data=_verdict_data(v),
        )

    return _guarded(build)


@app.post("/v1/proves", response_model=Envelope)
def proves_endpoint(req: PairRequest) -> Envelope:
    def build():
        v = proves(
            sentences.parse_sentence(req.left),
            sentences.parse_sentence(req.right),
            **req.kwargs(),
        )
        return Envelope(
            output="\n".join(_verdict_lines(v)),
            exit_code=_verdict_exit(v),
            data=_verdict_data(v),
        )

    return _guarded(build)


@app.post("/v1/strict", response_model=Envelope)
def strict_endpoint(req: PairRequest) -> Envelope:
    def build():
        result = strictly_proves(
            sentences.parse_sentence(req.left),
            sentences.parse_sentence(req.right),
            **req.kwargs(),
        )
        lines = [f"RESULT: {result.answer.upper()}"]
        exit_code = 0
        if result.answer == "Unknown":
            exit_code = 2
            for v in (result.forward, result.backward):
                if v is not None and v.is_unknown:
                    lines.append(f"REASON: {v.reason}")
                    if v.reason.startswith("resource"):
                        exit_code = 3
                    break
        return Envelope(
            output="\n".join(lines),
            exit_code=exit_code,
            data={"answer": result.answer},
        )

    return _guarded(build)


@app.post("/v1/nf", response_model=Envelope)
def nf_endpoint(req: SentenceRequest) -> Envelope:
    def build():
        out = letterless_nf(sentences.parse_sentence(req.sentence))
        text = sentences.render(out)
        return Envelope(output=text, exit_code=0, data={"sentence": text})

    return _guarded(build)


@app.post("/v1/truth", response_model=Envelope)
def truth_endpoint(req: SentenceRequest) -> Envelope:
    def build():
        value = truth_letterless(sentences.parse_sentence(req.sentence))
        text = "TRUE" if value else "FALSE"
        return Envelope(output=text, exit_code=0, data={"truth": value})

    return _guarded(build)


class OrdinalPairRequest(BaseModel):
    left: str
    right: str


class OrdinalRequest(BaseModel):
    ordinal: str


class FundamentalRequest(BaseModel):
    ordinal: str
    index: int


@app.post("/v1/ord/cmp", response_model=Envelope)
def ord_cmp_endpoint(req: OrdinalPairRequest) -> Envelope:
    def build():
        order = ordinals.compare(
            ordinals.parse_ordinal(req.left), ordinals.parse_ordinal(req.right)
        )
        return Envelope(
            output=order.name, exit_code=0, data={"order": order.name}
        )

    return _guarded(build)


@app.post("/v1/ord/classify", response_model=Envelope)
def ord_classify_endpoint(req: OrdinalRequest) -> Envelope:
    def build():
        kind = ordinals.classify(ordinals.parse_ordinal(req.ordinal))
        return Envelope(
            output=kind.name, exit_code=0, data={"kind": kind.name}
        )

    return _guarded(build)


@app.post("/v1/ord/pred", response_model=Envelope)
def ord_pred_endpoint(req: OrdinalRequest) -> Envelope:
    def build():
        out = ordinals.predecessor(ordinals.parse_ordinal(req.ordinal))
        text = ordinals.render(out)
        return Envelope(output=text, exit_code=0, data={"ordinal": text})

    return _guarded(build)


@app.post("/v1/ord/fund", response_model=Envelope)
def ord_fund_endpoint(req: FundamentalRequest) -> Envelope:
    def build():
        out = ordinals.fundamental_step(
            ordinals.parse_ordinal(req.ordinal), req.index
        )
        text = ordinals.render(out)
        return Envelope(
            output=text + "\nCONVENTION: standard",
            exit_code=0,
            data={"ordinal": text},
        )

    return _guarded(build)


class BbbRequest(OracleLimits):
    sentence: str
    operator: str


class TttRequest(OracleLimits):
    sentence: str
    operator: str
    n: int


class SequenceRequest(BaseModel):
    ordinal: str
    operator: str
    limit_budget: int = 2
    stage_cap: int = 64


class BoundRequest(BaseModel):
    sentence: str
    bound: int


class OneConRequest(OracleLimits):
    sentence: str
    k: int


@app.post("/v1/construct/inversion", response_model=Envelope)
def inversion_endpoint(req: SentenceRequest) -> Envelope:
    def build():
        psi, report = constructions.inversion_witness(
            sentences.parse_sentence(req.sentence), **req.kwargs()
        )
        output = f"PSI {sentences.render(psi)}\n{report.render()}"
        return Envelope(
            output=output,
            exit_code=_report_exit(report),
            data={"psi": sentences.render(psi), "verdict": report.verdict},
        )

    return _guarded(build)


@app.post("/v1/construct/bbb", response_model=Envelope)
def bbb_endpoint(req: BbbRequest) -> Envelope:
    def build():
        theta, report = constructions.bbb_theta(
            sentences.parse_sentence(req.sentence),
            operators.get_operator(req.operator),
            **req.kwargs(),
        )
        output = f"THETA {sentences.render(theta)}\n{report.render()}"
        return Envelope(
            output=output,
            exit_code=_report_exit(report),
            data={
                "theta": sentences.render(theta),
                "verdict": report.verdict,
            },
        )

    return _guarded(build)


@app.post("/v1/construct/ttt", response_model=Envelope)
def ttt_endpoint(req: TttRequest) -> Envelope:
    def build():
        seq, report = constructions.ttt_tower(
            sentences.parse_sentence(req.sentence),
            operators.get_operator(req.operator),
            req.n,
            **req.kwargs(),
        )
        lines = [
            f"PHI {i} {sentences.render(s)}"
            for i, s in enumerate(seq, start=1)
        ]
        lines.append(report.render())
        return Envelope(
            output="\n".join(lines),
            exit_code=_report_exit(report),
            data={
                "tower": [sentences.render(s) for s in seq],
                "verdict": report.verdict,
            },
        )

    return _guarded(build)


def _sequence_envelope(stages) -> Envelope:
    lines = [
        f"STAGE {ordinals.render(beta)} {sentences.render(s)}"
        for beta, s in stages
    ]
    return Envelope(
        output="\n".join(lines),
        exit_code=0,
        data={
            "stages": [
                [ordinals.render(beta), sentences.render(s)]
                for beta, s in stages
            ]
        },
    )


@app.post("/v1/construct/theta", response_model=Envelope)
def theta_endpoint(req: SequenceRequest) -> Envelope:
    def build():
        stages = constructions.theta_sequence(
            ordinals.parse_ordinal(req.ordinal),
            operators.get_operator(req.operator),
            req.limit_budget,
            stage_cap=req.stage_cap,
        )
        return _sequence_envelope(stages)

    return _guarded(build)


@app.post("/v1/construct/mainphi", response_model=Envelope)
def mainphi_endpoint(req: SequenceRequest) -> Envelope:
    def build():
        stages = constructions.main_phi_sequence(
            ordinals.parse_ordinal(req.ordinal),
            operators.get_operator(req.operator),
            req.limit_budget,
            stage_cap=req.stage_cap,
        )
        return _sequence_envelope(stages)

    return _guarded(build)


@app.post("/v1/construct/star", response_model=Envelope)
def star_endpoint(req: BoundRequest) -> Envelope:
    def build():
        out = operators.build_star(
            sentences.parse_sentence(req.sentence), req.bound
        )
        text = sentences.render(out)
        return Envelope(output=text, exit_code=0, data={"sentence": text})

    return _guarded(build)


@app.post("/v1/construct/slowcon", response_model=Envelope)
def slowcon_endpoint(req: BoundRequest) -> Envelope:
    def build():
        out = operators.build_slowcon(
            sentences.parse_sentence(req.sentence), req.bound
        )
        text = sentences.render(out)
        return Envelope(output=text, exit_code=0, data={"sentence": text})

    return _guarded(build)


@app.post("/v1/construct/onecon-check", response_model=Envelope)
def onecon_endpoint(req: OneConRequest) -> Envelope:
    def build():
        report = constructions.onecon_successor_check(
            sentences.parse_sentence(req.sentence), req.k, **req.kwargs()
        )
        return Envelope(
            output=report.render(),
            exit_code=_report_exit(report),
            data={"verdict": report.verdict},
        )

    return _guarded(build)


class MonotoneRequest(OracleLimits):
    operator: str
    count: int
    seed: int


@app.post("/v1/op/check-monotone", response_model=Envelope)
def check_monotone_endpoint(req: MonotoneRequest) -> Envelope:
    def build():
        report = operators.check_monotone(
            operators.get_operator(req.operator),
            req.count,
            req.seed,
            **req.kwargs(),
        )
        summary = (
            f"OPERATOR {report.operator} SEED {report.seed} "
            f"VALID {report.valid} INVALID {report.invalid} "
            f"UNKNOWN {report.unknown}"
        )
        body = report.render()
        output = summary if not body else f"{summary}\n{body}"
        return Envelope(
            output=output,
            exit_code=0,
            data={
                "valid": report.valid,
                "invalid": report.invalid,
                "unknown": report.unknown,
            },
        )

    return _guarded(build)


class EnumRequest(OracleLimits):
    stages: int = 0
    closure_depth: int = 0
    stage_cap: int = enumerator.DEFAULT_STAGE_CAP
    closure_universe: int = enumerator.DEFAULT_UNIVERSE
    verify: bool = False
    size_bound: int | None = None


@app.post("/v1/enum", response_model=Envelope)
def enum_endpoint(req: EnumRequest) -> Envelope:
    def build():
        states = enumerator.run(
            req.stages,
            req.closure_depth,
            stage_cap=req.stage_cap,
            closure_universe=req.closure_universe,
        )
        blocks = [enumerator.dump(st) for st in states]
        exit_code = 0
        if req.verify:
            lines = []
            for st in states:
                report = enumerator.verify_incompatibility(st, **req.kwargs())
                lines.append(
                    f"VERIFY INCOMPATIBILITY STAGE {st.stage} {report.verdict}"
                )
                if report.verdict != "Yes":
                    lines.append(report.render())
                    exit_code = max(exit_code, _report_exit(report))
            final = states[-1]
            report = enumerator.verify_unbounded_truth(
                final, final.stage, **req.kwargs()
            )
            lines.append(
                f"VERIFY UNBOUNDED TRUTH HORIZON {final.stage} "
                f"{report.verdict}"
            )
            lines.append(report.render())
            exit_code = max(exit_code, _report_exit(report))
            blocks.append("\n".join(lines))
        if req.size_bound is not None:
            gap = enumerator.search_gap_witness(
                states[-1], req.size_bound, **req.kwargs()
            )
            blocks.append(gap.render())
        return Envelope(
            output="\n\n".join(blocks),
            exit_code=exit_code,
            data={"stages": len(states) - 1},
        )

    return _guarded(build)
