"""Command-line client for the workbench service.

Every subcommand builds a JSON request, posts it to the service, prints the
returned text verbatim, and exits with the returned code.  The service runs
in process by default; --server points the same commands at a remote
instance, and `serve` starts one.

Exit codes: 0 definite result, 1 input or usage problem, 2 Unknown verdict,
3 resource budget or cap exceeded.
"""

from __future__ import annotations

import sys

import click

from .oracle import DEFAULT_BUDGET, DEFAULT_MODEL_CAP


def _post(ctx: click.Context, path: str, payload: dict):
    server = ctx.obj
    try:
        if server is None:
            import asyncio

            import httpx

            from .service import app

            async def call():
                transport = httpx.ASGITransport(app=app)
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://service"
                ) as client:
                    return await client.post(path, json=payload)

            response = asyncio.run(call())
        else:
            import httpx

            response = httpx.post(
                server.rstrip("/") + path, json=payload, timeout=600.0
            )
        response.raise_for_status()
        body = response.json()
    except Exception as e:  # transport trouble, not a workbench verdict
        click.echo(f"ERROR: {e}")
        sys.exit(1)
    click.echo(body["output"])
    sys.exit(body["exit_code"])


def _oracle_options(f):
    f = click.option(
        "--model-cap",
        type=int,
        default=DEFAULT_MODEL_CAP,
        show_default=True,
        help="Largest countermodel that will be reported.",
    )(f)
    f = click.option(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        show_default=True,
        help="Tableau expansion budget per decision.",
    )(f)
    return f


@click.group(name="itercon")
@click.option(
    "--server",
    metavar="URL",
    default=None,
    help="Base URL of a running service; default runs in process.",
)
@click.pass_context
def cli(ctx, server):
    """Iterated-consistency workbench: provability oracle, normal forms,
    ordinal notations, proof constructions, and the staged enumerator."""
    ctx.obj = server


@cli.command()
@click.argument("sentence")
@_oracle_options
@click.pass_context
def decide(ctx, sentence, budget, model_cap):
    """Decide SENTENCE; print VALID, INVALID with countermodel, or UNKNOWN."""
    _post(
        ctx,
        "/v1/decide",
        {"sentence": sentence, "budget": budget, "model_cap": model_cap},
    )


@cli.command()
@click.argument("left")
@click.argument("right")
@_oracle_options
@click.pass_context
def proves(ctx, left, right, budget, model_cap):
    """Decide whether LEFT provably implies RIGHT."""
    _post(
        ctx,
        "/v1/proves",
        {"left": left, "right": right, "budget": budget,
         "model_cap": model_cap},
    )


@cli.command()
@click.argument("left")
@click.argument("right")
@_oracle_options
@click.pass_context
def strict(ctx, left, right, budget, model_cap):
    """Decide whether LEFT implies RIGHT but not conversely."""
    _post(
        ctx,
        "/v1/strict",
        {"left": left, "right": right, "budget": budget,
         "model_cap": model_cap},
    )


@cli.command()
@click.argument("sentence")
@click.pass_context
def nf(ctx, sentence):
    """Canonical form of a letterless SENTENCE over the chain Con[k](T)."""
    _post(ctx, "/v1/nf", {"sentence": sentence})


@cli.command()
@click.argument("sentence")
@click.pass_context
def truth(ctx, sentence):
    """Standard-model truth of a letterless SENTENCE: TRUE or FALSE."""
    _post(ctx, "/v1/truth", {"sentence": sentence})


@cli.group()
def ord():
    """Ordinal notation operations."""


@ord.command()
@click.argument("left")
@click.argument("right")
@click.pass_context
def cmp(ctx, left, right):
    """Compare two notations; prints LT, EQ, or GT."""
    _post(ctx, "/v1/ord/cmp", {"left": left, "right": right})


@ord.command()
@click.argument("ordinal")
@click.pass_context
def classify(ctx, ordinal):
    """Classify a notation as ZERO, SUCCESSOR, or LIMIT."""
    _post(ctx, "/v1/ord/classify", {"ordinal": ordinal})


@ord.command()
@click.argument("ordinal")
@click.pass_context
def pred(ctx, ordinal):
    """Predecessor of a successor notation."""
    _post(ctx, "/v1/ord/pred", {"ordinal": ordinal})


@ord.command()
@click.argument("ordinal")
@click.argument("index", type=int)
@click.pass_context
def fund(ctx, ordinal, index):
    """INDEX-th fundamental-sequence step below a limit notation."""
    _post(ctx, "/v1/ord/fund", {"ordinal": ordinal, "index": index})


@cli.group()
def construct():
    """Executable proof constructions."""


@construct.command()
@click.argument("sentence")
@_oracle_options
@click.pass_context
def inversion(ctx, sentence, budget, model_cap):
    """Witness psi with psi & Con(psi) equivalent to SENTENCE."""
    _post(
        ctx,
        "/v1/construct/inversion",
        {"sentence": sentence, "budget": budget, "model_cap": model_cap},
    )


@construct.command()
@click.argument("sentence")
@click.argument("operator")
@_oracle_options
@click.pass_context
def bbb(ctx, sentence, operator, budget, model_cap):
    """Fixed-point theta for OPERATOR seeded at SENTENCE, with checks."""
    _post(
        ctx,
        "/v1/construct/bbb",
        {"sentence": sentence, "operator": operator, "budget": budget,
         "model_cap": model_cap},
    )


@construct.command()
@click.argument("sentence")
@click.argument("operator")
@click.option("--n", type=int, required=True, help="Tower height.")
@_oracle_options
@click.pass_context
def ttt(ctx, sentence, operator, n, budget, model_cap):
    """Reflection tower of height --n over SENTENCE, with checks."""
    _post(
        ctx,
        "/v1/construct/ttt",
        {"sentence": sentence, "operator": operator, "n": n,
         "budget": budget, "model_cap": model_cap},
    )


def _sequence_command(ctx, path, ordinal, operator, limit_budget, stages):
    _post(
        ctx,
        path,
        {"ordinal": ordinal, "operator": operator,
         "limit_budget": limit_budget, "stage_cap": stages},
    )


@construct.command()
@click.argument("ordinal")
@click.argument("operator")
@click.option(
    "--limit-budget", type=int, default=2, show_default=True,
    help="Fundamental-sequence samples taken below each limit stage.",
)
@click.option(
    "--stages", type=int, default=64, show_default=True,
    help="Cap on the number of distinct stages built.",
)
@click.pass_context
def theta(ctx, ordinal, operator, limit_budget, stages):
    """Schematic theta stages along the path up to ORDINAL."""
    _sequence_command(
        ctx, "/v1/construct/theta", ordinal, operator, limit_budget, stages
    )


@construct.command()
@click.argument("ordinal")
@click.argument("operator")
@click.option(
    "--limit-budget", type=int, default=2, show_default=True,
    help="Fundamental-sequence samples taken below each limit stage.",
)
@click.option(
    "--stages", type=int, default=64, show_default=True,
    help="Cap on the number of distinct stages built.",
)
@click.pass_context
def mainphi(ctx, ordinal, operator, limit_budget, stages):
    """Guarded-reflection phi stages along the path up to ORDINAL."""
    _sequence_command(
        ctx, "/v1/construct/mainphi", ordinal, operator, limit_budget, stages
    )


@construct.command()
@click.argument("sentence")
@click.option(
    "--bound", type=int, required=True,
    help="Number of auxiliary-theory levels instantiated.",
)
@click.pass_context
def star(ctx, sentence, bound):
    """Star strengthening of SENTENCE via auxiliary consistency levels."""
    _post(ctx, "/v1/construct/star", {"sentence": sentence, "bound": bound})


@construct.command()
@click.argument("sentence")
@click.option(
    "--bound", type=int, required=True,
    help="Number of totality-guarded levels instantiated.",
)
@click.pass_context
def slowcon(ctx, sentence, bound):
    """Slow consistency statement for SENTENCE."""
    _post(
        ctx, "/v1/construct/slowcon", {"sentence": sentence, "bound": bound}
    )


@construct.command(name="onecon-check")
@click.argument("sentence")
@click.option("--n", type=int, required=True, help="Iteration count k.")
@_oracle_options
@click.pass_context
def onecon_check(ctx, sentence, n, budget, model_cap):
    """Successor step of iterated 1-consistency under its hypothesis."""
    _post(
        ctx,
        "/v1/construct/onecon-check",
        {"sentence": sentence, "k": n, "budget": budget,
         "model_cap": model_cap},
    )


@cli.group()
def op():
    """Sentence-operator checks."""


@op.command(name="check-monotone")
@click.argument("operator")
@click.option("--n", type=int, required=True, help="Corpus size.")
@click.option(
    "--seed", type=int, required=True,
    help="Corpus seed; runs are reproducible per seed.",
)
@_oracle_options
@click.pass_context
def check_monotone(ctx, operator, n, seed, budget, model_cap):
    """Probe OPERATOR for monotonicity on a seeded implication corpus."""
    _post(
        ctx,
        "/v1/op/check-monotone",
        {"operator": operator, "count": n, "seed": seed, "budget": budget,
         "model_cap": model_cap},
    )


@cli.command()
@click.option(
    "--stages", type=int, default=0, show_default=True,
    help="Number of stages to run after stage 0.",
)
@click.option(
    "--closure-depth", type=int, default=0, show_default=True,
    help="Rounds of bounded provable-equivalence closure per stage.",
)
@click.option(
    "--verify/--no-verify", default=False,
    help="Check pairwise incompatibility per stage and unbounded truth.",
)
@click.option(
    "--size-bound", type=int, default=None,
    help="Also search for a gap witness up to this sentence size.",
)
@_oracle_options
@click.pass_context
def enum(ctx, stages, closure_depth, verify, size_bound, budget, model_cap):
    """Run the staged enumeration and print each stage dump."""
    payload = {
        "stages": stages,
        "closure_depth": closure_depth,
        "verify": verify,
        "budget": budget,
        "model_cap": model_cap,
    }
    if size_bound is not None:
        payload["size_bound"] = size_bound
    _post(ctx, "/v1/enum", payload)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Start the workbench service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.UsageError as e:
        click.echo(f"ERROR: {e.format_message()}")
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
