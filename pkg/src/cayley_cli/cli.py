from __future__ import annotations

import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Literal

import typer

from cayley_cli.constant import VERSION

if TYPE_CHECKING:
    from cayley_cli.app import RunReport
    from cayley_cli.config import Config

cli = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    context_settings={"help_option_names": ["-h", "--help"]},
    help="Membership, circuits and reductions over finite semigroups given by Cayley tables.",
)

Algorithm = Literal["bfs", "power-basis", "slp", "squaring", "exhaustive"]
ReductionKind = Literal["zero-simple", "nilpotent"]

InputFile = Annotated[
    Path,
    typer.Argument(exists=True, file_okay=True, dir_okay=False, readable=True),
]


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"cayley, version {VERSION}")
        raise typer.Exit()


@contextmanager
def _cayley_errors() -> Iterator[None]:
    """Report library errors and failed file reads or writes on stderr, and exit with 2."""
    from cayley_cli.exception import CayleyError

    try:
        yield
    except (CayleyError, OSError) as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=2) from e


def _finish(report: RunReport) -> None:
    typer.echo(report.render(), nl=False)
    raise typer.Exit(code=report.exit_code)


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


@cli.callback()
def cayley(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            "-V",
            help="Show version and exit.",
            callback=_version_callback,
            is_eager=True,
        ),
    ] = False,
    config_file: Annotated[
        Path | None,
        typer.Option(
            "--config",
            exists=True,
            file_okay=True,
            dir_okay=False,
            readable=True,
            help="JSON or YAML configuration file. Default: built-in defaults.",
        ),
    ] = None,
    debug: Annotated[
        bool,
        typer.Option(
            "--debug",
            help="Log debug information. Default: no.",
        ),
    ] = False,
    log_file: Annotated[
        Path | None,
        typer.Option(
            "--log-file",
            dir_okay=False,
            help="Also write logs to this file. Default: none.",
        ),
    ] = None,
):
    """Membership, circuits and reductions over finite semigroups given by Cayley tables."""
    del version  # handled in the callback

    from cayley_cli.app import enable_logging
    from cayley_cli.config import load_config

    with _cayley_errors():
        enable_logging(debug, log_file)
        ctx.obj = load_config(config_file)


@cli.command()
def check(
    ctx: typer.Context,
    instance_file: InputFile,
    algorithm: Annotated[
        Algorithm,
        typer.Option(
            "--algo",
            "-a",
            help="Decision algorithm. Default: bfs.",
        ),
    ] = "bfs",
    witness_file: Annotated[
        Path | None,
        typer.Option(
            "--witness",
            dir_okay=False,
            help="Write a witness circuit for members to this file. Default: none.",
        ),
    ] = None,
    width: Annotated[
        int | None,
        typer.Option(
            "--width",
            min=1,
            max=3,
            help="Squaring DP width. Default: from config (2).",
        ),
    ] = None,
    size_bound: Annotated[
        int | None,
        typer.Option(
            "--size-bound",
            min=1,
            help="Squaring DP circuit size bound. Default: ceil(5 (log2 N + 1)^2).",
        ),
    ] = None,
    max_size: Annotated[
        int | None,
        typer.Option(
            "--max-size",
            min=1,
            help="Largest circuit size for exhaustive search. Default: from config (4).",
        ),
    ] = None,
):
    """
    Decide whether the target of an instance file is generated by X.

    Exit code 0 for members, 1 for non-members.
    """
    from cayley_cli.algebra.semigroup import parse_instance
    from cayley_cli.app import check as run_check

    config: Config = ctx.obj
    if width is not None:
        config.squaring.width = width
    if size_bound is not None:
        config.squaring.size_bound = size_bound
    if max_size is not None:
        config.exhaustive.max_size = max_size

    with _cayley_errors():
        instance = parse_instance(_read(instance_file))
        report = run_check(instance, algorithm, config, witness_file=witness_file)
    _finish(report)


@cli.command()
def classify(table_file: InputFile):
    """Print the structural properties of a semigroup."""
    from rich.console import Console
    from rich.table import Table

    from cayley_cli.algebra.classify import classify as classify_semigroup
    from cayley_cli.algebra.semigroup import parse_semigroup

    with _cayley_errors():
        s = parse_semigroup(_read(table_file))
        classification = classify_semigroup(s)

    table = Table(title=f"Semigroup of order {s.order}")
    table.add_column("property")
    table.add_column("value")
    for name, value in classification.as_rows():
        table.add_row(name, value)
    Console().print(table)


@cli.command()
def reduce(
    kind: Annotated[ReductionKind, typer.Argument(help="Target semigroup family.")],
    graph_file: InputFile,
    source: Annotated[int, typer.Argument(help="Source vertex s.")],
    sink: Annotated[int, typer.Argument(help="Target vertex t.")],
    output: Annotated[Path, typer.Argument(dir_okay=False, help="Instance file to write.")],
):
    """
    Write the membership instance for s-t reachability in a directed graph.

    A sidecar `<output>.labels` maps every element index to its pair `(v,w)` (zero-simple) or
    triple `(v,i,w)` (nilpotent), one `index -> label` line per element, the zero last.
    """
    from cayley_cli.algebra.semigroup import format_instance
    from cayley_cli.app import RunReport
    from cayley_cli.reductions import element_labels, parse_graph, reachable, reduce_stconn

    with _cayley_errors():
        g = parse_graph(_read(graph_file))
        instance = reduce_stconn(kind, g, source, sink)
        labels = output.with_name(output.name + ".labels")
        output.write_text(format_instance(instance), encoding="utf-8")
        labels.write_text(element_labels(kind, g.vertex_count), encoding="utf-8")
    _finish(
        RunReport(
            verdict="done",
            algorithm=kind,
            measures={
                "order": instance.semigroup.order,
                "generators": len(instance.generators),
                "reachable": "yes" if reachable(g, source, sink) else "no",
            },
            artifacts=[output, labels],
        )
    )


@cli.command("compile-slp")
def compile_slp(
    table_file: InputFile,
    slp_file: Annotated[Path, typer.Argument(dir_okay=False, help="SLP file to write.")],
    circuit_file: Annotated[
        Path, typer.Argument(dir_okay=False, help="Circuit file to write.")
    ],
    generators: Annotated[
        list[int],
        typer.Option("--generator", "-x", help="Generator; repeat for every element of X."),
    ],
    target: Annotated[int, typer.Option("--target", "-t", help="Target element.")],
):
    """
    Write a short SLP for the target over X in a group, and its Cayley circuit.

    Exit code 1 if the target is not generated.
    """
    from cayley_cli.algebra.semigroup import MembershipInstance, parse_semigroup
    from cayley_cli.app import RunReport
    from cayley_cli.app import compile_slp as run_compile_slp
    from cayley_cli.exception import TargetNotGenerated

    with _cayley_errors():
        g = parse_semigroup(_read(table_file))
        instance = MembershipInstance(g, frozenset(generators), target)
        try:
            report = run_compile_slp(g, instance.generators, target, slp_file, circuit_file)
        except TargetNotGenerated:
            report = RunReport(verdict="non-member", algorithm="slp")
    _finish(report)


@cli.command("power-circuit")
def power_circuit(
    exponent: Annotated[int, typer.Argument(help="Exponent e >= 1.")],
    output: Annotated[Path, typer.Argument(dir_okay=False, help="Circuit file to write.")],
):
    """Write a circuit computing x^e by repeated squaring."""
    from cayley_cli.app import RunReport
    from cayley_cli.circuits.cayley import format_circuit
    from cayley_cli.circuits.cayley import power_circuit as build_power_circuit

    with _cayley_errors():
        circuit = build_power_circuit(exponent)
        output.write_text(format_circuit(circuit), encoding="utf-8")
    measures: dict[str, int | float | str] = {"circuit_size": circuit.size}
    if exponent >= 2:
        measures["size_bound"] = 2 * math.ceil(math.log2(exponent))
    _finish(RunReport(verdict="done", measures=measures, artifacts=[output]))


@cli.command("to-boolean")
def to_boolean(
    ctx: typer.Context,
    circuit_file: InputFile,
    order: Annotated[int, typer.Argument(min=1, help="Order N of the semigroups simulated.")],
    output: Annotated[Path, typer.Argument(dir_okay=False, help="Netlist file to write.")],
    max_and_gates: Annotated[
        int | None,
        typer.Option(
            "--max-and-gates",
            min=1,
            help="Refuse netlists with more AND gates. Default: from config (1000000).",
        ),
    ] = None,
):
    """Compile a Cayley circuit into a depth-2 AND/OR netlist."""
    from cayley_cli.app import RunReport
    from cayley_cli.circuits.boolean import compile_to_boolean, format_netlist
    from cayley_cli.circuits.cayley import parse_circuit

    config: Config = ctx.obj
    budget = max_and_gates if max_and_gates is not None else config.boolean.max_and_gates
    with _cayley_errors():
        circuit = parse_circuit(_read(circuit_file))
        netlist = compile_to_boolean(circuit, order, max_and_gates=budget)
        output.write_text(format_netlist(netlist), encoding="utf-8")
    _finish(
        RunReport(
            verdict="done",
            measures={
                "input_bits": netlist.input_bit_count,
                "and_gates": len(netlist.and_gates),
                "or_gates": len(netlist.or_gates),
            },
            artifacts=[output],
        )
    )


@cli.command("eval-boolean")
def eval_boolean(
    netlist_file: InputFile,
    bits: Annotated[str, typer.Argument(help="Input bits as 0/1 characters; spaces ignored.")],
):
    """Evaluate a netlist on an input bit string and decode the output element."""
    from cayley_cli.app import RunReport
    from cayley_cli.circuits.boolean import decode_output, evaluate_netlist, parse_netlist
    from cayley_cli.exception import MalformedInput

    with _cayley_errors():
        netlist = parse_netlist(_read(netlist_file))
        values = "".join(bits.split())
        if any(c not in "01" for c in values):
            raise MalformedInput(f"input bits must be 0 or 1, got {bits!r}")
        output = evaluate_netlist(netlist, [int(c) for c in values])
    _finish(
        RunReport(
            verdict="done",
            measures={
                "output_bits": "".join(str(b) for b in output),
                "value": decode_output(output),
            },
        )
    )


@cli.command()
def encode(
    table_file: InputFile,
    inputs: Annotated[
        list[int] | None,
        typer.Option("--input", "-x", help="Circuit input element; repeat in input order."),
    ] = None,
):
    """Print the netlist input bits for a Cayley table and circuit inputs, with their layout."""
    from cayley_cli.algebra.semigroup import parse_semigroup
    from cayley_cli.circuits.boolean import encode_input, encoding_width

    values = list(inputs or [])
    with _cayley_errors():
        s = parse_semigroup(_read(table_file))
        bits = encode_input(s.rows, values)
    width = encoding_width(s.order)
    table_bits = s.order * s.order * width
    typer.echo(f"bits: {''.join(str(b) for b in bits)}")
    typer.echo(f"width: {width}")
    typer.echo(f"table: 0..{table_bits - 1} (entry a*b at ({s.order}*a + b) * {width})")
    for position in range(len(values)):
        start = table_bits + position * width
        typer.echo(f"input {position + 1}: {start}..{start + width - 1}")


@cli.command()
def decompose(
    ctx: typer.Context,
    table_file: InputFile,
    max_q: Annotated[
        int | None,
        typer.Option("--max-q", min=1, help="Cap on the word set Q. Default: 10."),
    ] = None,
    max_group: Annotated[
        int | None,
        typer.Option("--max-group", min=1, help="Cap on the group order. Default: 20000."),
    ] = None,
):
    """
    Write a nilpotent semigroup as a quotient of a subdirect product of a group and a
    commutative semigroup, and verify the quotient map.
    """
    from cayley_cli.algebra.semigroup import parse_semigroup
    from cayley_cli.app import decompose as run_decompose

    config: Config = ctx.obj
    if max_q is not None:
        config.join.max_q = max_q
    if max_group is not None:
        config.join.max_group = max_group
    with _cayley_errors():
        s = parse_semigroup(_read(table_file))
        report = run_decompose(s, config)
    _finish(report)


@cli.command()
def selftest(
    ctx: typer.Context,
    seed: Annotated[
        int | None,
        typer.Option("--seed", help="Seed for random instances. Default: from config (0)."),
    ] = None,
    quick: Annotated[
        bool,
        typer.Option("--quick", help="Run on a reduced corpus. Default: no."),
    ] = False,
):
    """Run the acceptance suite; exit code 1 if any check fails."""
    from rich.console import Console

    from cayley_cli.selftest import render_results, run_selftest

    config: Config = ctx.obj
    if seed is not None:
        config.selftest.seed = seed
    with _cayley_errors():
        results = run_selftest(config, quick=quick)
    Console().print(render_results(results))
    raise typer.Exit(code=0 if all(result.passed for result in results) else 1)


if __name__ == "__main__":
    if "cayley_cli.cli" not in sys.modules:
        sys.modules["cayley_cli.cli"] = sys.modules[__name__]

    sys.exit(cli())
