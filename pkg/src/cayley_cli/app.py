from __future__ import annotations

import math
import sys
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field

from cayley_cli.algebra.classify import is_commutative
from cayley_cli.algebra.closure import derivation_circuit, is_member
from cayley_cli.algebra.semigroup import MembershipInstance, Semigroup
from cayley_cli.circuits.cayley import CayleyCircuit, evaluate, format_circuit, ordering_width
from cayley_cli.config import Config
from cayley_cli.exception import NotCommutative, TargetNotGenerated
from cayley_cli.join import build_join_witness, verify_quotient
from cayley_cli.membership.commutative import (
    commutative_circuit,
    power_basis_decomposition,
    power_basis_membership,
)
from cayley_cli.membership.exhaustive import exhaustive_membership
from cayley_cli.membership.slp import format_slp, slp_reachability, slp_to_circuit
from cayley_cli.membership.squaring import default_size_bound, dp_membership
from cayley_cli.utils.logging import logger

type Algorithm = Literal["bfs", "power-basis", "slp", "squaring", "exhaustive"]
type Measure = int | float | str


def enable_logging(debug: bool = False, log_file: Path | None = None) -> None:
    logger.remove()  # Remove default stderr handler
    logger.enable("cayley_cli")
    logger.add(sys.stderr, level="TRACE" if debug else "WARNING")
    if log_file is not None:
        logger.add(log_file, level="TRACE" if debug else "INFO")


class RunReport(BaseModel):
    """Outcome of one command, printed as `key: value` lines."""

    verdict: Literal["member", "non-member", "pass", "fail", "done"]
    algorithm: str | None = None
    measures: dict[str, Measure] = Field(default_factory=dict)
    """Quantities recomputable from the inputs and the written artifacts"""
    artifacts: list[Path] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict in ("non-member", "fail") else 0

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        if self.algorithm is not None:
            lines.append(f"algorithm: {self.algorithm}")
        for key, value in self.measures.items():
            lines.append(f"{key}: {round(value, 2) if isinstance(value, float) else value}")
        lines.extend(f"artifact: {path}" for path in self.artifacts)
        return "\n".join(lines) + "\n"


def format_witness(circuit: CayleyCircuit, assignment: tuple[int, ...]) -> str:
    """A circuit file whose first line records the input assignment as a comment."""
    return f"# inputs: {' '.join(str(x) for x in assignment)}\n" + format_circuit(circuit)


def _verdict(member: bool) -> Literal["member", "non-member"]:
    return "member" if member else "non-member"


def _require_commutative(s: Semigroup) -> None:
    if not is_commutative(s):
        raise NotCommutative()


def check(
    instance: MembershipInstance,
    algorithm: Algorithm,
    config: Config,
    *,
    witness_file: Path | None = None,
) -> RunReport:
    """
    Decide membership with one algorithm.

    power-basis and squaring refuse non-commutative semigroups and slp refuses non-groups.
    With `witness_file`, a member's witness circuit is written there.

    Raises:
        NotCommutative: For power-basis or squaring on a non-commutative semigroup.
        NotAGroup: For slp on a semigroup that is not a group.
        BudgetExceeded: For exhaustive search beyond the configured budget.
        OSError: If the witness file cannot be written.
    """
    s, xs, t = instance.semigroup, instance.generators, instance.target
    report = RunReport(verdict="non-member", algorithm=algorithm)
    witness: tuple[CayleyCircuit, tuple[int, ...]] | None = None
    match algorithm:
        case "bfs":
            member, derivations = is_member(instance)
            if derivations is not None:
                witness = derivation_circuit(derivations, t)
                report.measures["derivation_size"] = witness[0].size
        case "power-basis":
            member = power_basis_membership(s, xs, t)
            if member:
                decomposition = power_basis_decomposition(s, xs, t)
                witness = commutative_circuit(s, xs, t)
                report.measures["factors"] = len(decomposition)
                report.measures["circuit_size"] = witness[0].size
                report.measures["ordering_width"] = ordering_width(witness[0])
        case "slp":
            try:
                result = slp_reachability(s, xs, t)
            except TargetNotGenerated:
                member = False
            else:
                member = True
                witness = slp_to_circuit(result.program, s.order)
                report.measures["slp_length"] = result.length
                report.measures["slp_bound"] = result.bound
                report.measures["circuit_size"] = witness[0].size
        case "squaring":
            _require_commutative(s)
            width = config.squaring.width
            bound = config.squaring.size_bound or default_size_bound(s.order)
            member = dp_membership(
                s, xs, t, width, bound, relation_warning=config.squaring.relation_warning
            )
            report.measures["width"] = width
            report.measures["size_bound"] = bound
        case "exhaustive":
            max_size = config.exhaustive.max_size
            member, witness = exhaustive_membership(
                s, xs, t, max_size, max_evaluations=config.exhaustive.max_evaluations
            )
            report.measures["max_size"] = max_size
            if witness is not None:
                report.measures["circuit_size"] = witness[0].size

    report.verdict = _verdict(member)
    if witness is not None:
        circuit, assignment = witness
        assert evaluate(circuit, s, assignment) == t
        if witness_file is not None:
            witness_file.write_text(format_witness(circuit, assignment), encoding="utf-8")
            report.artifacts.append(witness_file)
    logger.info("{algorithm}: {verdict}", algorithm=algorithm, verdict=report.verdict)
    return report


def compile_slp(
    g: Semigroup,
    generators: frozenset[int],
    target: int,
    slp_file: Path,
    circuit_file: Path,
) -> RunReport:
    """
    Write a cube-doubling SLP for the target and its compiled circuit.

    Raises:
        NotAGroup: If `g` is not a group.
        TargetNotGenerated: If the target is not generated.
    """
    result = slp_reachability(g, generators, target)
    circuit, assignment = slp_to_circuit(result.program, g.order)
    slp_file.write_text(format_slp(result.program), encoding="utf-8")
    circuit_file.write_text(format_witness(circuit, assignment), encoding="utf-8")
    circuit_bound = 2 * (math.log2(g.order) + 1) ** 3
    if circuit.size > circuit_bound:
        logger.warning(
            "Circuit size {size} exceeds 2 (log2 |G| + 1)^3 = {bound:.2f}",
            size=circuit.size,
            bound=circuit_bound,
        )
    return RunReport(
        verdict="member",
        algorithm="slp",
        measures={
            "slp_length": result.length,
            "slp_bound": result.bound,
            "cube_dimension": result.cube_dimension,
            "circuit_size": circuit.size,
            "circuit_bound": circuit_bound,
        },
        artifacts=[slp_file, circuit_file],
    )


def decompose(s: Semigroup, config: Config) -> RunReport:
    """
    Build and verify the join witness of a nilpotent semigroup.

    Raises:
        NotNilpotent: If `s` is not nilpotent.
        WitnessTooLarge: If the witness exceeds the configured caps.
    """
    witness = build_join_witness(s, max_q=config.join.max_q, max_group=config.join.max_group)
    verdict = verify_quotient(witness, s)
    measures: dict[str, Measure] = {
        "e": witness.degree,
        "q": len(witness.words),
        "group_order": witness.group.order,
        "u": len(witness.elements),
    }
    if not verdict:
        measures["failure"] = f"{verdict.reason} {verdict.witness}"
    return RunReport(verdict="pass" if verdict else "fail", measures=measures)
