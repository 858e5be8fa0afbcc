"""
Acceptance suite run by `cayley selftest`.

Every check compares an algorithm against closure membership, an independent oracle, or a
size bound, over a fixed corpus plus seeded random instances.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import numpy as np
from rich.table import Table

from cayley_cli.algebra.classify import classify, is_commutative, is_group
from cayley_cli.algebra.closure import closure, derivation_circuit
from cayley_cli.algebra.semigroup import Semigroup, direct_product
from cayley_cli.algebra.zoo import (
    associative_tables,
    commutative_tables,
    count_associative_tables,
    cyclic_generating_sets,
    cyclic_group,
    multiplicative_mod,
    named_groups,
    null_semigroup,
    random_semigroup,
    semilattice_chain,
    small_corpus,
    t_min,
)
from cayley_cli.circuits.boolean import (
    compile_to_boolean,
    decode_output,
    encode_input,
    evaluate_netlist,
)
from cayley_cli.circuits.cayley import (
    evaluate,
    iter_circuits,
    ordering_width,
    power_circuit,
    power_circuit_size,
)
from cayley_cli.config import Config
from cayley_cli.exception import NothingToFactor, TargetNotGenerated, WitnessTooLarge
from cayley_cli.join import build_join_witness, verify_quotient
from cayley_cli.membership.commutative import (
    commutative_circuit,
    power_basis_decomposition,
    power_basis_membership,
)
from cayley_cli.membership.exhaustive import evaluation_count, exhaustive_membership
from cayley_cli.membership.slp import evaluate_slp, slp_reachability, slp_to_circuit
from cayley_cli.membership.squaring import (
    default_size_bound,
    dp_step,
    final_check,
    squaring_levels,
)
from cayley_cli.reductions import (
    ReductionKind,
    nilpotent_semigroup,
    random_digraph,
    reachable,
    reduce_stconn,
    zero_simple_semigroup,
)
from cayley_cli.utils.logging import logger

# pinned by screening all n ** (n * n) tables, and all symmetric ones
ASSOCIATIVE_TABLE_COUNTS = {1: 1, 2: 8, 3: 113}
COMMUTATIVE_TABLE_COUNTS = {1: 1, 2: 6, 3: 63, 4: 1140}
REDUCTION_KINDS: tuple[ReductionKind, ...] = ("zero-simple", "nilpotent")


@dataclass(slots=True)
class CheckResult:
    name: str
    cases: int = 0
    skipped: int = 0
    failure: str | None = None
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure is None

    def expect(self, condition: bool, detail: Callable[[], str]) -> None:
        """Count a case; keep the first failure."""
        self.cases += 1
        if not condition and self.failure is None:
            self.failure = detail()


@dataclass(frozen=True, slots=True)
class _Scope:
    seed: int
    random_semigroups: int
    max_random_order: int
    graphs_per_size: int
    max_graph_size: int
    max_power: int
    max_power_size: int
    max_cyclic: int
    max_boolean_order: int
    max_exhaustive_size: int
    max_exhaustive_evaluations: int
    join_max_q: int
    join_max_group: int


def _scope(config: Config, quick: bool) -> _Scope:
    test = config.selftest
    return _Scope(
        seed=test.seed,
        random_semigroups=min(test.random_semigroups, 20) if quick else test.random_semigroups,
        max_random_order=test.max_random_order,
        graphs_per_size=min(test.graphs_per_size, 5) if quick else test.graphs_per_size,
        max_graph_size=5 if quick else 8,
        max_power=64 if quick else 1024,
        max_power_size=10_000 if quick else 1_000_000,
        max_cyclic=16 if quick else 64,
        max_boolean_order=2 if quick else 3,
        max_exhaustive_size=config.exhaustive.max_size,
        max_exhaustive_evaluations=config.exhaustive.max_evaluations,
        join_max_q=config.join.max_q,
        join_max_group=config.join.max_group,
    )


def _generator_sets(s: Semigroup, rng: random.Random, extra: int = 3) -> list[frozenset[int]]:
    """All nonempty subsets for order at most 3; otherwise singletons and a few random sets."""
    elements = list(s.elements)
    if s.order <= 3:
        return [
            frozenset(subset)
            for k in range(1, s.order + 1)
            for subset in itertools.combinations(elements, k)
        ]
    sets = [frozenset({x}) for x in elements]
    for _ in range(extra):
        sets.append(frozenset(rng.sample(elements, rng.randint(2, min(3, s.order)))))
    return sets


def _squaring_sets(s: Semigroup, rng: random.Random) -> list[frozenset[int]]:
    """Generator sets for the squaring DP, whose relation has N ** 4 entries."""
    sets = _generator_sets(s, rng)
    return sets if s.order <= 8 else rng.sample(sets, 4)


def _commutative_corpus(quick: bool) -> dict[str, Semigroup]:
    """Small commutative examples, Z_n up to 32 and every commutative table up to order 4."""
    corpus = {name: s for name, s in small_corpus().items() if is_commutative(s)}
    for n in range(2, 13 if quick else 33):
        corpus[f"Z{n}"] = cyclic_group(n)
    for n in range(1, 4 if quick else 5):
        for i, s in enumerate(commutative_tables(n)):
            corpus[f"table{n}.{i}"] = s
    if not quick:
        corpus["Zx12"] = multiplicative_mod(12)
        corpus["Zx30"] = multiplicative_mod(30)
        corpus["Z4xchain4"] = direct_product(cyclic_group(4), semilattice_chain(4))
        corpus["Z2xZ3xTmin4"] = direct_product(
            direct_product(cyclic_group(2), cyclic_group(3)), t_min(4)
        )
    return corpus


def check_associativity_screen(scope: _Scope) -> CheckResult:
    result = CheckResult("associativity screen")
    for n, expected in ASSOCIATIVE_TABLE_COUNTS.items():
        count = count_associative_tables(n)
        result.expect(count == expected, lambda: f"{count} tables on {n} elements")  # noqa: B023
    for n, expected in COMMUTATIVE_TABLE_COUNTS.items():
        count = sum(1 for _ in commutative_tables(n))
        result.expect(
            count == expected, lambda: f"{count} commutative tables on {n} elements"  # noqa: B023
        )
    return result


def _oracle_instances(scope: _Scope) -> Iterable[tuple[Semigroup, frozenset[int]]]:
    rng = random.Random(scope.seed)
    for n in (1, 2, 3):
        for s in associative_tables(n):
            for xs in _generator_sets(s, rng):
                yield s, xs
    for _ in range(scope.random_semigroups):
        s = random_semigroup(rng, scope.max_random_order)
        for xs in _generator_sets(s, rng):
            yield s, xs


def check_oracle_agreement(scope: _Scope) -> CheckResult:
    """Every applicable algorithm agrees with closure membership on every target."""
    result = CheckResult("oracle agreement")
    for s, xs in _oracle_instances(scope):
        members, derivations = closure(s, xs)
        commutative, group = is_commutative(s), is_group(s)
        levels = squaring_levels(s, xs, 2, default_size_bound(s.order)) if commutative else None
        for t in s.elements:
            expected = t in members

            def where(algorithm: str) -> str:
                return f"{algorithm} on {s!r}, X={sorted(xs)}, t={t}"  # noqa: B023

            if commutative:
                result.expect(
                    power_basis_membership(s, xs, t) == expected, lambda: where("power-basis")
                )
            if levels is not None:
                result.expect(
                    final_check(levels[-1], min(xs), t) == expected, lambda: where("squaring")
                )
            if group:
                try:
                    slp_reachability(s, xs, t)
                    found = True
                except TargetNotGenerated:
                    found = False
                result.expect(found == expected, lambda: where("slp"))
            if expected:
                size = derivation_circuit(derivations, t)[0].size
                if (
                    size > scope.max_exhaustive_size
                    or evaluation_count(size, len(xs)) > scope.max_exhaustive_evaluations
                ):
                    result.skipped += 1
                    continue
                found, _ = exhaustive_membership(s, xs, t, size)
                result.expect(found, lambda: where("exhaustive"))
    return result


def check_powering(scope: _Scope) -> CheckResult:
    """Powering circuits stay within 2 ceil(log2 e) gates and compute x ** e."""
    result = CheckResult("powering bound")
    for e in range(2, scope.max_power_size + 1):
        size = power_circuit_size(e)
        result.expect(size <= 2 * (e - 1).bit_length(), lambda: f"size {size} at e={e}")  # noqa: B023

    circuits = [power_circuit(k) for k in range(1, scope.max_power + 1)]
    for k, circuit in enumerate(circuits, start=1):
        result.expect(
            circuit.size == power_circuit_size(k), lambda: f"built size differs at e={k}"  # noqa: B023
        )
    for name, s in small_corpus().items():
        for x in s.elements:
            value = x
            for k, circuit in enumerate(circuits, start=1):
                got = evaluate(circuit, s, [x])
                result.expect(got == value, lambda: f"{name}: x={x}, e={k}")  # noqa: B023
                value = s.mul(value, x)
    return result


def check_commutative(scope: _Scope, quick: bool) -> CheckResult:
    """
    Power-basis decompositions and their circuits stay within their bounds, and power-basis
    membership agrees with closure.
    """
    result = CheckResult("commutative compilation")
    rng = random.Random(scope.seed)
    for name, s in _commutative_corpus(quick).items():
        n = s.order
        max_factors = math.ceil(math.log2(n + 1))
        size_bound = 5 * (math.log2(n) + 1) ** 2
        for xs in _generator_sets(s, rng):
            members, _ = closure(s, xs)
            for t in s.elements:
                result.expect(
                    power_basis_membership(s, xs, t) == (t in members),
                    lambda: f"power-basis on {name}, X={sorted(xs)}, t={t}",  # noqa: B023
                )
            for y in sorted(members):

                def where() -> str:
                    return f"{name}, X={sorted(xs)}, y={y}"  # noqa: B023

                decomposition = power_basis_decomposition(s, xs, y)
                result.expect(len(decomposition) <= max_factors, where)
                result.expect(all(1 <= i <= n for _, i in decomposition.factors), where)
                result.expect(decomposition.evaluate(s) == y, where)
                circuit, assignment = commutative_circuit(s, xs, y)
                result.expect(circuit.size <= size_bound, where)
                result.expect(ordering_width(circuit) <= 2, where)
                result.expect(evaluate(circuit, s, assignment) == y, where)
    return result


def _group_corpus(scope: _Scope) -> list[tuple[str, Semigroup, list[frozenset[int]]]]:
    groups = [
        (f"Z{n}", cyclic_group(n), cyclic_generating_sets(n))
        for n in range(2, scope.max_cyclic + 1)
    ]
    groups.extend((name, g, sets) for name, (g, sets) in named_groups().items())
    return groups


def check_group_pipeline(scope: _Scope) -> CheckResult:
    """Cube-doubling SLPs and their circuits reach every element within their bounds."""
    result = CheckResult("group pipeline")
    for name, g, generating_sets in _group_corpus(scope):
        circuit_bound = 2 * (math.log2(g.order) + 1) ** 3
        for xs in generating_sets:
            for t in g.elements:

                def where() -> str:
                    return f"{name}, X={sorted(xs)}, t={t}"  # noqa: B023

                slp = slp_reachability(g, xs, t)
                result.expect(slp.within_bound, where)
                result.expect(evaluate_slp(g, slp.program)[-1] == t, where)
                circuit, assignment = slp_to_circuit(slp.program, g.order)
                result.expect(circuit.size <= circuit_bound, where)
                result.expect(evaluate(circuit, g, assignment) == t, where)
    return result


def check_boolean(scope: _Scope) -> CheckResult:
    """Netlists agree with direct evaluation on every table and input."""
    result = CheckResult("boolean simulation")
    for n in range(1, scope.max_boolean_order + 1):
        tables = list(associative_tables(n))
        for circuit in iter_circuits(3):
            m, k = circuit.size, circuit.input_count
            netlist = compile_to_boolean(circuit, n)
            result.expect(
                len(netlist.and_gates) == n**m, lambda: f"AND count for N={n}, m={m}"  # noqa: B023
            )
            for s in tables:
                for inputs in itertools.product(range(n), repeat=k):
                    bits = encode_input(s.rows, inputs)
                    got = decode_output(evaluate_netlist(netlist, bits))
                    result.expect(
                        got == evaluate(circuit, s, inputs),
                        lambda: f"{circuit} on {s!r} with {inputs}",  # noqa: B023
                    )
                    result.expect(
                        netlist.size <= len(bits) ** m,
                        lambda: f"size {netlist.size} for {len(bits)} bits, m={m}",  # noqa: B023
                    )
    return result


def check_reductions(scope: _Scope) -> CheckResult:
    """Reduced instances answer exactly the reachability queries of their graphs."""
    result = CheckResult("reductions")
    rng = random.Random(scope.seed)
    for n in range(2, scope.max_graph_size + 1):
        zero_simple, nilpotent = zero_simple_semigroup(n), nilpotent_semigroup(n)
        result.expect(zero_simple.order == n * n + 1, lambda: f"zero-simple order, n={n}")  # noqa: B023
        result.expect(
            nilpotent.order == n * n * (n - 1) + 1, lambda: f"nilpotent order, n={n}"  # noqa: B023
        )
        result.expect(classify(zero_simple).zero_simple, lambda: f"zero-simple class, n={n}")  # noqa: B023
        result.expect(classify(nilpotent).nilpotent, lambda: f"nilpotent class, n={n}")  # noqa: B023
        for _ in range(scope.graphs_per_size):
            g = random_digraph(rng, n)
            for kind in REDUCTION_KINDS:
                members: frozenset[int] | None = None
                for source, sink in itertools.product(range(n), repeat=2):
                    instance = reduce_stconn(kind, g, source, sink)
                    if members is None:
                        members, _ = closure(instance.semigroup, instance.generators)
                    result.expect(
                        (instance.target in members) == reachable(g, source, sink),
                        lambda: f"{kind}: {g}, s={source}, t={sink}",  # noqa: B023
                    )
    return result


def check_squaring(scope: _Scope, quick: bool) -> CheckResult:
    """
    Level count, reflexivity, monotonicity, fixpoint stability, x-independence and agreement
    with closure.
    """
    result = CheckResult("squaring structure")
    rng = random.Random(scope.seed)
    for name, s in _commutative_corpus(quick).items():
        bound = default_size_bound(s.order)
        top = (bound - 1).bit_length()
        for xs in _squaring_sets(s, rng):

            def where(what: str) -> str:
                return f"{what}: {name}, X={sorted(xs)}"  # noqa: B023

            members, _ = closure(s, xs)
            levels = squaring_levels(s, xs, 2, bound)
            result.expect(len(levels) <= math.ceil(math.log2(bound)) + 1, lambda: where("levels"))
            result.expect(
                bool(np.diagonal(levels[0].relation).all()), lambda: where("reflexivity")
            )
            for lower, upper in itertools.pairwise(levels):
                result.expect(
                    bool((upper.relation >= lower.relation).all()), lambda: where("monotonicity")
                )
            if levels[-1].level < top:
                following = dp_step(levels[-1])
                result.expect(
                    bool(np.array_equal(following.relation, levels[-1].relation)),
                    lambda: where("fixpoint"),
                )
            for t in s.elements:
                answers = {final_check(levels[-1], x, t) for x in xs}
                result.expect(len(answers) == 1, lambda: where(f"x-independence at t={t}"))  # noqa: B023
                result.expect(
                    answers == {t in members}, lambda: where(f"closure agreement at t={t}")  # noqa: B023
                )
    return result


def _nilpotent_corpus() -> dict[str, Semigroup]:
    corpus: dict[str, Semigroup] = {}
    for n in (2, 3, 4):
        corpus[f"N{n}"] = null_semigroup(n)
        corpus[f"Tmin{n}"] = t_min(n)
    for n in (2, 3):
        for i, s in enumerate(associative_tables(n)):
            if classify(s).nilpotent:
                corpus[f"table{n}.{i}"] = s
    return corpus


def check_join(scope: _Scope) -> CheckResult:
    """Join witnesses of small nilpotent semigroups pass quotient verification."""
    result = CheckResult("join witness")
    for name, s in _nilpotent_corpus().items():
        try:
            witness = build_join_witness(s, max_q=scope.join_max_q, max_group=scope.join_max_group)
        except (WitnessTooLarge, NothingToFactor) as e:
            result.skipped += 1
            result.notes.append(f"{name}: {e}")
            continue
        verdict = verify_quotient(witness, s)
        result.expect(bool(verdict), lambda: f"{name}: {verdict.reason} {verdict.witness}")  # noqa: B023
    return result


def run_selftest(config: Config, *, quick: bool = False) -> list[CheckResult]:
    scope = _scope(config, quick)
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_associativity_screen(scope),
        lambda: check_oracle_agreement(scope),
        lambda: check_powering(scope),
        lambda: check_commutative(scope, quick),
        lambda: check_group_pipeline(scope),
        lambda: check_boolean(scope),
        lambda: check_reductions(scope),
        lambda: check_squaring(scope, quick),
        lambda: check_join(scope),
    ]
    results: list[CheckResult] = []
    for check in checks:
        started = time.perf_counter()
        result = check()
        result.seconds = time.perf_counter() - started
        logger.info(
            "{name}: {cases} cases, {status}",
            name=result.name,
            cases=result.cases,
            status="passed" if result.passed else f"failed ({result.failure})",
        )
        results.append(result)
    return results


def render_results(results: list[CheckResult]) -> Table:
    table = Table(title="cayley selftest")
    table.add_column("check")
    table.add_column("cases", justify="right")
    table.add_column("skipped", justify="right")
    table.add_column("seconds", justify="right")
    table.add_column("result")
    for result in results:
        table.add_row(
            result.name,
            str(result.cases),
            str(result.skipped),
            f"{result.seconds:.1f}",
            "[green]pass[/green]" if result.passed else f"[red]FAIL[/red] {result.failure}",
        )
    return table
