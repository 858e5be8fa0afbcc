from __future__ import annotations

from collections.abc import Iterable

from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.circuits.cayley import CayleyCircuit, Gate, Input, Mul, gate_options
from cayley_cli.exception import BudgetExceeded
from cayley_cli.utils.logging import logger

type Witness = tuple[CayleyCircuit, tuple[int, ...]]
# (assignment, gate values) for every assignment of a circuit prefix
type Rows = list[tuple[tuple[int, ...], tuple[int, ...]]]


def evaluation_count(max_size: int, generator_count: int) -> int:
    """
    Number of (circuit, assignment) pairs with at most `max_size` gates.

    Gate i is either an input, with one choice per generator, or one of `i ** 2` products.
    """
    total, running = 0, 1
    for i in range(max_size):
        running *= generator_count + i * i
        total += running
    return total


def exhaustive_membership(
    s: Semigroup,
    generators: Iterable[int],
    target: int,
    max_size: int,
    *,
    max_evaluations: int | None = None,
) -> tuple[bool, Witness | None]:
    """
    Search every circuit of size at most `max_size` under every assignment of generators.

    Circuits are visited by size and then lexicographically, assignments lexicographically,
    so the returned witness is the first one in that order. Prefixes share their partial
    evaluations.

    Raises:
        BudgetExceeded: If the number of (circuit, assignment) pairs exceeds `max_evaluations`.
    """
    xs = sorted(set(generators))
    if not xs:
        return False, None
    required = evaluation_count(max_size, len(xs))
    if max_evaluations is not None and required > max_evaluations:
        raise BudgetExceeded("circuit evaluations", required, max_evaluations)
    if max_evaluations is not None and 2 * required > max_evaluations:
        logger.warning(
            "Exhaustive search needs {required} evaluations, over half the budget of {budget}",
            required=required,
            budget=max_evaluations,
        )
    logger.debug(
        "Exhaustive search up to size {size} over {count} generators: {required} evaluations",
        size=max_size,
        count=len(xs),
        required=required,
    )

    def extend(gates: list[Gate], rows: Rows, size: int) -> Witness | None:
        i = len(gates)
        if i == size:
            for assignment, values in rows:
                if values[-1] == target:
                    return CayleyCircuit(tuple(gates)), assignment
            return None
        for gate in gate_options(i):
            match gate:
                case Input():
                    extended = [(a + (x,), v + (x,)) for a, v in rows for x in xs]
                case Mul(left, right):
                    extended = [(a, v + (s.mul(v[left], v[right]),)) for a, v in rows]
            if (found := extend([*gates, gate], extended, size)) is not None:
                return found
        return None

    for size in range(1, max_size + 1):
        if (witness := extend([], [((), ())], size)) is not None:
            logger.debug("Found a witness of size {size}", size=size)
            return True, witness
    return False, None
