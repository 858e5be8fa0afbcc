from __future__ import annotations

from collections import deque
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

from cayley_cli.algebra.semigroup import MembershipInstance, Semigroup
from cayley_cli.circuits.cayley import INPUT, CayleyCircuit, Gate, Mul
from cayley_cli.exception import TargetNotGenerated, WitnessTooLarge
from cayley_cli.utils.logging import logger


@dataclass(frozen=True, slots=True)
class Generator[T]:
    """The element is one of the generators."""

    element: T


@dataclass(frozen=True, slots=True)
class Product[T]:
    """The element is `left * right` for two previously derived elements."""

    left: T
    right: T


type Derivation[T] = Generator[T] | Product[T]
type Derivations[T] = Mapping[T, Derivation[T]]


def generate[T: Hashable](
    generators: Iterable[T],
    mul: Callable[[T, T], T],
    *,
    limit: int | None = None,
) -> dict[T, Derivation[T]]:
    """
    Worklist closure of `generators` under `mul`.

    Each newly derived element is multiplied on both sides with every element derived so far,
    so every product of two members is computed exactly once from the later of the two.
    The returned dict is in derivation order and records how each member was first obtained.

    Raises:
        WitnessTooLarge: If `limit` is given and the closure grows beyond it.
    """
    derivations: dict[T, Derivation[T]] = {}
    members: list[T] = []
    queue: deque[T] = deque()

    def add(element: T, derivation: Derivation[T]) -> None:
        if element in derivations:
            return
        if limit is not None and len(members) >= limit:
            raise WitnessTooLarge("closure", len(members) + 1, limit)
        derivations[element] = derivation
        members.append(element)
        queue.append(element)

    for x in generators:
        add(x, Generator(x))
    while queue:
        a = queue.popleft()
        for b in members[: len(members)]:
            add(mul(a, b), Product(a, b))
            add(mul(b, a), Product(b, a))
    return derivations


def closure(
    s: Semigroup, generators: Iterable[int]
) -> tuple[frozenset[int], dict[int, Derivation[int]]]:
    """The subsemigroup generated by `generators`, with a derivation for every member."""
    derivations = generate(sorted(set(generators)), s.mul)
    logger.trace(
        "Closure of {count} generators has {size} elements",
        count=len(set(generators)),
        size=len(derivations),
    )
    return frozenset(derivations), derivations


def is_member(instance: MembershipInstance) -> tuple[bool, dict[int, Derivation[int]] | None]:
    """Decide membership by closure; on success also return the derivations."""
    members, derivations = closure(instance.semigroup, instance.generators)
    if instance.target in members:
        return True, derivations
    return False, None


def _postorder[T: Hashable](derivations: Derivations[T], target: T) -> list[T]:
    """Elements of the derivation DAG below `target`, every element after its factors."""
    if target not in derivations:
        raise TargetNotGenerated(target)
    order: list[T] = []
    visited: set[T] = set()
    stack: list[tuple[T, bool]] = [(target, False)]
    while stack:
        element, expanded = stack.pop()
        if expanded:
            order.append(element)
            continue
        if element in visited:
            continue
        visited.add(element)
        stack.append((element, True))
        match derivations[element]:
            case Product(left, right):
                stack.append((right, False))
                stack.append((left, False))
            case Generator():
                pass
    return order


def replay(s: Semigroup, derivations: Derivations[int], target: int) -> int:
    """Recompute `target` by multiplying along its derivation."""
    values: dict[int, int] = {}
    for element in _postorder(derivations, target):
        match derivations[element]:
            case Generator(x):
                values[element] = x
            case Product(left, right):
                values[element] = s.mul(values[left], values[right])
    return values[target]


def derivation_circuit(
    derivations: Derivations[int], target: int
) -> tuple[CayleyCircuit, tuple[int, ...]]:
    """
    Turn the derivation of `target` into a Cayley circuit with one gate per distinct element.

    Returns the circuit and the generators assigned to its input gates, in order.
    """
    gates: list[Gate] = []
    assignment: list[int] = []
    gate_of: dict[int, int] = {}
    for element in _postorder(derivations, target):
        match derivations[element]:
            case Generator(x):
                gates.append(INPUT)
                assignment.append(x)
            case Product(left, right):
                gates.append(Mul(gate_of[left], gate_of[right]))
        gate_of[element] = len(gates) - 1
    return CayleyCircuit(tuple(gates)), tuple(assignment)


def right_closure[T: Hashable](
    generators: Iterable[T],
    mul: Callable[[T, T], T],
    *,
    limit: int | None = None,
) -> dict[T, Derivation[T]]:
    """
    Every product of generators, found by multiplying members on the right by a generator.

    Same members as `generate`, with `|members| * |generators|` products instead of
    `|members| ** 2`; used for large permutation groups.

    Raises:
        WitnessTooLarge: If `limit` is given and the closure grows beyond it.
    """
    gens = list(dict.fromkeys(generators))
    derivations: dict[T, Derivation[T]] = {}
    queue: deque[T] = deque()

    def add(element: T, derivation: Derivation[T]) -> None:
        if element in derivations:
            return
        if limit is not None and len(derivations) >= limit:
            raise WitnessTooLarge("closure", len(derivations) + 1, limit)
        derivations[element] = derivation
        queue.append(element)

    for x in gens:
        add(x, Generator(x))
    while queue:
        a = queue.popleft()
        for x in gens:
            add(mul(a, x), Product(a, x))
    return derivations
