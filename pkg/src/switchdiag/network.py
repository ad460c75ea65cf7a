"""Switching networks with constant stuck-at faults.

A switching network is an undirected connected multigraph without loops,
with two distinguished poles. Every edge carries a literal (a variable or
its negation). The network computes 1 on an input exactly when the poles
are connected through edges whose literal is satisfied.

A fault overrides the literals of some edges with Boolean constants; the
empty fault leaves the network untouched. Faulted edges stuck at 0 never
conduct, edges stuck at 1 always conduct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .errors import (
    ArityError,
    InvalidFaultError,
    ResourceLimitError,
)

Assignment = tuple[int, ...]

#: Default cap on edge count for simple-path enumeration.
DEFAULT_PATH_EDGE_CAP = 24
#: Default cap on the number of simple paths visited in one evaluation.
DEFAULT_PATH_COUNT_CAP = 200_000
#: Default cap on the number of faults produced by exhaustive enumeration.
DEFAULT_FAULT_ENUM_CAP = 100_000


@dataclass(frozen=True, order=True)
class Literal:
    """A variable ``x_i`` or its negation."""

    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 0:
            raise ValueError(f"variable index must be >= 0, got {self.variable}")

    @classmethod
    def positive(cls, variable: int) -> "Literal":
        return cls(variable, False)

    @classmethod
    def negative(cls, variable: int) -> "Literal":
        return cls(variable, True)

    @classmethod
    def signed(cls, variable: int, sign: int) -> "Literal":
        """The literal that evaluates to 1 exactly when the variable equals ``sign``."""
        return cls(variable, negated=(sign == 0))

    def value(self, bit: int) -> int:
        return bit ^ 1 if self.negated else bit

    def text(self) -> str:
        return f"~x{self.variable}" if self.negated else f"x{self.variable}"


@dataclass(frozen=True)
class Edge:
    """One labeled edge; ``id`` values are dense 0..L-1 within a network."""

    id: int
    u: int
    v: int
    label: Literal


@dataclass(frozen=True)
class SwitchingNetwork:
    nodes: tuple[int, ...]
    pole_a: int
    pole_b: int
    edges: tuple[Edge, ...]

    @cached_property
    def variables(self) -> tuple[int, ...]:
        """Sorted, duplicate-free variable indices over all edge labels.

        Fixed by the fault-free network; faults never change the arity of
        the implemented function.
        """
        return tuple(sorted({e.label.variable for e in self.edges}))

    @cached_property
    def _node_pos(self) -> dict[int, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> frozenset[int]:
        return frozenset(e.id for e in self.edges)


class FaultType(Enum):
    """Which constants a fault may assign: stuck-at-0, stuck-at-1, or both."""

    ZERO = "0"
    ONE = "1"
    BOTH = "01"

    @property
    def constants(self) -> tuple[int, ...]:
        return {"0": (0,), "1": (1,), "01": (0, 1)}[self.value]

    @classmethod
    def from_text(cls, text: str) -> "FaultType":
        for member in cls:
            if member.value == text:
                return cls(text)
        raise ValueError(f"fault type must be one of '0', '1', '01', got {text!r}")


@dataclass(frozen=True)
class Fault:
    """A partial assignment of constants to edges, keyed by edge id.

    The empty assignment is the distinguished empty fault. Equality is
    equality of the assignment mapping, not of the induced functions.
    """

    assignments: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        canon = tuple(sorted(self.assignments))
        seen = set()
        for edge_id, bit in canon:
            if bit not in (0, 1):
                raise ValueError(f"fault constant must be 0 or 1, got {bit}")
            if edge_id in seen:
                raise ValueError(f"edge {edge_id} assigned twice")
            seen.add(edge_id)
        object.__setattr__(self, "assignments", canon)

    @classmethod
    def empty(cls) -> "Fault":
        return cls(())

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "Fault":
        return cls(tuple(mapping.items()))

    @cached_property
    def _map(self) -> dict[int, int]:
        return dict(self.assignments)

    def get(self, edge_id: int) -> int | None:
        return self._map.get(edge_id)

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignments)

    @property
    def is_empty(self) -> bool:
        return not self.assignments

    def is_typed(self, fault_type: FaultType) -> bool:
        """True when every assigned constant is allowed by ``fault_type``."""
        allowed = fault_type.constants
        return all(bit in allowed for _, bit in self.assignments)

    def text(self) -> str:
        if not self.assignments:
            return "lambda"
        return ",".join(f"e{edge_id}={bit}" for edge_id, bit in self.assignments)


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str


def validate(network: SwitchingNetwork) -> list[Diagnostic]:
    """Check all structural invariants; empty list means the network is valid."""
    out: list[Diagnostic] = []
    nodes = network.nodes
    node_set = set(nodes)
    if len(node_set) != len(nodes):
        out.append(Diagnostic("duplicate-node", "node ids are not unique"))
    if network.pole_a == network.pole_b:
        out.append(Diagnostic("equal-poles", "the two poles must be different nodes"))
    for pole in (network.pole_a, network.pole_b):
        if pole not in node_set:
            out.append(Diagnostic("unknown-pole", f"pole {pole} is not a node"))

    endpoints_ok = True
    for e in network.edges:
        if e.u == e.v:
            out.append(Diagnostic("loop", f"edge {e.id} is a loop at node {e.u}"))
        for endpoint in (e.u, e.v):
            if endpoint not in node_set:
                endpoints_ok = False
                out.append(
                    Diagnostic("unknown-endpoint", f"edge {e.id} endpoint {endpoint} is not a node")
                )

    ids = sorted(e.id for e in network.edges)
    if len(set(ids)) != len(ids):
        out.append(Diagnostic("duplicate-edge-id", "edge ids are not unique"))
    elif ids != list(range(len(ids))):
        out.append(Diagnostic("edge-ids-not-dense", "edge ids must be exactly 0..L-1"))

    if endpoints_ok and node_set and not out:
        parent = {node: node for node in node_set}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in network.edges:
            parent[find(e.u)] = find(e.v)
        roots = {find(node) for node in node_set}
        if len(roots) > 1:
            out.append(Diagnostic("disconnected", "the underlying graph is not connected"))
    return out


def check_valid(network: SwitchingNetwork) -> SwitchingNetwork:
    """Raise :class:`ValidationError` when the network is invalid."""
    from .errors import ValidationError

    diags = validate(network)
    if diags:
        raise ValidationError(
            "; ".join(f"{d.kind}: {d.message}" for d in diags), diagnostics=diags
        )
    return network


def input_variables(network: SwitchingNetwork) -> tuple[int, ...]:
    """The canonical (ascending) input-variable order of the network."""
    return network.variables


def _check_fault(network: SwitchingNetwork, fault: Fault) -> None:
    known = network.edge_ids()
    for edge_id, _ in fault.assignments:
        if edge_id not in known:
            raise InvalidFaultError(f"fault assigns unknown edge id {edge_id}")


def _check_arity(network: SwitchingNetwork, assignment: Sequence[int]) -> None:
    m = len(network.variables)
    if len(assignment) != m:
        raise ArityError(f"assignment has {len(assignment)} bits, network has {m} variables")


def _effective_value(edge: Edge, fault: Fault, bits: Mapping[int, int]) -> int:
    forced = fault.get(edge.id)
    if forced is not None:
        return forced
    return edge.label.value(bits[edge.label.variable])


def evaluate(network: SwitchingNetwork, fault: Fault, assignment: Sequence[int]) -> int:
    """Value of the faulted network on one input: 1 iff the poles are
    connected through edges whose effective function is satisfied."""
    _check_fault(network, fault)
    _check_arity(network, assignment)
    bits = dict(zip(network.variables, assignment))
    pos = network._node_pos
    parent = list(range(len(network.nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in network.edges:
        if _effective_value(edge, fault, bits):
            parent[find(pos[edge.u])] = find(pos[edge.v])
    return int(find(pos[network.pole_a]) == find(pos[network.pole_b]))


def simple_pole_paths(
    network: SwitchingNetwork,
    *,
    max_paths: int = DEFAULT_PATH_COUNT_CAP,
) -> Iterator[tuple[int, ...]]:
    """Yield every simple pole-to-pole path as a tuple of edge ids.

    Paths may not repeat nodes; parallel edges give distinct paths. Raises
    :class:`ResourceLimitError` when more than ``max_paths`` paths exist.
    """
    adjacency: dict[int, list[Edge]] = {node: [] for node in network.nodes}
    for e in network.edges:
        adjacency[e.u].append(e)
        adjacency[e.v].append(e)

    produced = 0
    target = network.pole_b
    path: list[int] = []
    visited = {network.pole_a}

    def walk(node: int) -> Iterator[tuple[int, ...]]:
        nonlocal produced
        if node == target:
            produced += 1
            if produced > max_paths:
                raise ResourceLimitError(f"more than {max_paths} simple pole-to-pole paths")
            yield tuple(path)
            return
        for e in adjacency[node]:
            nxt = e.v if e.u == node else e.u
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(e.id)
            yield from walk(nxt)
            path.pop()
            visited.remove(nxt)

    yield from walk(network.pole_a)


def path_dnf_eval(
    network: SwitchingNetwork,
    fault: Fault,
    assignment: Sequence[int],
    *,
    max_edges: int = DEFAULT_PATH_EDGE_CAP,
    max_paths: int = DEFAULT_PATH_COUNT_CAP,
) -> int:
    """Evaluate via the disjunction over all simple pole-to-pole paths of the
    conjunction of the effective edge functions along each path.

    Pointwise equal to :func:`evaluate`; kept as an independently
    implemented oracle, so no early exit and no connectivity shortcuts.
    """
    if network.edge_count > max_edges:
        raise ResourceLimitError(
            f"path enumeration capped at {max_edges} edges, network has {network.edge_count}"
        )
    _check_fault(network, fault)
    _check_arity(network, assignment)
    bits = dict(zip(network.variables, assignment))
    by_id = {e.id: e for e in network.edges}

    result = 0
    for path in simple_pole_paths(network, max_paths=max_paths):
        conjunction = 1
        for edge_id in path:
            conjunction &= _effective_value(by_id[edge_id], fault, bits)
        result |= conjunction
    return result


def enumerate_faults(
    network: SwitchingNetwork,
    fault_type: FaultType,
    *,
    max_faults: int = DEFAULT_FAULT_ENUM_CAP,
) -> list[Fault]:
    """All faults of the given type: each edge is untouched or stuck at one
    of the allowed constants. The empty fault comes first."""
    options = (None,) + fault_type.constants
    total = len(options) ** network.edge_count
    if total > max_faults:
        raise ResourceLimitError(
            f"{total} faults of type {fault_type.value} exceed the cap of {max_faults}"
        )
    ids = sorted(e.id for e in network.edges)
    out = []
    for combo in itertools.product(options, repeat=len(ids)):
        out.append(
            Fault(tuple((i, bit) for i, bit in zip(ids, combo) if bit is not None))
        )
    return out
