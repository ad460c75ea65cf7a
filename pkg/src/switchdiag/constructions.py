"""Named network families, their fault constructions, and verification
reports for the depth lower bounds and the vertex-cover reduction.

All generators return networks that pass validation and have the exact
documented edge counts; the verify_* functions re-derive every
intermediate artifact (fault families, induced functions, distinguishing
sets) and report the checks instead of assuming them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .boolfn import (
    BooleanFunction,
    difference_set,
    equivalent,
    min_distinguishing_set,
    truth_table,
)
from .errors import PreconditionError, RangeError, ResourceLimitError
from .network import (
    Edge,
    Fault,
    FaultType,
    Literal,
    SwitchingNetwork,
    enumerate_faults,
)
from .symmetric import KIND_AT_LEAST, KIND_EQUAL_MID, KIND_NOT_EQUAL_MID, midpoint, shannon_network, symmetric_spec
from .trees import (
    DiagnosisProblem,
    build_tree_exact,
    build_tree_greedy,
    run_tree,
    tree_depth,
    verify_tree,
)

FAULT_KIND_S1_ZERO = "s1_zero"
FAULT_KIND_S2_ONE = "s2_one"


def s1_network(n: int) -> SwitchingNetwork:
    """n series cells, each a pair of parallel edges labeled x_i and ~x_i.

    With no fault every cell conducts (x or ~x holds), so the network
    implements the constant 1. Zeroing one edge per cell leaves the
    conjunction of the surviving literals.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    edges = []
    for i in range(1, n + 1):
        edges.append(Edge(2 * (i - 1), i - 1, i, Literal.positive(i)))
        edges.append(Edge(2 * (i - 1) + 1, i - 1, i, Literal.negative(i)))
    return SwitchingNetwork(tuple(range(n + 1)), 0, n, tuple(edges))


def s2_network(n: int) -> SwitchingNetwork:
    """A single chain of 2n edges labeled x_1, ~x_1, ..., x_n, ~x_n.

    The only pole-to-pole path multiplies x_i with ~x_i, so the fault-free
    network implements the constant 0. Sticking one edge per pair at 1
    leaves the conjunction of the other literals.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    edges = []
    for i in range(1, n + 1):
        base = 2 * (i - 1)
        edges.append(Edge(base, base, base + 1, Literal.positive(i)))
        edges.append(Edge(base + 1, base + 1, base + 2, Literal.negative(i)))
    return SwitchingNetwork(tuple(range(2 * n + 1)), 0, 2 * n, tuple(edges))


def conjunction_fault(kind: str, delta: Sequence[int]) -> Fault:
    """The fault making s1/s2 implement the conjunction selected by ``delta``.

    In both layouts cell i holds the x_i edge at id 2(i-1) and the ~x_i
    edge right after it; the faulted edge is the one whose literal
    disagrees with delta_i, stuck at 0 for s1 and at 1 for s2.
    """
    if any(bit not in (0, 1) for bit in delta):
        raise RangeError("delta must be a bit tuple")
    if not delta:
        raise RangeError("delta must be nonempty")
    if kind == FAULT_KIND_S1_ZERO:
        constant = 0
    elif kind == FAULT_KIND_S2_ONE:
        constant = 1
    else:
        raise RangeError(f"unknown conjunction-fault kind {kind!r}")
    return Fault(tuple((2 * i + bit, constant) for i, bit in enumerate(delta)))


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph with 1-based vertices 1..n."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise RangeError(f"vertex count must be >= 1, got {self.n}")
        normalized = []
        seen = set()
        for pair in self.edges:
            if len(pair) != 2:
                raise RangeError(f"edge {pair!r} must have two endpoints")
            a, b = sorted(pair)
            if a == b:
                raise RangeError(f"edge {pair!r} is a loop")
            if not (1 <= a and b <= self.n):
                raise RangeError(f"edge {pair!r} uses vertices outside 1..{self.n}")
            if (a, b) in seen:
                raise RangeError(f"duplicate edge {pair!r}")
            seen.add((a, b))
            normalized.append((a, b))
        object.__setattr__(self, "edges", tuple(normalized))


@dataclass(frozen=True)
class VcInstance:
    graph: SimpleGraph
    m: int

    def __post_init__(self):
        if not 0 < self.m < self.graph.n:
            raise RangeError(
                f"cover budget must satisfy 0 < m < {self.graph.n}, got {self.m}"
            )


def has_vertex_cover(graph: SimpleGraph, budget: int) -> bool:
    """Brute-force ground truth: does a cover of at most ``budget`` vertices
    exist? Subsets are tried in ascending size with early exit."""
    if not graph.edges:
        return True
    for size in range(0, min(budget, graph.n) + 1):
        for subset in itertools.combinations(range(1, graph.n + 1), size):
            chosen = set(subset)
            if all(a in chosen or b in chosen for a, b in graph.edges):
                return True
    return False


def psi_g_network(graph: SimpleGraph) -> SwitchingNetwork:
    """One series cell of two parallel edges x_i, x_j per graph edge {i,j}.

    An input conducts exactly when it picks at least one endpoint of every
    graph edge, i.e. when the chosen vertices form a vertex cover.
    """
    if not graph.edges:
        raise RangeError("the graph must have at least one edge")
    edges = []
    for cell, (a, b) in enumerate(graph.edges):
        edges.append(Edge(2 * cell, cell, cell + 1, Literal.positive(a)))
        edges.append(Edge(2 * cell + 1, cell, cell + 1, Literal.positive(b)))
    t = len(graph.edges)
    return SwitchingNetwork(tuple(range(t + 1)), 0, t, tuple(edges))


def _splice(
    base: SwitchingNetwork,
    addition: SwitchingNetwork,
    end_map: dict[int, int],
    extra_nodes: Sequence[int] = (),
) -> tuple[tuple[int, ...], tuple[Edge, ...], int]:
    """Append ``addition`` to ``base`` with fresh node ids, rebinding the
    nodes listed in ``end_map``. Returns (nodes, edges, node offset)."""
    offset = max(base.nodes) + 1

    def relocate(node: int) -> int:
        return end_map.get(node, offset + node)

    edges = list(base.edges)
    shift = len(base.edges)
    for e in addition.edges:
        edges.append(Edge(shift + e.id, relocate(e.u), relocate(e.v), e.label))
    nodes = set(base.nodes) | {relocate(v) for v in addition.nodes} | set(extra_nodes)
    return tuple(sorted(nodes)), tuple(edges), offset


def q1_network(instance: VcInstance) -> tuple[SwitchingNetwork, tuple[Fault, Fault]]:
    """Cover-detection gadget for stuck-at-0 diagnosis.

    A popcount-threshold ladder and the cover network run in parallel
    between the poles. The second fault kills the whole cover branch, so
    the two candidate faults induce different functions exactly when some
    input with at most ``m`` ones is a vertex cover.
    """
    n = instance.graph.n
    threshold = shannon_network(symmetric_spec(KIND_AT_LEAST, n, instance.m + 1))
    covers = psi_g_network(instance.graph)
    nodes, edges, _ = _splice(
        threshold,
        covers,
        {covers.pole_a: threshold.pole_a, covers.pole_b: threshold.pole_b},
    )
    network = SwitchingNetwork(nodes, threshold.pole_a, threshold.pole_b, edges)
    shift = len(threshold.edges)
    dead_branch = Fault(tuple((shift + e.id, 0) for e in covers.edges))
    return network, (Fault.empty(), dead_branch)


def q2_network(instance: VcInstance) -> tuple[SwitchingNetwork, tuple[Fault, Fault]]:
    """Cover-detection gadget for stuck-at-1 diagnosis.

    Like the parallel gadget, but the cover branch continues through two
    series edges labeled x_1 and ~x_1, which block it on every input. The
    second fault sticks that blocking pair at 1, reviving the branch.
    """
    n = instance.graph.n
    threshold = shannon_network(symmetric_spec(KIND_AT_LEAST, n, instance.m + 1))
    covers = psi_g_network(instance.graph)
    junction_base = max(threshold.nodes) + 1 + max(covers.nodes) + 1
    j1 = junction_base
    j2 = junction_base + 1
    nodes, edges, _ = _splice(
        threshold,
        covers,
        {covers.pole_a: threshold.pole_a, covers.pole_b: j1},
        extra_nodes=(j1, j2),
    )
    shift = len(threshold.edges) + len(covers.edges)
    blocking = (
        Edge(shift, j1, j2, Literal.positive(1)),
        Edge(shift + 1, j2, threshold.pole_b, Literal.negative(1)),
    )
    network = SwitchingNetwork(nodes, threshold.pole_a, threshold.pole_b, edges + blocking)
    revive = Fault(((shift, 1), (shift + 1, 1)))
    return network, (Fault.empty(), revive)


VARIANT_Q1 = "q1"
VARIANT_Q2 = "q2"


def vc_reduction_decide(instance: VcInstance, variant: str) -> bool:
    """Decide vertex cover through the diagnosis machinery.

    Builds the gadget and its two candidate faults, constructs a greedy
    diagnostic tree (any sound tree builder works here), applies it to
    both faulty networks, and answers whether the two diagnoses induce
    different functions.
    """
    if variant == VARIANT_Q1:
        network, faults = q1_network(instance)
        fault_type = FaultType.ZERO
    elif variant == VARIANT_Q2:
        network, faults = q2_network(instance)
        fault_type = FaultType.ONE
    else:
        raise RangeError(f"variant must be 'q1' or 'q2', got {variant!r}")

    problem = DiagnosisProblem(network, fault_type, faults)
    tree = build_tree_greedy(problem)

    tables = {fault: truth_table(network, fault) for fault in faults}

    def table_of(fault: Fault) -> BooleanFunction:
        found = tables.get(fault)
        if found is None:
            found = truth_table(network, fault)
            tables[fault] = found
        return found

    answers = [run_tree(tree, tables[fault].value) for fault in faults]
    return not equivalent(table_of(answers[0]), table_of(answers[1]))


@dataclass(frozen=True)
class Theorem1Report:
    """Checked artifacts for the 2^n depth bound on a 2n-edge network."""

    n: int
    fault_type: str
    edge_count: int
    base_ok: bool
    family_size: int
    family_ok: bool
    family_failures: tuple[str, ...]
    t: int
    t_expected: int
    hitting_search_confirmed: bool
    depth_checked: bool
    exact_depth: int | None
    depth_ok: bool | None

    @property
    def ok(self) -> bool:
        depth_fine = self.depth_ok is not False
        return self.base_ok and self.family_ok and self.t == self.t_expected and depth_fine


def theorem1_verify(
    n: int,
    fault_type: FaultType,
    *,
    confirm_hitting: bool | None = None,
    check_depth: bool | None = None,
) -> Theorem1Report:
    """Re-derive the conjunction fault family on s1/s2 and its lower bound.

    ``confirm_hitting`` forces the full hitting-set search instead of the
    singleton shortcut (default: on for n <= 4). ``check_depth`` runs the
    exact tree search over the complete fault set (default: on for
    n <= 2; the search caps make larger n a resource error).
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if confirm_hitting is None:
        confirm_hitting = n <= 4
    if check_depth is None:
        check_depth = n <= 2

    if fault_type is FaultType.ONE:
        network = s2_network(n)
        base_fault = Fault.empty()
        kind = FAULT_KIND_S2_ONE
    else:
        network = s1_network(n)
        base_fault = Fault.of({e.id: 0 for e in network.edges})
        kind = FAULT_KIND_S1_ZERO

    base = truth_table(network, base_fault)
    base_ok = equivalent(base, BooleanFunction.constant(n, 0))

    failures = []
    family = []
    for index in range(1 << n):
        delta = tuple((index >> j) & 1 for j in range(n))
        fault = conjunction_fault(kind, delta)
        if not fault.is_typed(fault_type):
            failures.append(f"delta {delta}: fault not of type {fault_type.value}")
        induced = truth_table(network, fault)
        family.append(induced)
        if not equivalent(induced, BooleanFunction.minterm(delta)):
            failures.append(f"delta {delta}: induced function is not the conjunction")
        if difference_set(base, induced) != (delta,):
            failures.append(f"delta {delta}: difference from the base is not exactly delta")

    bound = min_distinguishing_set(
        base, family, allow_singleton_shortcut=not confirm_hitting
    )

    exact_depth = None
    depth_ok = None
    depth_checked = False
    if check_depth:
        all_faults = enumerate_faults(network, fault_type)
        problem = DiagnosisProblem(network, fault_type, tuple(all_faults))
        tree = build_tree_exact(problem)
        if not verify_tree(tree, problem):
            failures.append("exact tree over the full fault set does not verify")
        exact_depth = tree_depth(tree)
        depth_ok = exact_depth >= (1 << n)
        depth_checked = True

    return Theorem1Report(
        n=n,
        fault_type=fault_type.value,
        edge_count=network.edge_count,
        base_ok=base_ok,
        family_size=len(family),
        family_ok=not failures,
        family_failures=tuple(failures),
        t=bound.t,
        t_expected=1 << n,
        hitting_search_confirmed=confirm_hitting,
        depth_checked=depth_checked,
        exact_depth=exact_depth,
        depth_ok=depth_ok,
    )


def _satisfied_pole_path(
    network: SwitchingNetwork, assignment: Sequence[int]
) -> tuple[int, ...] | None:
    """First simple pole-to-pole path whose literals all hold, by DFS in
    edge order; None when the network evaluates to 0 on the input."""
    bits = dict(zip(network.variables, assignment))
    adjacency: dict[int, list[Edge]] = {node: [] for node in network.nodes}
    for e in network.edges:
        if e.label.value(bits[e.label.variable]):
            adjacency[e.u].append(e)
            adjacency[e.v].append(e)

    visited = {network.pole_a}
    path: list[int] = []

    def walk(node: int) -> bool:
        if node == network.pole_b:
            return True
        for e in adjacency[node]:
            nxt = e.v if e.u == node else e.u
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(e.id)
            if walk(nxt):
                return True
            path.pop()
            visited.remove(nxt)
        return False

    return tuple(path) if walk(network.pole_a) else None


@dataclass(frozen=True)
class Theorem2Report:
    """Checked artifacts for the central-binomial depth bound, which holds
    for every network implementing the midpoint symmetric functions."""

    n: int
    fault_type: str
    case: str
    k: int
    base_ok: bool
    family_size: int
    family_ok: bool
    family_failures: tuple[str, ...]
    t: int
    t_expected: int

    @property
    def ok(self) -> bool:
        return self.base_ok and self.family_ok and self.t == self.t_expected


def theorem2_verify(
    n: int,
    fault_type: FaultType,
    network: SwitchingNetwork | None = None,
) -> Theorem2Report:
    """Check the clause/term fault families on a network implementing the
    required midpoint symmetric function (default: its ladder network).

    For stuck-at-1 (and both-constants) faults the target function is
    popcount != ceil(n/2): sticking at 1 every edge whose literal holds on
    a midpoint input leaves the clause that excludes exactly that input.
    For stuck-at-0 faults the target is popcount == ceil(n/2): zeroing
    everything off one satisfied path leaves that path's conjunction.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    k = midpoint(n)

    if fault_type is FaultType.ZERO:
        case = "term-faults"
        spec = symmetric_spec(KIND_EQUAL_MID, n)
    else:
        case = "clause-faults"
        spec = symmetric_spec(KIND_NOT_EQUAL_MID, n)
    if network is None:
        network = shannon_network(spec)

    target = BooleanFunction.from_popcounts(spec.profile)
    if network.variables != tuple(range(1, n + 1)):
        raise PreconditionError(
            f"network must have input variables x1..x{n}, got {network.variables}"
        )
    if not equivalent(truth_table(network, Fault.empty()), target):
        raise PreconditionError(
            "network does not implement the required symmetric function"
        )

    variable_position = {v: j for j, v in enumerate(network.variables)}
    failures = []
    family = []
    points = [
        tuple((index >> j) & 1 for j in range(n))
        for index in range(1 << n)
        if index.bit_count() == k
    ]
    for delta in points:
        if case == "clause-faults":
            stuck = {
                e.id: 1
                for e in network.edges
                if e.label.value(delta[variable_position[e.label.variable]])
            }
            fault = Fault.of(stuck)
            predicted = BooleanFunction.maxterm(delta)
        else:
            path = _satisfied_pole_path(network, delta)
            if path is None:
                failures.append(f"delta {delta}: no satisfied pole-to-pole path")
                continue
            keep = set(path)
            fault = Fault.of({e.id: 0 for e in network.edges if e.id not in keep})
            predicted = BooleanFunction.minterm(delta)
        if not fault.is_typed(fault_type):
            failures.append(f"delta {delta}: fault not of type {fault_type.value}")
        induced = truth_table(network, fault)
        family.append(induced)
        if not equivalent(induced, predicted):
            failures.append(f"delta {delta}: induced function differs from the predicted one")

    if case == "clause-faults":
        base_fault = Fault.of({e.id: 1 for e in network.edges})
        base_expected = BooleanFunction.constant(n, 1)
    else:
        base_fault = Fault.of({e.id: 0 for e in network.edges})
        base_expected = BooleanFunction.constant(n, 0)
    base = truth_table(network, base_fault)
    base_ok = equivalent(base, base_expected)

    bound = min_distinguishing_set(base, family) if family else None
    t = bound.t if bound is not None else 0

    return Theorem2Report(
        n=n,
        fault_type=fault_type.value,
        case=case,
        k=k,
        base_ok=base_ok,
        family_size=len(family),
        family_ok=not failures,
        family_failures=tuple(failures),
        t=t,
        t_expected=math.comb(n, k),
    )


@dataclass(frozen=True)
class CentralBinomialRow:
    n: int
    central: int
    max_binomial: int
    is_maximum: bool
    bound_holds: bool


@dataclass(frozen=True)
class CentralBinomialReport:
    rows: tuple[CentralBinomialRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.is_maximum and row.bound_holds for row in self.rows)


def central_binomial_report(max_n: int) -> CentralBinomialReport:
    """Exact integer checks that binom(n, ceil(n/2)) is the largest
    binomial coefficient and is at least 2^n / (n+1)."""
    if max_n < 1:
        raise RangeError(f"max_n must be >= 1, got {max_n}")
    rows = []
    for n in range(1, max_n + 1):
        central = math.comb(n, midpoint(n))
        largest = max(math.comb(n, j) for j in range(n + 1))
        rows.append(
            CentralBinomialRow(
                n=n,
                central=central,
                max_binomial=largest,
                is_maximum=central == largest,
                bound_holds=central * (n + 1) >= (1 << n),
            )
        )
    return CentralBinomialReport(tuple(rows))
