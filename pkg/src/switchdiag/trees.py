"""Diagnostic decision trees for constant-fault identification.

A diagnosis problem fixes a network, a fault type, and a candidate fault
set R. A decision tree queries the faulty network's value on chosen
inputs; each leaf names a fault whose induced function must match the
actual one. Faults inducing the same function are interchangeable, so
both builders operate on function classes rather than raw faults.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

from .boolfn import (
    BooleanFunction,
    DEFAULT_ARITY_CAP,
    equivalent,
    index_assignment,
    min_distinguishing_set,
    truth_table,
)
from .errors import (
    InvalidFaultError,
    PreconditionError,
    ResourceLimitError,
    TreeStructureError,
)
from .network import Assignment, Fault, FaultType, SwitchingNetwork

#: Default caps for the exact minimum-depth search.
DEFAULT_EXACT_CLASS_CAP = 64
DEFAULT_EXACT_ARITY_CAP = 6


@dataclass(frozen=True)
class DiagnosisProblem:
    network: SwitchingNetwork
    fault_type: FaultType
    faults: tuple[Fault, ...]

    def __post_init__(self):
        if not self.faults:
            raise PreconditionError("the fault set R must be nonempty")
        known = self.network.edge_ids()
        for fault in self.faults:
            if not fault.is_typed(self.fault_type):
                raise InvalidFaultError(
                    f"fault {fault.text()} uses constants outside type {self.fault_type.value}"
                )
            for edge_id, _ in fault.assignments:
                if edge_id not in known:
                    raise InvalidFaultError(f"fault assigns unknown edge id {edge_id}")

    @cached_property
    def unique_faults(self) -> tuple[Fault, ...]:
        seen: dict[Fault, None] = {}
        for fault in self.faults:
            seen.setdefault(fault)
        return tuple(seen)


@dataclass(frozen=True)
class Leaf:
    fault: Fault


@dataclass(frozen=True)
class Query:
    assignment: Assignment
    on_zero: "DecisionTree"
    on_one: "DecisionTree"


DecisionTree = Union[Leaf, Query]


def tree_depth(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(tree_depth(tree.on_zero), tree_depth(tree.on_one))


def tree_node_count(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + tree_node_count(tree.on_zero) + tree_node_count(tree.on_one)


def tree_leaves(tree: DecisionTree) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return tree_leaves(tree.on_zero) + tree_leaves(tree.on_one)


@dataclass(frozen=True)
class FaultClass:
    """All candidate faults inducing one function, with one representative."""

    representative: Fault
    function: BooleanFunction
    members: tuple[Fault, ...]


def function_classes(
    problem: DiagnosisProblem,
    *,
    max_arity: int = DEFAULT_ARITY_CAP,
) -> tuple[FaultClass, ...]:
    """Partition R by truth-table equality, ordered by first occurrence.

    The representative of a class is the empty fault when the class
    contains it, otherwise the class's earliest fault in R order.
    """
    groups: dict[int, list[Fault]] = {}
    tables: dict[int, BooleanFunction] = {}
    for fault in problem.unique_faults:
        fn = truth_table(problem.network, fault, max_arity=max_arity)
        groups.setdefault(fn.bits, []).append(fault)
        tables[fn.bits] = fn

    classes = []
    for bits, members in groups.items():
        representative = next((f for f in members if f.is_empty), members[0])
        classes.append(FaultClass(representative, tables[bits], tuple(members)))
    return tuple(classes)


def build_tree_greedy(
    problem: DiagnosisProblem,
    *,
    max_arity: int = DEFAULT_ARITY_CAP,
) -> DecisionTree:
    """Split-the-classes construction.

    While at least two classes remain alive, query the input that
    maximizes the smaller side of the split (ties: smallest input index);
    a class survives on the branch matching its function's value. The
    result has one leaf per class, hence at most 2|R|-1 nodes.
    """
    classes = function_classes(problem, max_arity=max_arity)
    m = classes[0].function.arity
    size = 1 << m

    def grow(live: list[int]) -> DecisionTree:
        if len(live) == 1:
            return Leaf(classes[live[0]].representative)
        best_index = -1
        best_score = 0
        for q in range(size):
            ones = sum(1 for c in live if classes[c].function.value_at(q))
            score = min(ones, len(live) - ones)
            if score > best_score:
                best_score = score
                best_index = q
        side0 = [c for c in live if not classes[c].function.value_at(best_index)]
        side1 = [c for c in live if classes[c].function.value_at(best_index)]
        return Query(index_assignment(best_index, m), grow(side0), grow(side1))

    return grow(list(range(len(classes))))


def build_tree_exact(
    problem: DiagnosisProblem,
    *,
    max_classes: int = DEFAULT_EXACT_CLASS_CAP,
    max_exact_arity: int = DEFAULT_EXACT_ARITY_CAP,
    use_lemma_bound: bool = True,
) -> DecisionTree:
    """Minimum-depth tree by memoized search over sets of live classes.

    Queries are iterated in ascending input order, so the result is
    deterministic. States are pruned with the information-theoretic bound
    ceil(log2 k); at the root the distinguishing-set bound is also used as
    a stopping target when ``use_lemma_bound`` is set.
    """
    classes = function_classes(problem)
    m = classes[0].function.arity
    k = len(classes)
    if k > max_classes:
        raise ResourceLimitError(f"{k} function classes exceed the cap of {max_classes}")
    if m > max_exact_arity:
        raise ResourceLimitError(
            f"arity {m} exceeds the exact-search cap of {max_exact_arity}"
        )
    size = 1 << m

    ones_mask = [0] * size
    for ci, cls in enumerate(classes):
        bits = cls.function.bits
        for q in range(size):
            if (bits >> q) & 1:
                ones_mask[q] |= 1 << ci

    full = (1 << k) - 1
    root_lb = 0
    if use_lemma_bound and k > 1:
        for ci, cls in enumerate(classes):
            rest = [c.function for cj, c in enumerate(classes) if cj != ci]
            try:
                bound = min_distinguishing_set(cls.function, rest).t
            except ResourceLimitError:
                continue
            root_lb = max(root_lb, bound)

    memo: dict[int, int] = {}

    def min_depth(live: int) -> int:
        if live & (live - 1) == 0:
            return 0
        cached = memo.get(live)
        if cached is not None:
            return cached
        count = live.bit_count()
        lower = (count - 1).bit_length()
        if live == full:
            lower = max(lower, root_lb)
        best = size + 1
        for q in range(size):
            side1 = live & ones_mask[q]
            if side1 == 0 or side1 == live:
                continue
            depth = 1 + max(min_depth(live ^ side1), min_depth(side1))
            if depth < best:
                best = depth
                if best == lower:
                    break
        memo[live] = best
        return best

    def grow(live: int) -> DecisionTree:
        if live & (live - 1) == 0:
            return Leaf(classes[live.bit_length() - 1].representative)
        target = min_depth(live)
        for q in range(size):
            side1 = live & ones_mask[q]
            if side1 == 0 or side1 == live:
                continue
            side0 = live ^ side1
            if 1 + max(min_depth(side0), min_depth(side1)) == target:
                return Query(index_assignment(q, m), grow(side0), grow(side1))
        raise AssertionError("memoized depth has no realizing query")

    return grow(full)


def run_tree(tree: DecisionTree, oracle: Callable[[Assignment], int]) -> Fault:
    """Walk the tree, asking the oracle at every internal node."""
    node = tree
    while True:
        if isinstance(node, Leaf):
            return node.fault
        if not isinstance(node, Query):
            raise TreeStructureError(f"unexpected tree node of type {type(node).__name__}")
        answer = oracle(node.assignment)
        node = node.on_one if answer else node.on_zero


def verify_tree(
    tree: DecisionTree,
    problem: DiagnosisProblem,
    *,
    max_arity: int = DEFAULT_ARITY_CAP,
) -> bool:
    """True when, for every fault in R, the tree outputs a fault of the
    problem's type inducing the same function as the actual fault."""
    known = problem.network.edge_ids()
    table_cache: dict[Fault, BooleanFunction] = {}

    def table_of(fault: Fault) -> BooleanFunction:
        cached = table_cache.get(fault)
        if cached is None:
            cached = truth_table(problem.network, fault, max_arity=max_arity)
            table_cache[fault] = cached
        return cached

    for fault in problem.unique_faults:
        actual = table_of(fault)
        answered = run_tree(tree, actual.value)
        if not answered.is_typed(problem.fault_type):
            return False
        if any(edge_id not in known for edge_id, _ in answered.assignments):
            return False
        if not equivalent(actual, table_of(answered)):
            return False
    return True
