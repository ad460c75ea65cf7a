"""Truth tables of implemented functions and the distinguishing-set bound.

Tables are packed into a single int: bit ``i`` holds the function value on
the input whose index is ``i``, where bit ``j`` of the index is the value
of the j-th canonical variable (first variable least significant).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ArityError, PreconditionError, ResourceLimitError
from .network import Assignment, Fault, SwitchingNetwork, _check_fault

#: Default cap on table arity (tables take 2^m bits).
DEFAULT_ARITY_CAP = 20
#: Default cap on branch-and-bound nodes in the exact hitting-set search.
DEFAULT_SEARCH_NODE_CAP = 2_000_000


def assignment_index(assignment: Sequence[int]) -> int:
    index = 0
    for j, bit in enumerate(assignment):
        index |= (bit & 1) << j
    return index


def index_assignment(index: int, arity: int) -> Assignment:
    return tuple((index >> j) & 1 for j in range(arity))


def _variable_masks(arity: int) -> tuple[list[int], int]:
    """Per-variable satisfaction masks over all 2^arity input indices."""
    size = 1 << arity
    full = (1 << size) - 1
    masks = []
    for j in range(arity):
        period = 1 << (j + 1)
        unit = ((1 << (1 << j)) - 1) << (1 << j)
        repeat = full // ((1 << period) - 1)
        masks.append(unit * repeat)
    return masks, full


@dataclass(frozen=True)
class BooleanFunction:
    arity: int
    bits: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        if not 0 <= self.bits < (1 << (1 << self.arity)):
            raise ValueError("table does not fit the declared arity")

    @property
    def size(self) -> int:
        return 1 << self.arity

    def value_at(self, index: int) -> int:
        return (self.bits >> index) & 1

    def value(self, assignment: Sequence[int]) -> int:
        if len(assignment) != self.arity:
            raise ArityError(
                f"assignment has {len(assignment)} bits, function has arity {self.arity}"
            )
        return self.value_at(assignment_index(assignment))

    def to_bitstring(self) -> str:
        """Table as text, input index 0 leftmost."""
        return "".join(str(self.value_at(i)) for i in range(self.size))

    @classmethod
    def constant(cls, arity: int, value: int) -> "BooleanFunction":
        return cls(arity, ((1 << (1 << arity)) - 1) if value else 0)

    @classmethod
    def minterm(cls, point: Sequence[int]) -> "BooleanFunction":
        """Conjunction of literals that is 1 exactly at ``point``."""
        return cls(len(point), 1 << assignment_index(point))

    @classmethod
    def maxterm(cls, point: Sequence[int]) -> "BooleanFunction":
        """Disjunction of literals that is 0 exactly at ``point``."""
        arity = len(point)
        full = (1 << (1 << arity)) - 1
        return cls(arity, full ^ (1 << assignment_index(point)))

    @classmethod
    def from_popcounts(cls, profile: Sequence[int]) -> "BooleanFunction":
        """Symmetric function given by value-per-number-of-ones."""
        arity = len(profile) - 1
        bits = 0
        for i in range(1 << arity):
            if profile[i.bit_count()]:
                bits |= 1 << i
        return cls(arity, bits)

    @classmethod
    def from_values(cls, arity: int, fn: Callable[[Assignment], int]) -> "BooleanFunction":
        bits = 0
        for i in range(1 << arity):
            if fn(index_assignment(i, arity)):
                bits |= 1 << i
        return cls(arity, bits)


def truth_table(
    network: SwitchingNetwork,
    fault: Fault = Fault.empty(),
    *,
    max_arity: int = DEFAULT_ARITY_CAP,
) -> BooleanFunction:
    """Table of the function implemented by the faulted network.

    Computes pole reachability for all inputs at once: each node carries a
    mask of the inputs for which it is reachable from pole_a, and masks are
    propagated along edges until a fixed point. Bit i of an edge's mask
    says whether its effective function is satisfied on input i.
    """
    variables = network.variables
    m = len(variables)
    if m > max_arity:
        raise ResourceLimitError(f"table arity {m} exceeds the cap of {max_arity}")
    _check_fault(network, fault)

    masks, full = _variable_masks(m)
    position = {v: j for j, v in enumerate(variables)}
    forced = fault.as_dict()

    hot_edges = []
    for e in network.edges:
        if e.id in forced:
            edge_mask = full if forced[e.id] else 0
        else:
            edge_mask = masks[position[e.label.variable]]
            if e.label.negated:
                edge_mask ^= full
        if edge_mask:
            hot_edges.append((e.u, e.v, edge_mask))

    reach = {node: 0 for node in network.nodes}
    reach[network.pole_a] = full
    changed = True
    while changed:
        changed = False
        for u, v, edge_mask in hot_edges:
            ru = reach[u]
            rv = reach[v]
            through = (ru | rv) & edge_mask
            nu = ru | through
            if nu != ru:
                reach[u] = nu
                changed = True
            nv = rv | through
            if nv != rv:
                reach[v] = nv
                changed = True
    return BooleanFunction(m, reach[network.pole_b])


def _require_same_arity(f: BooleanFunction, g: BooleanFunction) -> None:
    if f.arity != g.arity:
        raise ArityError(f"arity mismatch: {f.arity} vs {g.arity}")


def equivalent(f: BooleanFunction, g: BooleanFunction) -> bool:
    _require_same_arity(f, g)
    return f.bits == g.bits


def difference_set(f: BooleanFunction, g: BooleanFunction) -> tuple[Assignment, ...]:
    """All inputs on which the two functions disagree, ascending by index."""
    _require_same_arity(f, g)
    diff = f.bits ^ g.bits
    return tuple(index_assignment(i, f.arity) for i in _bit_indices(diff))


def _bit_indices(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True)
class DistinguishingResult:
    t: int
    witness: tuple[Assignment, ...]


def min_distinguishing_set(
    f0: BooleanFunction,
    family: Iterable[BooleanFunction],
    *,
    allow_singleton_shortcut: bool = True,
    max_nodes: int = DEFAULT_SEARCH_NODE_CAP,
) -> DistinguishingResult:
    """Minimum set of inputs on which ``f0`` differs from every family member.

    This is an exact minimum hitting set over the pairwise difference sets,
    found by iterative deepening with greedy initialization and
    most-constrained branching. When every difference set is a singleton
    the answer is the number of distinct singletons and no search is run
    (disable via ``allow_singleton_shortcut`` to force the full search).

    Raises :class:`PreconditionError` when some family member equals
    ``f0``, and :class:`ResourceLimitError` carrying the greedy witness as
    ``fallback`` when the search exceeds ``max_nodes``.
    """
    members = list(family)
    for g in members:
        _require_same_arity(f0, g)
    diffs = []
    for g in members:
        d = f0.bits ^ g.bits
        if d == 0:
            raise PreconditionError("a family member implements the same function as the base")
        diffs.append(d)

    arity = f0.arity
    sets = sorted({frozenset(_bit_indices(d)) for d in diffs}, key=lambda s: (len(s), sorted(s)))
    # A superset of another difference set is hit whenever the subset is.
    pruned: list[frozenset[int]] = []
    for s in sets:
        if not any(kept <= s for kept in pruned):
            pruned.append(s)
    sets = pruned

    if allow_singleton_shortcut and all(len(s) == 1 for s in sets):
        witness = sorted(next(iter(s)) for s in sets)
        return DistinguishingResult(
            len(witness), tuple(index_assignment(i, arity) for i in witness)
        )

    greedy = _greedy_hitting_set(sets)
    best = _exact_hitting_set(sets, greedy, max_nodes=max_nodes, arity=arity)
    witness = tuple(index_assignment(i, arity) for i in sorted(best))
    return DistinguishingResult(len(witness), witness)


def _greedy_hitting_set(sets: list[frozenset[int]]) -> set[int]:
    uncovered = list(sets)
    chosen: set[int] = set()
    while uncovered:
        counts: dict[int, int] = {}
        for s in uncovered:
            for element in s:
                counts[element] = counts.get(element, 0) + 1
        element = min(counts, key=lambda e: (-counts[e], e))
        chosen.add(element)
        uncovered = [s for s in uncovered if element not in s]
    return chosen


def _disjoint_packing_bound(sets: list[frozenset[int]]) -> int:
    taken: set[int] = set()
    count = 0
    for s in sorted(sets, key=len):
        if not (s & taken):
            count += 1
            taken |= s
    return count


def _exact_hitting_set(
    sets: list[frozenset[int]],
    greedy: set[int],
    *,
    max_nodes: int,
    arity: int,
) -> set[int]:
    if not sets:
        return set()
    nodes_used = 0

    def search(uncovered: list[frozenset[int]], budget: int, acc: set[int]) -> set[int] | None:
        nonlocal nodes_used
        nodes_used += 1
        if nodes_used > max_nodes:
            raise ResourceLimitError(
                f"hitting-set search exceeded {max_nodes} nodes; "
                f"greedy witness of size {len(greedy)} available",
                fallback=DistinguishingResult(
                    len(greedy), tuple(index_assignment(i, arity) for i in sorted(greedy))
                ),
            )
        if not uncovered:
            return set(acc)
        if budget == 0 or _disjoint_packing_bound(uncovered) > budget:
            return None
        pivot = min(uncovered, key=lambda s: (len(s), sorted(s)))
        coverage: dict[int, int] = {}
        for s in uncovered:
            for element in s:
                coverage[element] = coverage.get(element, 0) + 1
        for element in sorted(pivot, key=lambda e: (-coverage[e], e)):
            acc.add(element)
            rest = [s for s in uncovered if element not in s]
            found = search(rest, budget - 1, acc)
            acc.discard(element)
            if found is not None:
                return found
        return None

    lower = _disjoint_packing_bound(sets)
    for k in range(lower, len(greedy) + 1):
        found = search(sets, k, set())
        if found is not None:
            return found
    return set(greedy)
