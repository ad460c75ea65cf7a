"""Ladder networks for symmetric Boolean functions.

A symmetric function of n variables is encoded by a profile of n+1 bits:
entry i is the function value on inputs with exactly i ones. The classic
ladder construction realizes any such nonzero function with n^2+n edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RangeError
from .network import Edge, Literal, SwitchingNetwork

KIND_AT_LEAST = "at_least"
KIND_EQUAL_MID = "equal_mid"
KIND_NOT_EQUAL_MID = "not_equal_mid"


def midpoint(n: int) -> int:
    """ceil(n/2), the popcount threshold used by the *_mid families."""
    return (n + 1) // 2


@dataclass(frozen=True)
class SymmetricSpec:
    """A symmetric function: value depends only on the input's popcount."""

    n: int
    profile: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise RangeError(f"n must be >= 1, got {self.n}")
        if len(self.profile) != self.n + 1:
            raise RangeError(
                f"profile must have n+1 = {self.n + 1} entries, got {len(self.profile)}"
            )
        if any(bit not in (0, 1) for bit in self.profile):
            raise RangeError("profile entries must be bits")
        if not any(self.profile):
            raise RangeError("the identically-0 function has no ladder network")


def symmetric_spec(kind: str, n: int, threshold: int | None = None) -> SymmetricSpec:
    """Build the profile for one of the three named families.

    ``at_least`` is 1 when the popcount is at least ``threshold``; the two
    ``*_mid`` kinds compare the popcount against ceil(n/2) and take no
    threshold.
    """
    if kind == KIND_AT_LEAST:
        if threshold is None:
            raise RangeError("at_least requires a threshold")
        if not 0 <= threshold <= n:
            raise RangeError(f"at_least threshold must be within 0..{n}, got {threshold}")
        profile = tuple(int(i >= threshold) for i in range(n + 1))
    elif kind == KIND_EQUAL_MID:
        if threshold is not None:
            raise RangeError("equal_mid takes no threshold")
        profile = tuple(int(i == midpoint(n)) for i in range(n + 1))
    elif kind == KIND_NOT_EQUAL_MID:
        if threshold is not None:
            raise RangeError("not_equal_mid takes no threshold")
        profile = tuple(int(i != midpoint(n)) for i in range(n + 1))
    else:
        raise RangeError(f"unknown symmetric kind {kind!r}")
    return SymmetricSpec(n, profile)


def shannon_network(spec: SymmetricSpec) -> SwitchingNetwork:
    """Triangular ladder realizing the symmetric function of ``spec``.

    Level i has nodes (i,0)..(i,i); walking the ladder counts ones: from
    (i,j) an edge labeled ~x_{i+1} leads to (i+1,j) and an edge labeled
    x_{i+1} leads to (i+1,j+1), so (i,j) is reached exactly when j of the
    first i variables are 1. All level-n nodes whose profile entry is 1
    are merged into the second pole; level-n dead ends with entry 0 are
    kept so the edge count stays exactly n^2+n.
    """
    n = spec.n

    def node_id(i: int, j: int) -> int:
        return i * (i + 1) // 2 + j

    merged = [j for j in range(n + 1) if spec.profile[j]]
    pole_b = node_id(n, merged[0])
    remap = {node_id(n, j): pole_b for j in merged}

    edges = []
    next_id = 0
    for i in range(n):
        for j in range(i + 1):
            source = node_id(i, j)
            stay = remap.get(node_id(i + 1, j), node_id(i + 1, j))
            rise = remap.get(node_id(i + 1, j + 1), node_id(i + 1, j + 1))
            edges.append(Edge(next_id, source, stay, Literal.negative(i + 1)))
            edges.append(Edge(next_id + 1, source, rise, Literal.positive(i + 1)))
            next_id += 2

    nodes = sorted({node_id(i, j) for i in range(n) for j in range(i + 1)}
                   | {remap.get(node_id(n, j), node_id(n, j)) for j in range(n + 1)})
    return SwitchingNetwork(tuple(nodes), node_id(0, 0), pole_b, tuple(edges))
