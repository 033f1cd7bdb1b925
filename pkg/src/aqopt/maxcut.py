"""Weighted MAXCUT instances with exact and greedy classical oracles.

An assignment s in [0, 2^n) puts node i on side s_i, where s_i is bit i
of s counted from the most significant end (the same ordering the
quantum modules use for qubits). The payoff of a cut is

    P(s) = sum_i w_i s_i  +  sum_{i<j} w_ij [s_i != s_j]

with node weights w_i expressing a preference for side 1 and edge
weights w_ij rewarding cut edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

ENUMERATION_LIMIT = 20


def bit_of(s: int, i: int, n: int) -> int:
    """Bit i of s, counting bit 0 as the most significant of n bits."""
    return (s >> (n - 1 - i)) & 1


def bits_of(s: int, n: int) -> tuple[int, ...]:
    return tuple(bit_of(s, i, n) for i in range(n))


@dataclass(frozen=True)
class WeightedGraph:
    """MAXCUT instance: node weights plus a sparse symmetric edge map.

    Edges are canonicalized to (i, j, w) with i < j; self loops and
    duplicate pairs are rejected.
    """

    n: int
    node_weights: tuple[float, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one node, got n={self.n}")
        weights = tuple(float(w) for w in self.node_weights)
        if len(weights) != self.n:
            raise ValueError(f"expected {self.n} node weights, got {len(weights)}")
        if not all(np.isfinite(weights)):
            raise ValueError("node weights must be finite")
        seen = set()
        canon = []
        for i, j, w in self.edges:
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise ValueError(f"self loop on node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            if not np.isfinite(w):
                raise ValueError(f"edge ({i},{j}) weight must be finite")
            seen.add((i, j))
            canon.append((i, j, w))
        canon.sort()
        object.__setattr__(self, "node_weights", weights)
        object.__setattr__(self, "edges", tuple(canon))

    def edge_weight(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        for a, b, w in self.edges:
            if (a, b) == (i, j):
                return w
        return 0.0

    @classmethod
    def from_dict(cls, data: dict) -> "WeightedGraph":
        try:
            return cls(
                n=int(data["n"]),
                node_weights=tuple(data["node_weights"]),
                edges=tuple((e[0], e[1], e[2]) for e in data.get("edges", [])),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed graph object: {exc}") from exc

    @classmethod
    def from_json(cls, path) -> "WeightedGraph":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "node_weights": list(self.node_weights),
            "edges": [[i, j, w] for i, j, w in self.edges],
        }


@dataclass(frozen=True)
class CutAssignment:
    """A cut encoded as the integer whose bits are the node sides."""

    n: int
    s: int

    def __post_init__(self):
        if not 0 <= self.s < (1 << self.n):
            raise ValueError(f"s={self.s} out of range for n={self.n}")

    @property
    def bits(self) -> tuple[int, ...]:
        return bits_of(self.s, self.n)

    @classmethod
    def from_string(cls, bitstring: str) -> "CutAssignment":
        return cls(n=len(bitstring), s=int(bitstring, 2))

    def __str__(self) -> str:
        return format(self.s, f"0{self.n}b")


@dataclass(frozen=True)
class PayoffTable:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _as_int(s, n: int) -> int:
    if isinstance(s, CutAssignment):
        if s.n != n:
            raise ValueError(f"assignment is for n={s.n}, graph has n={n}")
        return s.s
    return int(s)


def payoff(graph: WeightedGraph, s) -> float:
    """P(s); node terms then edge terms, both in ascending index order."""
    si = _as_int(s, graph.n)
    if not 0 <= si < (1 << graph.n):
        raise ValueError(f"s={si} out of range for n={graph.n}")
    bits = bits_of(si, graph.n)
    total = 0.0
    for i in range(graph.n):
        total += graph.node_weights[i] * bits[i]
    for i, j, w in graph.edges:
        total += w * (bits[i] ^ bits[j])
    return total


def payoff_table(graph: WeightedGraph) -> PayoffTable:
    if graph.n > ENUMERATION_LIMIT:
        raise ValueError(f"refusing to enumerate 2^{graph.n} assignments")
    return PayoffTable(np.array([payoff(graph, s) for s in range(1 << graph.n)]))


def brute_force_max(graph: WeightedGraph) -> tuple[tuple[int, ...], float]:
    """All maximizing assignments in ascending order, with the maximum payoff."""
    table = payoff_table(graph).values
    best = float(table.max())
    argmax = tuple(int(s) for s in np.flatnonzero(table == best))
    return argmax, best


@dataclass(frozen=True)
class GreedyResult:
    endpoint: int
    path: tuple[int, ...]
    payoffs: tuple[float, ...]


def greedy_search(graph: WeightedGraph, start, rule: str = "accept-equal") -> GreedyResult:
    """Steepest-ascent single-bit-flip walk from ``start``.

    Under ``strict`` the walk stops as soon as no neighbor strictly
    improves the payoff. Under ``accept-equal`` it may also step to an
    equal-payoff neighbor (lowest flipped-bit index first) provided that
    state was not visited before, which lets it walk off plateaus and
    guarantees termination.
    """
    if rule not in ("strict", "accept-equal"):
        raise ValueError(f"unknown rule {rule!r}")
    n = graph.n
    current = _as_int(start, n)
    if not 0 <= current < (1 << n):
        raise ValueError(f"start={current} out of range for n={n}")
    visited = {current}
    path = [current]
    payoffs = [payoff(graph, current)]
    while True:
        p_here = payoffs[-1]
        best_gain, best_state = 0.0, None
        equal_state = None
        for i in range(n):
            neighbor = current ^ (1 << (n - 1 - i))
            p = payoff(graph, neighbor)
            if p - p_here > best_gain:
                best_gain, best_state = p - p_here, neighbor
            elif p == p_here and equal_state is None and neighbor not in visited:
                equal_state = neighbor
        if best_state is not None:
            current = best_state
        elif rule == "accept-equal" and equal_state is not None:
            current = equal_state
        else:
            return GreedyResult(current, tuple(path), tuple(payoffs))
        visited.add(current)
        path.append(current)
        payoffs.append(payoff(graph, current))


def basin_counts(graph: WeightedGraph, rule: str = "accept-equal") -> dict[int, int]:
    """Endpoint -> number of starting assignments that terminate there."""
    counts: dict[int, int] = {}
    for s in range(1 << graph.n):
        end = greedy_search(graph, s, rule=rule).endpoint
        counts[end] = counts.get(end, 0) + 1
    return dict(sorted(counts.items()))
