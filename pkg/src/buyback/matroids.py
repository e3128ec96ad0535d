"""Matroid independence oracles, bid instances, and offline optimization.

Oracles are immutable after construction and expose a uniform query
interface: algorithms only ever call :meth:`MatroidOracle.is_independent`,
never inspect internals.  Four kinds are supported: uniform, partition,
graphic, and explicit (a literal list of independent sets, for small ground
sets).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, Optional, Sequence


class MatroidOracle:
    """Base class for independence oracles over ground set {0, ..., n-1}."""

    kind: str = "abstract"

    def __init__(self, ground_size: int):
        if ground_size < 0:
            raise ValueError("ground_size must be nonnegative")
        self.ground_size = ground_size

    def is_independent(self, elements: Iterable[int]) -> bool:
        s = frozenset(elements)
        for e in s:
            if not (0 <= e < self.ground_size):
                raise IndexError(f"element {e} outside ground set of size {self.ground_size}")
        return self._independent(s)

    def _independent(self, s: FrozenSet[int]) -> bool:
        raise NotImplementedError

    def fast_encoding(self):
        """Kernel encoding (kind-code, params) or None if unsupported."""
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError


class UniformMatroid(MatroidOracle):
    """Independent iff the set has at most ``rank`` elements."""

    kind = "uniform"

    def __init__(self, rank: int, n: int):
        super().__init__(n)
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self.rank = rank

    def _independent(self, s):
        return len(s) <= self.rank

    def fast_encoding(self):
        return ("uniform", self.rank)

    def to_dict(self):
        return {"kind": "uniform", "rank": self.rank, "n": self.ground_size}


class PartitionMatroid(MatroidOracle):
    """Per-part capacities: element i belongs to part ``parts[i]``."""

    kind = "partition"

    def __init__(self, parts: Sequence[int], capacities: Sequence[int]):
        super().__init__(len(parts))
        parts = list(parts)
        capacities = list(capacities)
        for p in parts:
            if not (0 <= p < len(capacities)):
                raise ValueError(f"part id {p} has no capacity entry")
        if any(c < 0 for c in capacities):
            raise ValueError("capacities must be nonnegative")
        self.parts = parts
        self.capacities = capacities

    def _independent(self, s):
        counts = [0] * len(self.capacities)
        for e in s:
            p = self.parts[e]
            counts[p] += 1
            if counts[p] > self.capacities[p]:
                return False
        return True

    def fast_encoding(self):
        return ("partition", self.parts, self.capacities)

    def to_dict(self):
        return {"kind": "partition", "parts": list(self.parts),
                "capacities": list(self.capacities)}


class GraphicMatroid(MatroidOracle):
    """Element i is the edge ``edges[i]``; independent sets are forests.

    Cycle detection uses a union-find rebuilt per query; queries are small
    at desk scale, so simplicity wins over asymptotics.
    """

    kind = "graphic"

    def __init__(self, edges: Sequence[tuple]):
        super().__init__(len(edges))
        self.edges = [(int(a), int(b)) for a, b in edges]
        for a, b in self.edges:
            if a < 0 or b < 0:
                raise ValueError("vertex ids must be nonnegative")
        self.n_vertices = max((max(a, b) for a, b in self.edges), default=-1) + 1

    def _independent(self, s):
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in s:
            a, b = self.edges[e]
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def fast_encoding(self):
        return ("graphic", self.edges, self.n_vertices)

    def to_dict(self):
        return {"kind": "graphic", "edges": [list(e) for e in self.edges]}


class ExplicitMatroid(MatroidOracle):
    """Independence given as an explicit family of sets (small ground sets)."""

    kind = "explicit"

    def __init__(self, n: int, independent_sets: Iterable[Iterable[int]]):
        super().__init__(n)
        fam = {frozenset(s) for s in independent_sets}
        if frozenset() not in fam:
            raise ValueError("independence family must contain the empty set")
        self.independent_sets = frozenset(fam)

    def _independent(self, s):
        return s in self.independent_sets

    def to_dict(self):
        sets = sorted(sorted(s) for s in self.independent_sets)
        return {"kind": "explicit", "n": self.ground_size, "independent_sets": sets}


def validate_matroid_axioms(oracle: MatroidOracle) -> None:
    """Exhaustively check hereditary + exchange axioms (small oracles only).

    Raises ValueError on the first violated axiom.
    """
    n = oracle.ground_size
    if n > 16:
        raise ValueError("axiom validation is exhaustive; ground set too large")
    universe = range(n)
    indep = []
    for k in range(n + 1):
        for s in combinations(universe, k):
            if oracle.is_independent(s):
                indep.append(frozenset(s))
    fam = set(indep)
    if frozenset() not in fam:
        raise ValueError("empty set is not independent")
    for s in fam:
        for e in s:
            if s - {e} not in fam:
                raise ValueError(f"hereditary axiom fails at {sorted(s)} minus {e}")
    for s in fam:
        for t in fam:
            if len(s) < len(t):
                if not any(s | {x} in fam for x in t - s):
                    raise ValueError(f"exchange axiom fails for {sorted(s)}, {sorted(t)}")


def make_oracle(spec: dict) -> MatroidOracle:
    """Build an oracle from its JSON dict form (see instance file format)."""
    try:
        kind = spec["kind"]
    except (TypeError, KeyError):
        raise ValueError("matroid spec must be an object with a 'kind' field")
    if kind == "uniform":
        return UniformMatroid(rank=int(spec["rank"]), n=int(spec["n"]))
    if kind == "partition":
        return PartitionMatroid(parts=spec["parts"], capacities=spec["capacities"])
    if kind == "graphic":
        return GraphicMatroid(edges=[tuple(e) for e in spec["edges"]])
    if kind == "explicit":
        return ExplicitMatroid(n=int(spec["n"]),
                               independent_sets=spec["independent_sets"])
    raise ValueError(f"unknown matroid kind: {kind!r}")


@dataclass(frozen=True)
class Instance:
    """Arrival-ordered bid values paired with the matroid oracle."""

    values: tuple
    oracle: MatroidOracle

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if any(not (v > 0.0) for v in self.values):
            raise ValueError("all bid values must be strictly positive")
        if self.oracle.ground_size != len(self.values):
            raise ValueError("oracle ground set size must equal number of values")

    @property
    def n(self) -> int:
        return len(self.values)

    def prefix(self, p: int) -> "Instance":
        """Restriction to the first p arrivals (oracle restricted likewise)."""
        if not (0 < p <= self.n):
            raise ValueError("prefix length out of range")
        return Instance(self.values[:p], _restrict(self.oracle, p))

    def to_dict(self) -> dict:
        return {"matroid": self.oracle.to_dict(), "values": list(self.values)}


def _restrict(oracle: MatroidOracle, p: int) -> MatroidOracle:
    if isinstance(oracle, UniformMatroid):
        return UniformMatroid(oracle.rank, p)
    if isinstance(oracle, PartitionMatroid):
        return PartitionMatroid(oracle.parts[:p], oracle.capacities)
    if isinstance(oracle, GraphicMatroid):
        return GraphicMatroid(oracle.edges[:p])
    if isinstance(oracle, ExplicitMatroid):
        fam = [s for s in oracle.independent_sets if all(e < p for e in s)]
        return ExplicitMatroid(p, fam)
    raise TypeError(f"cannot restrict oracle of type {type(oracle)!r}")


def load_instance(path: str) -> Instance:
    with open(path, "r") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "matroid" not in doc or "values" not in doc:
        raise ValueError("instance file must contain 'matroid' and 'values'")
    return Instance(values=doc["values"], oracle=make_oracle(doc["matroid"]))


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(instance.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def max_weight_basis(instance: Instance):
    """Offline optimum: greedy maximum-weight independent set.

    Returns (element set, total value).  Ties broken toward smaller arrival
    index, so the result is deterministic.
    """
    order = sorted(range(instance.n), key=lambda i: (-instance.values[i], i))
    chosen = set()
    for i in order:
        if instance.oracle.is_independent(chosen | {i}):
            chosen.add(i)
    total = math.fsum(instance.values[i] for i in chosen)
    return chosen, total


def find_swap_candidate(oracle: MatroidOracle, held: Iterable[int],
                        incoming: int, values: Sequence[float]) -> Optional[int]:
    """Cheapest feasible swap: j in held minimizing (value, arrival index)
    such that held + {incoming} - {j} is independent.

    Returns None when no such j exists (possible only if {incoming} itself is
    dependent, e.g. a self-loop edge in a graphic matroid).
    """
    held = set(held)
    best = None
    for j in sorted(held):
        if oracle.is_independent((held | {incoming}) - {j}):
            if best is None or values[j] < values[best]:
                best = j
    return best
