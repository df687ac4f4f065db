"""Finite partial orders, chain and antichain decompositions, and the
desk-scale perfect-graph checks that sit behind them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import _bitmatch, core
from .errors import ResourceLimitError, ValidationError
from .graphs import Graph

PERFECT_CEILING = 10


class Poset:
    """A finite strict partial order.

    The constructor accepts any acyclic set of (smaller, larger) pairs,
    takes the transitive closure, and rejects inputs whose closure would
    relate an element to itself.  Hasse-diagram input therefore works
    directly.
    """

    __slots__ = ("elements", "less", "_index", "_below", "_above")

    def __init__(self, elements, pairs):
        elements = tuple(elements)
        index: dict = {}
        for pos, x in enumerate(elements):
            if x in index:
                raise ValidationError(f"duplicate element {x!r}", field="elements")
            index[x] = pos
        n = len(elements)
        above = [0] * n  # above[i]: mask of j with elements[i] < elements[j]
        for pair in pairs:
            a, b = pair
            if a not in index or b not in index:
                raise ValidationError(f"pair {pair!r} mentions an unknown element",
                                      field="less_than")
            above[index[a]] |= 1 << index[b]
        # Warshall-style closure on bitmasks.
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if above[i] & bit:
                    above[i] |= above[k]
        for i in range(n):
            if (above[i] >> i) & 1:
                raise ValidationError(
                    f"relation has a cycle through {elements[i]!r}", field="less_than"
                )
        below = [0] * n
        for i in range(n):
            for j in _bitmatch.bits_of(above[i]):
                below[j] |= 1 << i
        self.elements = elements
        self._index = index
        self._above = above
        self._below = below
        self.less = frozenset(
            (elements[i], elements[j])
            for i in range(n)
            for j in _bitmatch.bits_of(above[i])
        )

    @property
    def n(self) -> int:
        return len(self.elements)

    def lt(self, a, b) -> bool:
        return (self._above[self._index[a]] >> self._index[b]) & 1 == 1

    def comparable(self, a, b) -> bool:
        return self.lt(a, b) or self.lt(b, a)

    @classmethod
    def from_json(cls, obj: dict) -> "Poset":
        for key in ("elements", "less_than"):
            if not isinstance(obj, dict) or key not in obj:
                raise ValidationError(f"poset file needs '{key}'", field=key)
        return cls(obj["elements"], [tuple(p) for p in obj["less_than"]])


@dataclass(frozen=True)
class ChainPartition:
    """Disjoint totally ordered sequences covering every element."""

    chains: tuple

    def __len__(self):
        return len(self.chains)


@dataclass(frozen=True)
class AntichainPartition:
    """Disjoint pairwise-incomparable sets covering every element."""

    antichains: tuple

    def __len__(self):
        return len(self.antichains)


def dilworth(p: Poset) -> tuple[ChainPartition, tuple]:
    """Minimum chain partition with a maximum antichain of matching size.

    Built from a maximum matching on the split graph (one copy of the poset
    on each side, an edge for every strict relation); the antichain is the
    set of elements both of whose copies avoid the matching's vertex cover.
    """
    n = p.n
    match_row, match_col = _bitmatch.max_matching(p._above, n)
    free = [i for i in range(n) if match_row[i] == _bitmatch.UNMATCHED]
    rows, cols = _bitmatch.alternating_reachable(p._above, match_row, match_col, free)
    # Cover: matched left copies outside `rows`, right copies inside `cols`.
    antichain = tuple(
        p.elements[i]
        for i in range(n)
        if not (match_row[i] != _bitmatch.UNMATCHED and i not in rows)
        and i not in cols
    )
    successor = {i: c for i, c in enumerate(match_row) if c != _bitmatch.UNMATCHED}
    has_predecessor = set(successor.values())
    chains = []
    for i in range(n):
        if i in has_predecessor:
            continue
        chain = [p.elements[i]]
        j = i
        while j in successor:
            j = successor[j]
            chain.append(p.elements[j])
        chains.append(tuple(chain))
    return ChainPartition(tuple(chains)), antichain


def mirsky(p: Poset) -> tuple[AntichainPartition, tuple]:
    """Antichain levels by stripping maximal elements, plus a longest chain."""
    n = p.n
    remaining = (1 << n) - 1
    levels = []
    while remaining:
        level = 0
        for i in _bitmatch.bits_of(remaining):
            if not (p._above[i] & remaining):
                level |= 1 << i
        levels.append(tuple(p.elements[i] for i in _bitmatch.bits_of(level)))
        remaining &= ~level
    # height[i]: longest chain starting at i.  Anything above i has strictly
    # fewer elements above it, so increasing |above| is a valid DP order.
    height = [0] * n
    for i in sorted(range(n), key=lambda i: p._above[i].bit_count()):
        best = 0
        for j in _bitmatch.bits_of(p._above[i]):
            if height[j] > best:
                best = height[j]
        height[i] = 1 + best
    chain = []
    if n:
        current = max(range(n), key=lambda i: (height[i], -i))
        chain.append(p.elements[current])
        while height[current] > 1:
            current = next(
                j for j in _bitmatch.bits_of(p._above[current])
                if height[j] == height[current] - 1
            )
            chain.append(p.elements[current])
    return AntichainPartition(tuple(levels)), tuple(chain)


def hall_from_dilworth(family: core.SetFamily):
    """Read an SDR off a Dilworth decomposition, or report none exists.

    The poset puts each element below every set that contains it.  When the
    family has an SDR the minimum chain partition has exactly |ground|
    chains, each set sitting atop its representative; any empty set
    degenerates the construction and is reported as an immediate failure.
    """
    if any(not s for s in family.sets):
        return None
    tagged = [("elt", x) for x in family.ground] + [("set", i) for i in range(family.n)]
    pairs = []
    for i, members in enumerate(family.sets):
        for x in members:
            pairs.append((("elt", x), ("set", i)))
    p = Poset(tagged, pairs)
    partition, _ = dilworth(p)
    if len(partition) != len(family.ground):
        return None
    reps: dict = {}
    for chain in partition.chains:
        if len(chain) == 2:
            (_, x), (_, i) = chain
            reps[i] = x
    if len(reps) != family.n:
        return None
    return core.Sdr(tuple(reps[i] for i in range(family.n)))


def comparability_graph(p: Poset, complement: bool = False) -> Graph:
    """Graph joining comparable pairs (or incomparable ones)."""
    edges = []
    for a, b in combinations(p.elements, 2):
        if p.comparable(a, b) != complement:
            edges.append((a, b))
    return Graph(p.elements, edges)


def validate_chain_partition(p: Poset, partition: ChainPartition) -> tuple[bool, str | None]:
    seen: set = set()
    for chain in partition.chains:
        for a, b in zip(chain, chain[1:]):
            if not p.lt(a, b):
                return False, f"chain entries {a!r},{b!r} are out of order"
        for x in chain:
            if x in seen:
                return False, f"element {x!r} appears in two chains"
            seen.add(x)
    if seen != set(p.elements):
        return False, "chains do not cover every element"
    return True, None


def validate_antichain(p: Poset, antichain) -> tuple[bool, str | None]:
    antichain = tuple(antichain)
    if len(set(antichain)) != len(antichain):
        return False, "antichain repeats an element"
    for a, b in combinations(antichain, 2):
        if p.comparable(a, b):
            return False, f"elements {a!r},{b!r} are comparable"
    return True, None


def validate_antichain_partition(p: Poset, partition: AntichainPartition) -> tuple[bool, str | None]:
    seen: set = set()
    for level in partition.antichains:
        ok, reason = validate_antichain(p, level)
        if not ok:
            return False, reason
        for x in level:
            if x in seen:
                return False, f"element {x!r} appears in two levels"
            seen.add(x)
    if seen != set(p.elements):
        return False, "levels do not cover every element"
    return True, None


# ---------------------------------------------------------------------------
# Tiny-scale perfection checks.


def _clique_table(adj, n):
    size = 1 << n
    table = [0] * size
    for x in range(1, size):
        low = x & -x
        v = low.bit_length() - 1
        without = table[x ^ low]
        with_v = 1 + table[x & adj[v]]
        table[x] = with_v if with_v > without else without
    return table


def _chromatic_table(adj, n):
    size = 1 << n
    table = [0] * size
    for x in range(1, size):
        v = (x & -x).bit_length() - 1
        best = n + 1
        # Colour class of v: any independent subset of x containing v.
        stack = [(1 << v, x & ~adj[v] & ~(1 << v))]
        while stack:
            chosen, candidates = stack.pop()
            rest = table[x & ~chosen]
            if rest + 1 < best:
                best = rest + 1
            while candidates:
                low = candidates & -candidates
                candidates ^= low
                u = low.bit_length() - 1
                stack.append((chosen | low, candidates & ~adj[u]))
        table[x] = best
    return table


def is_perfect(g: Graph, *, ceiling: int = PERFECT_CEILING):
    """Exhaustive clique-number / chromatic-number comparison.

    Returns (True, None), or (False, witness vertices) for the smallest
    induced subgraph on which the two numbers differ.
    """
    n = len(g.vertices)
    if n > ceiling:
        raise ResourceLimitError(f"graph has {n} vertices, above the ceiling {ceiling}")
    adj = g.adjacency_masks()
    cliques = _clique_table(adj, n)
    chromatics = _chromatic_table(adj, n)
    bad = [x for x in range(1 << n) if cliques[x] != chromatics[x]]
    if not bad:
        return True, None
    witness = min(bad, key=lambda x: (x.bit_count(), x))
    return False, tuple(g.vertices[i] for i in _bitmatch.bits_of(witness))


def _is_cycle(adj, subset_bits):
    k = len(subset_bits)
    inside = 0
    for b in subset_bits:
        inside |= 1 << b
    for b in subset_bits:
        if (adj[b] & inside).bit_count() != 2:
            return False
    seen = {subset_bits[0]}
    stack = [subset_bits[0]]
    while stack:
        u = stack.pop()
        for v in _bitmatch.bits_of(adj[u] & inside):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == k


def berge_check(g: Graph, *, ceiling: int = PERFECT_CEILING) -> bool:
    """True when the graph has no induced odd hole and no odd antihole."""
    n = len(g.vertices)
    if n > ceiling:
        raise ResourceLimitError(f"graph has {n} vertices, above the ceiling {ceiling}")
    adj = g.adjacency_masks()
    full = (1 << n) - 1
    co_adj = [(~adj[i]) & full & ~(1 << i) for i in range(n)]
    for k in range(5, n + 1, 2):
        for subset in combinations(range(n), k):
            if _is_cycle(adj, subset) or _is_cycle(co_adj, subset):
                return False
    return True
