"""Largest pattern-free subgraph of an ordered host, exact and heuristic.

The quantity of interest is the best edge fraction over spanning subgraphs
G' of G that avoid an ordered copy of the pattern F.  Three routes:

* ``rho_exhaustive``: pruned enumeration of all F-free edge subsets (small
  hosts, hard cap on e(G)); the reference oracle.
* ``rho_exact``: branch-and-bound over edges with the bound kept + remaining.
* ``rho_local_search``: seeded hill climbing, lower bounds only.

Plus the derandomized two-label constructor that keeps at least a quarter of
the edges of any host while avoiding every increasing 2-edge path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import OrderedGraph
from .patterns import contains_ordered, has_monotone_p3, monotone_p3

EXHAUSTIVE_EDGE_CAP = 20


@dataclass(frozen=True)
class DensityResult:
    best_edge_count: int
    total_edges: int
    certificate: tuple[tuple[int, int], ...]  # sorted edge list of the best subgraph
    exact: bool
    nodes_explored: int

    @property
    def ratio(self) -> Fraction:
        if self.total_edges == 0:
            return Fraction(1)  # nothing to delete
        return Fraction(self.best_edge_count, self.total_edges)

    def subgraph(self, host: OrderedGraph) -> OrderedGraph:
        return host.subgraph_edges(self.certificate)


def _check_pattern(pattern: OrderedGraph) -> None:
    if not pattern.edges:
        raise ValueError("pattern must have at least one edge")


def _free(pattern: OrderedGraph, host: OrderedGraph, edges: list[tuple[int, int]]) -> bool:
    return contains_ordered(pattern, OrderedGraph(host.n, edges)) is None


def rho_exhaustive(pattern: OrderedGraph, host: OrderedGraph) -> DensityResult:
    """Optimal pattern-free subgraph by enumerating F-free edge subsets.

    DFS over edges in canonical order, include branch first; a subset is
    extended only while it stays F-free, which skips every superset of an
    F-containing set.  The first optimum found is the lexicographically least
    certificate.
    """
    _check_pattern(pattern)
    edges = host.sorted_edges()
    if len(edges) > EXHAUSTIVE_EDGE_CAP:
        raise ValueError(
            f"host has {len(edges)} edges, exhaustive cap is {EXHAUSTIVE_EDGE_CAP}; "
            "use rho_exact"
        )
    n = host.n
    best: list[tuple[int, ...]] = []
    best_count = -1
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def dfs(i: int) -> None:
        nonlocal best_count, nodes
        nodes += 1
        if len(chosen) + (len(edges) - i) <= best_count:
            return
        if i == len(edges):
            if len(chosen) > best_count:
                best_count = len(chosen)
                best[:] = [tuple(chosen)]
            return
        e = edges[i]
        chosen.append(e)
        if _free(pattern, host, chosen):
            dfs(i + 1)
        chosen.pop()
        dfs(i + 1)

    dfs(0)
    cert = tuple(best[0]) if best else ()
    return DensityResult(best_count, len(edges), cert, True, nodes)


def _copies_through_edge(pattern: OrderedGraph, host: OrderedGraph, edge: tuple[int, int]) -> int:
    """Number of ordered copies of ``pattern`` in ``host`` that use ``edge``.

    Used only to order branching edges, so a plain backtracking count on the
    small hosts involved is fine.
    """
    k, n = pattern.n, host.n
    count = 0

    def extend(i: int, images: list[int], used_edge: bool) -> None:
        nonlocal count
        if i == k:
            count += used_edge
            return
        lo = images[-1] + 1 if images else 0
        for v in range(lo, n - (k - i - 1)):
            ok = True
            hit = used_edge
            for u in range(i):
                if (pattern.backward(i) >> u) & 1:
                    if not host.has_edge(images[u], v):
                        ok = False
                        break
                    if tuple(sorted((images[u], v))) == edge:
                        hit = True
            if ok:
                images.append(v)
                extend(i + 1, images, hit)
                images.pop()

    extend(0, [], False)
    return count


def rho_exact(
    pattern: OrderedGraph,
    host: OrderedGraph,
    node_budget: Optional[int] = None,
    warm_start: Optional[tuple[tuple[int, int], ...]] = None,
) -> DensityResult:
    """Branch-and-bound over include/exclude edge decisions.

    Edges are branched in descending order of the number of pattern copies
    through them (fail-first); the bound is kept + remaining.  The result is
    optimal unless the node budget runs out, in which case ``exact`` is
    False and the best subgraph found so far is returned.  Among optima, the
    lexicographically least edge set is returned.
    """
    _check_pattern(pattern)
    edges = host.sorted_edges()
    total = len(edges)
    weights = {e: _copies_through_edge(pattern, host, e) for e in edges}
    order = sorted(edges, key=lambda e: (-weights[e], e))

    best_count = -1
    best_cert: tuple[tuple[int, int], ...] = ()
    if warm_start is not None:
        ws = tuple(sorted(tuple(sorted(e)) for e in warm_start))
        if _free(pattern, host, list(ws)):
            best_count = len(ws)
            best_cert = ws
    nodes = 0
    exhausted = False
    chosen: list[tuple[int, int]] = []

    def dfs(i: int) -> None:
        nonlocal best_count, best_cert, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = True
            return
        if len(chosen) + (total - i) <= best_count:
            return
        if i == total:
            best_count = len(chosen)
            best_cert = tuple(sorted(chosen))
            return
        e = order[i]
        chosen.append(e)
        if _free(pattern, host, chosen):
            dfs(i + 1)
        chosen.pop()
        dfs(i + 1)

    dfs(0)
    exact = not exhausted
    if exact and best_count >= 0:
        best_cert = _lex_least_certificate(pattern, host, best_count)
    return DensityResult(best_count, total, best_cert, exact, nodes)


def _lex_least_certificate(
    pattern: OrderedGraph, host: OrderedGraph, target: int
) -> tuple[tuple[int, int], ...]:
    """First F-free subset of size ``target`` in canonical include-first DFS order.

    That DFS order coincides with lexicographic order on sorted edge tuples
    for sets of equal size, so the first hit is the least certificate.
    """
    edges = host.sorted_edges()
    chosen: list[tuple[int, int]] = []
    out: list[tuple[tuple[int, int], ...]] = []

    def dfs(i: int) -> bool:
        if len(chosen) == target:
            out.append(tuple(chosen))
            return True
        if len(chosen) + (len(edges) - i) < target:
            return False
        e = edges[i]
        chosen.append(e)
        if _free(pattern, host, chosen) and dfs(i + 1):
            return True
        chosen.pop()
        return dfs(i + 1)

    dfs(0)
    return out[0] if out else ()


def quarter_free_subgraph(host: OrderedGraph) -> OrderedGraph:
    """A subgraph with no increasing 2-edge path and at least ceil(e/4) edges.

    Each vertex gets a label SOURCE or SINK; kept edges go from a SOURCE to a
    larger SINK.  Labels are fixed greedily by conditional expectation: under
    uniform random labels each edge survives with probability 1/4, and every
    greedy choice keeps the conditional expectation from dropping, so the
    integer outcome is >= e/4.  No kept path u < v < w can exist because v
    would need to be both SINK and SOURCE.
    """
    n = host.n
    labels: dict[int, bool] = {}  # True = SOURCE

    def expected_kept_x4(partial: dict[int, bool]) -> int:
        # 4 * expected number of kept edges; per-endpoint factors are twice
        # the survival probability, i.e. in {0, 1, 2}, so this stays integral
        total = 0
        for u, v in host.edges:
            pu = (2 if partial[u] else 0) if u in partial else 1
            pv = (0 if partial[v] else 2) if v in partial else 1
            total += pu * pv
        return total

    for v in range(n):
        labels[v] = True
        as_source = expected_kept_x4(labels)
        labels[v] = False
        as_sink = expected_kept_x4(labels)
        labels[v] = as_source >= as_sink  # ties -> SOURCE, deterministic
    kept = [(u, v) for u, v in host.sorted_edges() if labels[u] and not labels[v]]
    return OrderedGraph(n, kept)


def rho_local_search(
    pattern: OrderedGraph,
    host: OrderedGraph,
    budget: int = 2000,
    seed: int = 0,
) -> DensityResult:
    """Seeded hill climbing over F-free edge subsets (lower bound only).

    Start from the quarter constructor when it is feasible (the pattern
    contains an increasing 2-edge path), else empty; then greedily add all
    addable edges, and for ``budget`` rounds try a random add with repair by
    cheapest deletion from the created copy, keeping the move only if it does
    not lose edges.
    """
    _check_pattern(pattern)
    rng = random.Random(seed)
    all_edges = host.sorted_edges()
    total = len(all_edges)

    current: set[tuple[int, int]] = set()
    if has_monotone_p3(pattern):
        current = set(quarter_free_subgraph(host).edges)
        if not _free(pattern, host, list(current)):
            current = set()

    def try_add(e: tuple[int, int]) -> bool:
        if e in current:
            return False
        current.add(e)
        if _free(pattern, host, list(current)):
            return True
        current.discard(e)
        return False

    for e in all_edges:
        try_add(e)

    best = set(current)
    nodes = 0
    for _ in range(budget):
        nodes += 1
        if len(current) == total:
            break
        missing = [e for e in all_edges if e not in current]
        if not missing:
            break
        e = rng.choice(missing)
        current.add(e)
        removed = []
        while True:
            witness = contains_ordered(pattern, OrderedGraph(host.n, list(current)))
            if witness is None:
                break
            # delete one edge of the found copy, cheapest = any edge other
            # than the fresh one (prefer the last in canonical order)
            copy_edges = sorted(
                tuple(sorted((witness.map[u], witness.map[v]))) for u, v in pattern.edges
            )
            victims = [c for c in copy_edges if c != e] or copy_edges
            victim = victims[-1]
            current.discard(victim)
            removed.append(victim)
        if len(removed) >= 1 and len(current) < len(best):
            # net loss: revert
            current.discard(e)
            current.update(removed)
        if len(current) > len(best):
            best = set(current)

    cert = tuple(sorted(best))
    return DensityResult(len(cert), total, cert, False, nodes)
