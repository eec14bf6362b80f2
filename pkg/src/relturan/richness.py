"""Rich-level analysis and the constructive staircase-embedding pipeline.

A level is alpha-rich when its edge count reaches an alpha fraction of the
full-cube capacity.  The extraction step finds a fundamental interval I, a
vertex x in the left half, and a subgraph of the right half whose every
edge has its larger endpoint adjacent to x, while retaining many rich
levels.  Iterating it (after stripping each vertex's top forward level)
embeds the staircase pattern H_k.

The literal proportion constants make extraction impossible at any
tractable dimension, so all stage thresholds live in a Thresholds object:
``Thresholds.paper(eps)`` carries the literal values, ``Thresholds.desk()``
a permissive preset for machine-scale runs.  Every postcondition is stated
relative to whichever thresholds actually ran.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import FundamentalInterval, BitString, HypercubeGraph, tau
from .patterns import EmbeddingWitness


@dataclass(frozen=True)
class RichnessCertificate:
    alpha: float
    levels: tuple[int, ...]  # the alpha-rich levels, ascending
    average: Fraction  # (1/d) sum_l e_l / tau_l

    @property
    def count(self) -> int:
        return len(self.levels)


def rich_levels(g: HypercubeGraph, alpha: float) -> RichnessCertificate:
    """Classify every level against the alpha threshold; exact counting."""
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must be in [0, 1]")
    counts = g.level_counts()
    levels = []
    acc = Fraction(0)
    for level in range(1, g.d + 1):
        cap = tau(level, g.d)
        acc += Fraction(counts[level], cap)
        if counts[level] >= alpha * cap:
            levels.append(level)
    return RichnessCertificate(alpha, tuple(levels), acc / g.d)


def subgraph_average_richness(level_counts: list[int], d: int, m: int) -> Fraction:
    """Average per-level density of a blocked-host subgraph.

    Normalises each level count by 2^(d-1) m^2, the nominal per-level edge
    count of the host, and averages over levels.
    """
    denom = (1 << (d - 1)) * m * m
    return sum(Fraction(level_counts[level], denom) for level in range(1, d + 1)) / d


@dataclass(frozen=True)
class StripStats:
    top_level: tuple[int, ...]  # per-vertex top forward level, 0 if none
    removed_per_level: tuple[int, ...]  # index 0 unused


def strip_top_forward(g: HypercubeGraph) -> tuple[HypercubeGraph, StripStats]:
    """Remove each vertex's forward edges at its own highest forward level.

    Removal decisions are computed on the input and applied simultaneously.
    The number removed at level l is at most (#vertices with top level l)
    times 2^(d-l), i.e. at most twice p_l tau_l; asserted on every run.
    """
    d, n = g.d, g.n
    top = [0] * n
    for x in range(n):
        for level in range(d, 0, -1):
            if g.adj[x] & g.forward_mask(x, level):
                top[x] = level
                break
    adj = list(g.adj)
    removed = [0] * (d + 1)
    for x in range(n):
        if top[x] == 0:
            continue
        victims = g.adj[x] & g.forward_mask(x, top[x])
        removed[top[x]] += bin(victims).count("1")
        adj[x] &= ~victims
        while victims:
            low = victims & -victims
            adj[low.bit_length() - 1] &= ~(1 << x)
            victims ^= low
    for level in range(1, d + 1):
        count = sum(1 for x in range(n) if top[x] == level)
        assert removed[level] <= count * (1 << (d - level))
    return HypercubeGraph(d, adj=adj), StripStats(tuple(top), tuple(removed))


@dataclass(frozen=True)
class Thresholds:
    """Stage thresholds for the interval-extraction pipeline.

    Values are the lower bounds each stage must meet; ``paper`` uses the
    literal constants as functions of eps, ``desk`` a permissive preset for
    dimensions a machine can hold.  All value thresholds must be positive so
    that selected vertices genuinely have backward edges.
    """

    rich_alpha: float  # threshold defining the working level set
    y1_value: float  # mean-f cutoff for the first vertex pool
    y1_prop: float  # required size of that pool, fraction of |V|
    f_value: float  # per-level f cutoff defining each vertex's level set
    lstar_prop: float  # required popularity of the pivot level among low halves
    y2_prop: float  # required density of the pool inside the chosen interval
    x_prop: float  # required adjacency fraction for the chosen left vertex
    final_prop: float  # popularity cutoff for the surviving level set

    def __post_init__(self) -> None:
        if self.f_value <= 0 or self.y1_value <= 0:
            raise ValueError("value thresholds must be positive")

    @classmethod
    def paper(cls, eps: float) -> "Thresholds":
        if eps <= 0:
            raise ValueError("eps must be positive")
        return cls(
            rich_alpha=eps,
            y1_value=eps / 3,
            y1_prop=eps / 6,
            f_value=eps / 6,
            lstar_prop=eps / 18,
            y2_prop=eps**2 / 108,
            x_prop=eps / 6,
            final_prop=eps / 24,
        )

    @classmethod
    def desk(cls) -> "Thresholds":
        tiny = 1e-12
        return cls(
            rich_alpha=tiny,
            y1_value=tiny,
            y1_prop=0.0,
            f_value=tiny,
            lstar_prop=0.0,
            y2_prop=0.0,
            x_prop=0.0,
            final_prop=0.0,
        )

@dataclass(frozen=True)
class StageFailure:
    stage: str  # name of the first stage whose threshold failed
    detail: str = ""


@dataclass(frozen=True)
class ExtractionTrace:
    """Every intermediate set of the pipeline, for audit."""

    working_levels: tuple[int, ...]
    y1: tuple[int, ...]
    pivot_level: int
    y2: tuple[int, ...]
    interval_index: int  # index of the chosen interval at the pivot level
    x: int
    y3: tuple[int, ...]
    surviving_levels: tuple[int, ...]


@dataclass(frozen=True)
class ExtractionResult:
    interval: FundamentalInterval  # the parent interval I, level pivot - 1
    x: int  # vertex in lhs(I), original coordinates
    subgraph: HypercubeGraph  # on {0,1}^(d - pivot), relabelled
    rhs_base: int  # original coordinate of the smallest rhs(I) member
    pivot_level: int
    certified_eta: float
    certified_rich_count: int
    trace: ExtractionTrace


def extract_rich_interval(
    g: HypercubeGraph, thresholds: Thresholds
) -> Union[ExtractionResult, StageFailure]:
    """Run the extraction pipeline; failure names the first failing stage.

    Stages: working level set -> Y1 (vertices with large mean backward
    density f) -> per-vertex level sets split into low/high halves -> pivot
    level maximising low-half membership -> interval with the densest Y2
    share -> left-half vertex x with most Y2 neighbours -> Y3 = its
    neighbours -> surviving levels popular among high halves -> relabelled
    subgraph of the right half.  Ties always break towards the smallest
    index so reruns are reproducible.
    """
    d, n = g.d, g.n
    counts = g.level_counts()
    working = [
        level
        for level in range(1, d + 1)
        if counts[level] >= thresholds.rich_alpha * tau(level, d)
    ]
    if len(working) < 2:
        return StageFailure("working-levels", f"only {len(working)} levels qualify")

    # f(level, y) = backward level-degree / 2^(d - level), exact via integers
    back = {
        level: [g.backward_degree(y, level) for y in range(n)] for level in working
    }

    def f(level: int, y: int) -> float:
        return back[level][y] / (1 << (d - level))

    y1 = [
        y
        for y in range(n)
        if sum(f(level, y) for level in working) / len(working) >= thresholds.y1_value
    ]
    if len(y1) < max(1, thresholds.y1_prop * n):
        return StageFailure("y1", f"|Y1| = {len(y1)}")

    level_sets = {
        y: [level for level in working if f(level, y) >= thresholds.f_value] for y in y1
    }
    low_half = {}
    high_half = {}
    for y, ls in level_sets.items():
        hi = (len(ls) + 1) // 2  # largest ceil(|L_y|/2) elements
        low_half[y] = ls[: len(ls) - hi]
        high_half[y] = ls[len(ls) - hi:]

    popularity = {
        level: sum(1 for y in y1 if level in low_half[y]) for level in working
    }
    pivot = max(working, key=lambda level: (popularity[level], -level))
    if popularity[pivot] < max(1, thresholds.lstar_prop * len(y1)):
        return StageFailure("pivot-level", f"best popularity {popularity[pivot]}")

    y2 = [y for y in y1 if pivot in low_half[y]]
    width = d - pivot
    interval_members: dict[int, list[int]] = {}
    for y in y2:
        interval_members.setdefault(y >> width, []).append(y)
    j_idx = max(interval_members, key=lambda i: (len(interval_members[i]), -i))
    inside = interval_members[j_idx]
    if len(inside) < max(1, thresholds.y2_prop * (1 << width)):
        return StageFailure("interval", f"|Y2 ∩ J| = {len(inside)}")
    # members of Y2 have positive backward degree at the pivot level, so the
    # chosen interval is the right half of its parent
    assert j_idx & 1 == 1
    parent = FundamentalInterval(d, BitString(pivot - 1, j_idx >> 1))
    lhs = parent.lhs()
    inside_mask = 0
    for y in inside:
        inside_mask |= 1 << y

    best_x, best_deg = -1, -1
    for x in range(lhs.lo, lhs.hi + 1):
        deg = bin(g.adj[x] & inside_mask).count("1")
        if deg > best_deg:
            best_x, best_deg = x, deg
    if best_deg < max(1, thresholds.x_prop * len(inside)):
        return StageFailure("x", f"best left-vertex degree {best_deg}")
    x = best_x
    y3 = [y for y in inside if g.has_edge(x, y)]
    y3_mask = 0
    for y in y3:
        y3_mask |= 1 << y

    popular_count = {
        level: sum(1 for y in y3 if level in high_half[y]) for level in working
    }
    surviving = [
        level
        for level in working
        if popular_count[level] >= max(1, thresholds.final_prop * len(y3))
    ]
    if len(surviving) < max(1, thresholds.final_prop * len(working)):
        return StageFailure("surviving-levels", f"{len(surviving)} levels survive")
    assert all(level > pivot for level in surviving)

    rhs = parent.rhs()
    base = rhs.lo
    sub_edges = []
    for y in y3:
        mask = g.adj[y] & ((1 << y) - 1) & (((1 << rhs.size) - 1) << base)
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            sub_edges.append((u - base, y - base))
            mask ^= low
    subgraph = HypercubeGraph(width, sub_edges) if width >= 1 else None
    if subgraph is None:
        return StageFailure("subgraph", "right half is a single vertex")

    # each counted vertex contributes an integer backward degree of at least
    # ceil(f_value * 2^(d - level)); the implied richness of the extracted
    # subgraph is the worst such guarantee over surviving levels (scaled a
    # hair down so float rounding cannot overshoot the integer counts)
    certified_eta = min(
        popular_count[level]
        * math.ceil(thresholds.f_value * (1 << (d - level)))
        / tau(level - pivot, width)
        for level in surviving
    )
    certified_eta = min(certified_eta, 1.0) * (1 - 1e-9)
    result = ExtractionResult(
        interval=parent,
        x=x,
        subgraph=subgraph,
        rhs_base=base,
        pivot_level=pivot,
        certified_eta=certified_eta,
        certified_rich_count=len(surviving),
        trace=ExtractionTrace(
            working_levels=tuple(working),
            y1=tuple(y1),
            pivot_level=pivot,
            y2=tuple(y2),
            interval_index=j_idx,
            x=x,
            y3=tuple(y3),
            surviving_levels=tuple(surviving),
        ),
    )
    _replay_postconditions(g, result)
    return result


def _replay_postconditions(g: HypercubeGraph, res: ExtractionResult) -> None:
    """Independent re-checks of the extraction guarantees."""
    sub = res.subgraph
    y3 = set(res.trace.y3)
    for u, v in sub.edges():
        assert v + res.rhs_base in y3, "larger endpoint not adjacent to x"
        assert g.has_edge(res.x, v + res.rhs_base)
    cert = rich_levels(sub, res.certified_eta)
    assert cert.count >= res.certified_rich_count, (
        f"recomputed rich count {cert.count} < certified {res.certified_rich_count}"
    )


def embed_hk_rich(
    g: HypercubeGraph, k: int, thresholds: Optional[Thresholds] = None
) -> Optional[EmbeddingWitness]:
    """Recursively embed the staircase H_k using interval extraction.

    Base case k=1 takes the lexicographically least edge.  Otherwise strip
    top forward levels, extract (I, x, subgraph), embed H_{k-1} in the
    subgraph, lift, and prepend x together with its retained top-level
    forward neighbour y, which precedes everything in the right half.
    Returns None as soon as any stage fails.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if thresholds is None:
        thresholds = Thresholds.desk()
    if k == 1:
        try:
            u, v = min(g.edges())
        except ValueError:
            return None
        return EmbeddingWitness((u, v))

    stripped, _ = strip_top_forward(g)
    res = extract_rich_interval(stripped, thresholds)
    if isinstance(res, StageFailure):
        return None
    inner = embed_hk_rich(res.subgraph, k - 1, thresholds)
    if inner is None:
        return None
    lifted = tuple(v + res.rhs_base for v in inner.map)

    x = res.x
    top = 0
    for level in range(g.d, 0, -1):
        if g.adj[x] & g.forward_mask(x, level):
            top = level
            break
    if top <= res.pivot_level:
        return None  # cannot happen when extraction succeeded; defensive
    mask = g.adj[x] & g.forward_mask(x, top)
    y = (mask & -mask).bit_length() - 1
    if not (x < y < lifted[0]):
        return None
    witness = EmbeddingWitness((x, y) + lifted)
    return witness
