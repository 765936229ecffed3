"""Half-edge pairing: the random multigraph with prescribed degrees.

Vertex i carries d(i) labeled half-edges (i, 1) .. (i, d(i)).  A matching
pairs some of them; interpreting matched pairs as edges yields a multigraph.
A uniformly random maximal matching (one half-edge left over when the total
degree is odd) induces the prescribed-degree random graph.

For a fixed bipartition (A, B) of the vertices, matchings are stratified by
their pair-type counts (alpha, beta, gamma): alpha edges inside A, beta
inside B, gamma across.  Such a class is non-empty exactly when
2*alpha + gamma <= d(A) and 2*beta + gamma <= d(B), and it can be sampled
uniformly by sequential random pairings.  Enumeration at small total degree
provides exact oracles for all of this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .degree import as_degrees
from .graphs import Multigraph

ENUMERATION_BUDGET = 12  # max total degree for exhaustive matching lists
DEFAULT_MAX_TRIES = 10_000


class RejectionLimitError(RuntimeError):
    """Raised when rejection sampling for a simple graph gives up."""

    def __init__(self, attempts: int):
        super().__init__(f"no simple graph found in {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class HalfEdgeSystem:
    """Vertices 1..n with d(i) labeled half-edges each."""

    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if any(d < 0 for d in degrees):
            raise ValueError("degrees must be non-negative")
        object.__setattr__(self, "degrees", degrees)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def half_edges(self) -> list:
        return [(i + 1, k + 1) for i, d in enumerate(self.degrees) for k in range(d)]

    def contains(self, h) -> bool:
        i, k = h
        return 1 <= i <= self.n and 1 <= k <= self.degrees[i - 1]

    def restrict(self, vertices) -> "HalfEdgeSystem":
        """Subsystem on the given vertices, relabeled 1..|vertices| ascending."""
        return HalfEdgeSystem(tuple(self.degrees[i - 1] for i in sorted(vertices)))


def _pair(h1, h2) -> tuple:
    return (h1, h2) if h1 <= h2 else (h2, h1)


@dataclass(frozen=True)
class Matching:
    """Set of pairwise-disjoint half-edge pairs."""

    pairs: frozenset

    @classmethod
    def of(cls, pairs: Iterable) -> "Matching":
        normalized = set()
        seen = set()
        for p in pairs:
            h1, h2 = tuple(p)
            if h1 == h2:
                raise ValueError(f"half-edge {h1} paired with itself")
            if h1 in seen or h2 in seen:
                raise ValueError("half-edge appears in two pairs")
            seen.add(h1)
            seen.add(h2)
            normalized.add(_pair(tuple(h1), tuple(h2)))
        return cls(frozenset(normalized))

    @classmethod
    def empty(cls) -> "Matching":
        return cls(frozenset())

    @property
    def size(self) -> int:
        return len(self.pairs)

    def matched_half_edges(self) -> set:
        return {h for p in self.pairs for h in p}

    def unmatched_counts(self, sys: HalfEdgeSystem) -> tuple:
        """Free half-edges per vertex, c(i) = d(i) - matched(i)."""
        counts = list(sys.degrees)
        for p in self.pairs:
            for i, _ in p:
                counts[i - 1] -= 1
        if any(c < 0 for c in counts):
            raise ValueError("matching uses more half-edges than the system has")
        return tuple(counts)

    def add(self, h1, h2) -> "Matching":
        return Matching(self.pairs | {_pair(h1, h2)})


@dataclass(frozen=True)
class Bipartition:
    """Disjoint vertex sets A and B covering the system's vertices."""

    a: frozenset
    b: frozenset

    def __post_init__(self):
        a = frozenset(int(v) for v in self.a)
        b = frozenset(int(v) for v in self.b)
        if a & b:
            raise ValueError("sides must be disjoint")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, n: int, side_a: Iterable) -> "Bipartition":
        a = frozenset(int(v) for v in side_a)
        return cls(a, frozenset(range(1, n + 1)) - a)

    def check_covers(self, sys: HalfEdgeSystem):
        if self.a | self.b != frozenset(range(1, sys.n + 1)):
            raise ValueError("bipartition does not cover the vertex set")

    def degree_a(self, sys: HalfEdgeSystem) -> int:
        return sum(sys.degrees[i - 1] for i in self.a)

    def degree_b(self, sys: HalfEdgeSystem) -> int:
        return sum(sys.degrees[i - 1] for i in self.b)

    def side_of(self, vertex: int) -> str:
        return "A" if vertex in self.a else "B"


class PairingCounts(NamedTuple):
    """Pair-type counts (alpha inside A, beta inside B, gamma across)."""

    alpha: int
    beta: int
    gamma: int

    def feasible(self, sys: HalfEdgeSystem, bp: Bipartition) -> bool:
        return (2 * self.alpha + self.gamma <= bp.degree_a(sys)
                and 2 * self.beta + self.gamma <= bp.degree_b(sys))


def pair_type(pair, bp: Bipartition) -> str:
    """'A', 'B', or 'X' according to the endpoints' sides."""
    (i, _), (j, _) = pair
    si, sj = bp.side_of(i), bp.side_of(j)
    if si == sj:
        return si
    return "X"


def counts_of_matching(m: Matching, bp: Bipartition) -> PairingCounts:
    alpha = beta = gamma = 0
    for p in m.pairs:
        t = pair_type(p, bp)
        if t == "A":
            alpha += 1
        elif t == "B":
            beta += 1
        else:
            gamma += 1
    return PairingCounts(alpha, beta, gamma)


def graph_of_matching(sys: HalfEdgeSystem, m: Matching) -> Multigraph:
    """Multigraph induced by a matching: matched half-edges become edges."""
    for p in m.pairs:
        for h in p:
            if not sys.contains(h):
                raise ValueError(f"half-edge {h} outside the system")
    m.unmatched_counts(sys)  # validates multiplicity
    return Multigraph(sys.n, tuple((p[0][0], p[1][0]) for p in m.pairs))


# ---------------------------------------------------------------------------
# samplers


def sample_uniform_matching(sys: HalfEdgeSystem, rng: np.random.Generator) -> Matching:
    """Uniform maximal matching: shuffle all half-edges, pair consecutively.

    When the total degree is odd the last half-edge of the shuffle stays
    unmatched.
    """
    hes = sys.half_edges()
    order = rng.permutation(len(hes))
    pairs = [(hes[order[2 * t]], hes[order[2 * t + 1]])
             for t in range(len(hes) // 2)]
    return Matching.of(pairs)


def sample_uniform_graph(d, rng: np.random.Generator) -> Multigraph:
    """Prescribed-degree random multigraph from a uniform maximal matching."""
    degrees = as_degrees(d)
    stubs = np.repeat(np.arange(1, len(degrees) + 1), degrees)
    rng.shuffle(stubs)
    m = len(stubs) // 2
    edges = tuple((int(stubs[2 * t]), int(stubs[2 * t + 1])) for t in range(m))
    return Multigraph(len(degrees), edges)


def sample_in_class(sys: HalfEdgeSystem, bp: Bipartition, counts: PairingCounts,
                    rng: np.random.Generator) -> Matching:
    """Uniform matching with the given pair-type counts.

    Builds up from the empty matching by alpha random A-pairings, then beta
    B-pairings, then gamma cross-pairings; each step draws a uniform pair of
    distinct free half-edges of the required sides.  Any fixed step order
    yields the same uniform law.
    """
    bp.check_covers(sys)
    if not counts.feasible(sys, bp):
        raise ValueError(f"infeasible pairing counts {tuple(counts)}: "
                         f"need 2*alpha+gamma <= d(A) and 2*beta+gamma <= d(B)")
    free_a = [h for h in sys.half_edges() if bp.side_of(h[0]) == "A"]
    free_b = [h for h in sys.half_edges() if bp.side_of(h[0]) == "B"]
    pairs = []

    def draw_within(pool):
        i, j = rng.choice(len(pool), size=2, replace=False)
        i, j = (int(i), int(j)) if i > j else (int(j), int(i))
        first = pool.pop(i)
        second = pool.pop(j)
        pairs.append((first, second))

    for _ in range(counts.alpha):
        draw_within(free_a)
    for _ in range(counts.beta):
        draw_within(free_b)
    for _ in range(counts.gamma):
        i = int(rng.integers(len(free_a)))
        j = int(rng.integers(len(free_b)))
        pairs.append((free_a.pop(i), free_b.pop(j)))
    return Matching.of(pairs)


def sample_simple(d, rng: np.random.Generator,
                  max_tries: int = DEFAULT_MAX_TRIES) -> Multigraph:
    """Rejection-sample prescribed-degree graphs until one is simple.

    Conditioning on simplicity makes the output uniform over simple graphs
    with the given degrees.  Exhausting ``max_tries`` raises
    :class:`RejectionLimitError`; that signals a degree sequence whose
    simplicity probability is tiny or zero.
    """
    if max_tries < 1:
        raise ValueError("max_tries must be >= 1")
    degrees = as_degrees(d)
    for _ in range(max_tries):
        g = sample_uniform_graph(degrees, rng)
        if _is_simple(g):
            return g
    raise RejectionLimitError(max_tries)


def _is_simple(g: Multigraph) -> bool:
    seen = set()
    for i, j in g.edges:
        if i == j or (i, j) in seen:
            return False
        seen.add((i, j))
    return True


# ---------------------------------------------------------------------------
# exhaustive enumeration (small systems only)


def _check_budget(sys: HalfEdgeSystem):
    if sys.total > ENUMERATION_BUDGET:
        raise ValueError(
            f"enumeration budget exceeded: total degree {sys.total} > {ENUMERATION_BUDGET}")


def enumerate_matchings(sys: HalfEdgeSystem) -> list:
    """All partial matchings of the half-edge set, each exactly once.

    Each recursion level pairs the half-edge at index ``start`` or leaves it
    behind by advancing past it, so no matching is generated twice.
    """
    _check_budget(sys)
    hes = sys.half_edges()
    out = []

    def walk(start: int, free: list, pairs: tuple):
        out.append(Matching(frozenset(pairs)))
        for i in range(start, len(free)):
            for j in range(i + 1, len(free)):
                rest = free[:i] + free[i + 1:j] + free[j + 1:]
                walk(i, rest, pairs + (_pair(free[i], free[j]),))

    walk(0, hes, ())
    return out


def enumerate_class(sys: HalfEdgeSystem, bp: Bipartition,
                    counts: PairingCounts) -> list:
    """All matchings with the given pair-type counts, duplicate-free.

    Infeasible counts yield the empty list.  The recursion always decides
    the smallest undecided half-edge first (leave it free or pair it with a
    later one), so each matching is produced exactly once.
    """
    _check_budget(sys)
    bp.check_covers(sys)
    if not counts.feasible(sys, bp):
        return []
    hes = sys.half_edges()
    sides = [bp.side_of(h[0]) for h in hes]
    out = []

    def walk(free: list, need_a: int, need_b: int, need_x: int, pairs: tuple):
        avail_a = sum(1 for k in free if sides[k] == "A")
        avail_b = len(free) - avail_a
        if 2 * need_a + need_x > avail_a or 2 * need_b + need_x > avail_b:
            return
        if need_a == need_b == need_x == 0:
            out.append(Matching(frozenset(pairs)))
            return
        k = free[0]
        rest = free[1:]
        # branch 1: half-edge k stays unmatched
        walk(rest, need_a, need_b, need_x, pairs)
        # branch 2: pair k with a later free half-edge of a still-needed type
        for pos, l in enumerate(rest):
            t = sides[k] if sides[k] == sides[l] else "X"
            if t == "A" and need_a > 0:
                walk(rest[:pos] + rest[pos + 1:], need_a - 1, need_b, need_x,
                     pairs + (_pair(hes[k], hes[l]),))
            elif t == "B" and need_b > 0:
                walk(rest[:pos] + rest[pos + 1:], need_a, need_b - 1, need_x,
                     pairs + (_pair(hes[k], hes[l]),))
            elif t == "X" and need_x > 0:
                walk(rest[:pos] + rest[pos + 1:], need_a, need_b, need_x - 1,
                     pairs + (_pair(hes[k], hes[l]),))

    walk(list(range(len(hes))), counts.alpha, counts.beta, counts.gamma, ())
    return out


def enumerate_maximal_matchings(sys: HalfEdgeSystem) -> list:
    """All maximal matchings: perfect for even total degree, one half-edge
    left over for odd."""
    _check_budget(sys)
    hes = sys.half_edges()
    skips_allowed = sys.total % 2
    out = []

    def walk(free: list, skips: int, pairs: tuple):
        if not free:
            out.append(Matching(frozenset(pairs)))
            return
        k = free[0]
        rest = free[1:]
        if skips > 0:
            walk(rest, skips - 1, pairs)
        for pos, l in enumerate(rest):
            walk(rest[:pos] + rest[pos + 1:], skips,
                 pairs + (_pair(hes[k], hes[l]),))

    walk(list(range(len(hes))), skips_allowed, ())
    return out
