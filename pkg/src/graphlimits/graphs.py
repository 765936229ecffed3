"""Multigraphs and the parameter suite certified by this package.

Every parameter here is additive over disjoint unions, changes by at most
``kappa`` when one edge is added, and has a conditionally negative
semidefinite matrix of single-edge increments.  Loop conventions are chosen
so those three properties hold on multigraphs: a loop excludes its vertex
from independent sets, never crosses a cut, contributes J(s, s) to spin
weights, and is neutral for connectivity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

BRANCH_BOUND_LIMIT = 40     # independence number, general graphs
BRUTE_FORCE_LIMIT = 20      # subset-enumeration oracle and mis_core
MAX_CUT_LIMIT = 24          # bipartition enumeration
STATE_BUDGET = 1 << 24      # weighted spin states per partition-function call
_SYMMETRY_TOL = 1e-12


# ---------------------------------------------------------------------------
# multigraph


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices 1..n; loops and parallel edges allowed.

    Edges are stored as a sorted tuple of (i, j) pairs with i <= j, so two
    graphs compare equal exactly when their edge multisets agree.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = []
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i}, {j}) outside 1..{self.n}")
            normalized.append((i, j) if i <= j else (j, i))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple:
        """Vertex degrees; a loop contributes 2 to its endpoint."""
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
        return tuple(deg)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def add_edge(self, i: int, j: int) -> "Multigraph":
        return Multigraph(self.n, self.edges + ((i, j),))

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shifted = tuple((i + self.n, j + self.n) for i, j in other.edges)
        return Multigraph(self.n + other.n, self.edges + shifted)

    def relabeled(self, perm) -> "Multigraph":
        """Apply a permutation given as a sequence: vertex i -> perm[i-1]."""
        return Multigraph(self.n, tuple((perm[i - 1], perm[j - 1]) for i, j in self.edges))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.num_edges}"]
        lines.extend(f"{i} {j}" for i, j in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("graph text must start with 'n m'")
        n, m = int(tokens[0]), int(tokens[1])
        if len(tokens) != 2 + 2 * m:
            raise ValueError(f"expected {m} edges, found {(len(tokens) - 2) // 2}")
        pairs = [(int(tokens[2 + 2 * k]), int(tokens[3 + 2 * k])) for k in range(m)]
        return cls(n, tuple(pairs))


def random_multigraph(rng: np.random.Generator, max_vertices: int,
                      max_edges: int) -> Multigraph:
    """Uniform vertex count in 1..max_vertices, then that many random endpoint
    pairs (loops and duplicates allowed)."""
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(0, max_edges + 1))
    endpoints = rng.integers(1, n + 1, size=(m, 2))
    return Multigraph(n, tuple((int(a), int(b)) for a, b in endpoints))


def _simple_adjacency(g: Multigraph):
    """Bitmask adjacency (0-based) with parallels collapsed; loop mask aside."""
    adj = [0] * g.n
    loops = 0
    for i, j in g.edges:
        a, b = i - 1, j - 1
        if a == b:
            loops |= 1 << a
        else:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return adj, loops


def _components(g: Multigraph):
    """Connected components as (vertex count, edge count with multiplicity)."""
    neighbors = [[] for _ in range(g.n)]
    for i, j in g.edges:
        if i != j:
            neighbors[i - 1].append(j - 1)
            neighbors[j - 1].append(i - 1)
    seen = [False] * g.n
    comp_of = [0] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for u in neighbors[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        idx = len(comps)
        for v in members:
            comp_of[v] = idx
        comps.append([len(members), 0])
    for i, j in g.edges:
        comps[comp_of[i - 1]][1] += 1
    return [(v, e) for v, e in comps]


# ---------------------------------------------------------------------------
# integer-valued parameters


def num_components(g: Multigraph) -> int:
    """Number of connected components; isolated vertices count, loops and
    parallel edges are connectivity-neutral."""
    return len(_components(g))


def neg_num_components(g: Multigraph) -> int:
    return -num_components(g)


def _independence_degree_two(g: Multigraph) -> int:
    # Degree <= 2 graphs split into isolated vertices, paths, and cycles
    # (loops are 1-cycles, double edges 2-cycles).
    total = 0
    for v, e in _components(g):
        if e == v - 1:          # path, includes isolated vertex
            total += (v + 1) // 2
        elif e == v:            # cycle; a loop vertex contributes 0
            total += v // 2
        else:                   # unreachable under the degree bound
            raise AssertionError("degree-2 component with unexpected edge count")
    return total


def _max_cut_degree_two(g: Multigraph) -> int:
    total = 0
    for v, e in _components(g):
        if e == v - 1:          # path: bipartite, every edge crosses
            total += e
        elif e == v:            # cycle: all but one edge when odd
            total += e if e % 2 == 0 else e - 1
        else:
            raise AssertionError("degree-2 component with unexpected edge count")
    return total


def _branch_bound_alpha(adj, candidates: int) -> int:
    best = 0

    def rec(mask: int, size: int):
        nonlocal best
        if size > best:
            best = size
        if size + mask.bit_count() <= best:
            return
        # pivot on the highest-degree remaining vertex
        m = mask
        pivot, pivot_deg = -1, -1
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (adj[v] & mask).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        if pivot_deg == 0:
            best = max(best, size + mask.bit_count())
            return
        rec(mask & ~(adj[pivot] | (1 << pivot)), size + 1)
        rec(mask ^ (1 << pivot), size)

    rec(candidates, 0)
    return best


def independence_number(g: Multigraph) -> int:
    """Size of the largest vertex set spanning no edge.

    Vertices with loops are excluded; parallel edges act as single edges.
    Degree <= 2 graphs are evaluated in closed form at any size; otherwise a
    branch-and-bound search runs up to 40 vertices.
    """
    if g.n == 0:
        return 0
    if g.max_degree() <= 2:
        return _independence_degree_two(g)
    if g.n > BRANCH_BOUND_LIMIT:
        raise ValueError(
            f"instance too large for exact solver: n={g.n} > {BRANCH_BOUND_LIMIT}")
    adj, loops = _simple_adjacency(g)
    candidates = ((1 << g.n) - 1) & ~loops
    return _branch_bound_alpha(adj, candidates)


def _independent_masks(g: Multigraph):
    """Boolean table over all vertex subsets: is the subset independent?"""
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"instance too large for exact solver: n={g.n} > {BRUTE_FORCE_LIMIT}")
    adj, loops = _simple_adjacency(g)
    size = 1 << g.n
    ok = bytearray(size)
    ok[0] = 1
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        ok[mask] = 1 if (ok[rest] and not (adj[v] & rest) and not (loops & low)) else 0
    return ok


def independence_number_brute(g: Multigraph) -> int:
    """Subset-enumeration oracle for the independence number (n <= 20)."""
    if g.n == 0:
        return 0
    ok = _independent_masks(g)
    return max(mask.bit_count() for mask in range(len(ok)) if ok[mask])


def mis_core(g: Multigraph) -> frozenset:
    """Vertices belonging to every maximum independent set (n <= 20)."""
    if g.n == 0:
        return frozenset()
    ok = _independent_masks(g)
    alpha = max(mask.bit_count() for mask in range(len(ok)) if ok[mask])
    core = (1 << g.n) - 1
    for mask in range(len(ok)):
        if ok[mask] and mask.bit_count() == alpha:
            core &= mask
    return frozenset(v + 1 for v in range(g.n) if core >> v & 1)


def max_cut(g: Multigraph) -> int:
    """Maximum number of edges crossing a bipartition.

    Parallel edges count with multiplicity, loops never cross.  Degree <= 2
    graphs use per-component closed forms; otherwise all bipartitions with
    vertex 1 pinned are enumerated (n <= 24).
    """
    if g.n == 0:
        return 0
    if g.max_degree() <= 2:
        return _max_cut_degree_two(g)
    if g.n > MAX_CUT_LIMIT:
        raise ValueError(
            f"instance too large for exact solver: n={g.n} > {MAX_CUT_LIMIT}")
    weights = {}
    for i, j in g.edges:
        if i != j:
            weights[(i - 1, j - 1)] = weights.get((i - 1, j - 1), 0) + 1
    nbrs = [[] for _ in range(g.n)]
    for (a, b), w in weights.items():
        nbrs[a].append((b, w))
        nbrs[b].append((a, w))
    side = [0] * g.n
    cut = 0
    best = 0
    for code in range(1, 1 << (g.n - 1)):
        v = (code & -code).bit_length()  # Gray-code flip, vertex 0 stays put
        side[v] ^= 1
        for u, w in nbrs[v]:
            cut += w if side[u] != side[v] else -w
        if cut > best:
            best = cut
    return best


# ---------------------------------------------------------------------------
# spin models and log-partition functions


@dataclass(frozen=True)
class SpinModel:
    """q spin states with positive vertex weights h and a symmetric positive
    interaction matrix J."""

    q: int
    h: tuple
    J: tuple

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("need at least one spin state")
        h = tuple(float(x) for x in self.h)
        J = tuple(tuple(float(x) for x in row) for row in self.J)
        if len(h) != self.q or any(x <= 0 for x in h):
            raise ValueError("h must list q positive weights")
        if len(J) != self.q or any(len(row) != self.q for row in J):
            raise ValueError("J must be q x q")
        if any(x <= 0 for row in J for x in row):
            raise ValueError("J entries must be positive")
        if any(abs(J[s][t] - J[t][s]) > _SYMMETRY_TOL for s in range(self.q) for t in range(self.q)):
            raise ValueError("J must be symmetric")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)

    def log_interaction_bound(self) -> float:
        return max(abs(math.log(x)) for row in self.J for x in row)


def ising_model(beta: float) -> SpinModel:
    """Two-state model with J(s, t) = exp(-beta * s * t), beta >= 0."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    lo, hi = math.exp(-beta), math.exp(beta)
    return SpinModel(2, (1.0, 1.0), ((lo, hi), (hi, lo)))


def potts_model(q: int, beta: float) -> SpinModel:
    """q-state model rewarding disagreement: J = 1 off-diagonal, exp(-beta)
    on the diagonal."""
    if q < 2:
        raise ValueError("q must be >= 2")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    diag = math.exp(-beta)
    J = tuple(tuple(diag if s == t else 1.0 for t in range(q)) for s in range(q))
    return SpinModel(q, (1.0,) * q, J)


_CHUNK = 1 << 16


def log_partition(g: Multigraph, model: SpinModel) -> float:
    """log of the total spin-configuration weight on g.

    Each configuration weighs prod_i h(s_i) * prod_{ij in E} J(s_i, s_j),
    edges taken with multiplicity and loops contributing J(s_i, s_i).  The
    sum is accumulated in log space with a max shift.
    """
    n = g.n
    if model.q ** n > STATE_BUDGET:
        raise ValueError(
            f"enumeration budget exceeded: {model.q}^{n} states > {STATE_BUDGET}")
    if n == 0:
        return 0.0
    log_h = np.log(np.array(model.h))
    log_J = np.log(np.array(model.J))
    edges0 = [(i - 1, j - 1) for i, j in g.edges]
    powers = model.q ** np.arange(n, dtype=np.int64)
    total_states = model.q ** n
    shifts = []
    sums = []
    for lo in range(0, total_states, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total_states), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % model.q
        logw = log_h[digits].sum(axis=1)
        for a, b in edges0:
            logw += log_J[digits[:, a], digits[:, b]]
        m = float(logw.max())
        shifts.append(m)
        sums.append(float(np.exp(logw - m).sum()))
    top = max(shifts)
    return top + math.log(sum(s * math.exp(m - top) for m, s in zip(shifts, sums)))


# ---------------------------------------------------------------------------
# graph parameters


@dataclass(frozen=True, eq=False)
class GraphParameter:
    """Named isomorphism-invariant evaluator with a declared one-edge bound.

    ``kappa`` is a valid Lipschitz constant for single-edge additions, not
    necessarily the least one.
    """

    name: str
    kappa: float
    evaluate: Callable[[Multigraph], float]

    def __call__(self, g: Multigraph):
        return self.evaluate(g)


INDEPENDENCE = GraphParameter("independence", 1.0, independence_number)
MAX_CUT = GraphParameter("maxcut", 1.0, max_cut)
NEG_COMPONENTS = GraphParameter("neg_components", 1.0, neg_num_components)
# Deliberately outside the class: additive and Lipschitz but not concave.
POS_COMPONENTS = GraphParameter("pos_components", 1.0, num_components)


def spin_parameter(model: SpinModel, name: str) -> GraphParameter:
    return GraphParameter(name, model.log_interaction_bound(),
                          partial(log_partition, model=model))


def ising_parameter(beta: float) -> GraphParameter:
    return spin_parameter(ising_model(beta), f"ising(beta={beta:g})")


def potts_parameter(q: int, beta: float) -> GraphParameter:
    return spin_parameter(potts_model(q, beta), f"potts(q={q},beta={beta:g})")


def parameter_from_name(name: str, beta: float | None = None,
                        q: int | None = None) -> GraphParameter:
    """Resolve a CLI-style parameter name."""
    key = name.replace("-", "_").lower()
    if key == "independence":
        return INDEPENDENCE
    if key in ("maxcut", "max_cut"):
        return MAX_CUT
    if key == "neg_components":
        return NEG_COMPONENTS
    if key == "pos_components":
        return POS_COMPONENTS
    if key == "ising":
        if beta is None:
            raise ValueError("ising requires --beta")
        return ising_parameter(beta)
    if key == "potts":
        if beta is None or q is None:
            raise ValueError("potts requires --q and --beta")
        return potts_parameter(q, beta)
    raise ValueError(f"unknown parameter {name!r}")


# ---------------------------------------------------------------------------
# increments and conditional negative semidefiniteness


@dataclass(frozen=True, eq=False)
class IncrementMatrix:
    """n x n matrix of single-edge increments f(G + ij) - f(G); the diagonal
    holds loop additions.  Symmetric by construction."""

    values: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


def increment_matrix(f: GraphParameter, g: Multigraph) -> IncrementMatrix:
    base = f.evaluate(g)
    out = np.zeros((g.n, g.n))
    for i in range(1, g.n + 1):
        for j in range(i, g.n + 1):
            delta = f.evaluate(g.add_edge(i, j)) - base
            out[i - 1, j - 1] = delta
            out[j - 1, i - 1] = delta
    return IncrementMatrix(out)


def is_cnd(m, tol: float = 1e-8) -> bool:
    """Whether the quadratic form of m is <= tol on the sum-zero subspace.

    Projects with P = I - 11^T/n and tests the top eigenvalue of P m P.
    """
    values = m.values if isinstance(m, IncrementMatrix) else np.asarray(m, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(values, values.T, atol=_SYMMETRY_TOL, rtol=0):
        raise ValueError("matrix must be symmetric")
    n = values.shape[0]
    proj = np.eye(n) - np.full((n, n), 1.0 / n)
    projected = proj @ values @ proj
    top = float(np.linalg.eigvalsh((projected + projected.T) / 2)[-1])
    return top <= tol


# ---------------------------------------------------------------------------
# class-membership certification


@dataclass
class PropertyCheck:
    passed: bool = True
    samples: int = 0
    counterexample: str | None = None


@dataclass
class CertificationReport:
    parameter: str
    kappa: float
    samples: int
    max_vertices: int
    max_edges: int
    additive: PropertyCheck = field(default_factory=PropertyCheck)
    lipschitz: PropertyCheck = field(default_factory=PropertyCheck)
    concave: PropertyCheck = field(default_factory=PropertyCheck)

    @property
    def all_passed(self) -> bool:
        return self.additive.passed and self.lipschitz.passed and self.concave.passed

    def to_json(self) -> str:
        payload = {
            "parameter": self.parameter,
            "kappa": self.kappa,
            "samples": self.samples,
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "properties": {
                name: {
                    "passed": check.passed,
                    "samples": check.samples,
                    "counterexample": check.counterexample,
                }
                for name, check in (("additive", self.additive),
                                    ("lipschitz", self.lipschitz),
                                    ("concave", self.concave))
            },
            "all_passed": self.all_passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


ADDITIVITY_TOL = 1e-9
LIPSCHITZ_TOL = 1e-9
CND_TOL = 1e-8


def certify_parameter(f: GraphParameter, samples: int, nmax: int,
                      rng: np.random.Generator,
                      max_edges: int | None = None) -> CertificationReport:
    """Check additivity, the one-edge bound, and increment concavity on
    random multigraphs; the first counterexample per property is recorded.
    """
    if max_edges is None:
        max_edges = 2 * nmax
    report = CertificationReport(f.name, f.kappa, samples, nmax, max_edges)
    for _ in range(samples):
        g1 = random_multigraph(rng, nmax, max_edges)
        g2 = random_multigraph(rng, nmax, max_edges)

        if report.additive.passed:
            report.additive.samples += 1
            whole = f.evaluate(g1.disjoint_union(g2))
            parts = f.evaluate(g1) + f.evaluate(g2)
            if abs(whole - parts) > ADDITIVITY_TOL:
                report.additive.passed = False
                report.additive.counterexample = (
                    f"f(G1 + G2)={whole} vs f(G1)+f(G2)={parts}; "
                    f"G1={g1.edges} n={g1.n}, G2={g2.edges} n={g2.n}")

        needs_increments = report.lipschitz.passed or report.concave.passed
        if needs_increments:
            inc = increment_matrix(f, g1)

        if report.lipschitz.passed:
            report.lipschitz.samples += 1
            worst = float(np.abs(inc.values).max()) if g1.n else 0.0
            if worst > f.kappa + LIPSCHITZ_TOL:
                report.lipschitz.passed = False
                report.lipschitz.counterexample = (
                    f"|increment|={worst} > kappa={f.kappa}; G={g1.edges} n={g1.n}")

        if report.concave.passed:
            report.concave.samples += 1
            if not is_cnd(inc, CND_TOL):
                report.concave.passed = False
                report.concave.counterexample = (
                    f"increment matrix not CND; G={g1.edges} n={g1.n}")
    return report
