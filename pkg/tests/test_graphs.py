import math
from itertools import combinations_with_replacement

import numpy as np
import pytest

from graphlimits.graphs import (
    INDEPENDENCE,
    MAX_CUT,
    NEG_COMPONENTS,
    POS_COMPONENTS,
    Multigraph,
    certify_parameter,
    increment_matrix,
    independence_number,
    independence_number_brute,
    is_cnd,
    ising_model,
    ising_parameter,
    log_partition,
    max_cut,
    mis_core,
    num_components,
    parameter_from_name,
    potts_model,
    potts_parameter,
    random_multigraph,
)

TRIANGLE = Multigraph(3, ((1, 2), (2, 3), (1, 3)))
PATH3 = Multigraph(3, ((1, 2), (2, 3)))
EDGE = Multigraph(2, ((1, 2),))


# ---------------------------------------------------------------------------
# independent oracles


def components_union_find(g):
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(v) for v in range(1, g.n + 1)})


def max_cut_subsets(g):
    best = 0
    for mask in range(1 << g.n):
        cut = sum(1 for i, j in g.edges
                  if i != j and (mask >> (i - 1) & 1) != (mask >> (j - 1) & 1))
        best = max(best, cut)
    return best


# ---------------------------------------------------------------------------
# multigraph basics


def test_multigraph_canonical_equality():
    a = Multigraph(3, ((2, 1), (3, 2), (1, 2)))
    b = Multigraph(3, ((1, 2), (1, 2), (2, 3)))
    assert a == b
    assert a.degrees() == (2, 3, 1)
    assert Multigraph(1, ((1, 1),)).degrees() == (2,)


def test_multigraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Multigraph(2, ((1, 3),))
    with pytest.raises(ValueError):
        Multigraph(-1)


def test_text_round_trip():
    g = Multigraph(4, ((1, 2), (2, 2), (3, 4)))
    assert Multigraph.from_text(g.to_text()) == g
    with pytest.raises(ValueError):
        Multigraph.from_text("3 2\n1 2\n")
    with pytest.raises(ValueError):
        Multigraph.from_text("")


def test_random_multigraph_bounds():
    rng = np.random.default_rng(0)
    for _ in range(100):
        g = random_multigraph(rng, 6, 8)
        assert 1 <= g.n <= 6 and g.num_edges <= 8


# ---------------------------------------------------------------------------
# parameter values


def test_num_components_examples():
    assert num_components(Multigraph(4)) == 4
    assert num_components(EDGE) == 1
    g = Multigraph(3, ((1, 2), (1, 2), (3, 3)))
    assert num_components(g) == 2 == components_union_find(g)


def test_num_components_matches_union_find():
    rng = np.random.default_rng(1)
    for _ in range(200):
        g = random_multigraph(rng, 8, 10)
        assert num_components(g) == components_union_find(g)


def test_independence_examples():
    assert independence_number(EDGE) == 1
    assert independence_number(Multigraph(1, ((1, 1),))) == 0
    c5 = Multigraph(5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)))
    assert independence_number(c5) == 2 == independence_number_brute(c5)


def test_independence_branch_bound_vs_brute():
    rng = np.random.default_rng(2)
    for _ in range(150):
        g = random_multigraph(rng, 9, 14)
        assert independence_number(g) == independence_number_brute(g)


def test_independence_closed_form_vs_brute_on_sparse():
    # degree <= 2 instances exercise the path/cycle closed form
    rng = np.random.default_rng(3)
    hits = 0
    for _ in range(400):
        g = random_multigraph(rng, 10, 8)
        if g.max_degree() <= 2:
            hits += 1
            assert independence_number(g) == independence_number_brute(g)
            assert max_cut(g) == max_cut_subsets(g)
    assert hits > 30


def test_independence_size_limit():
    big = Multigraph(41, tuple((i, i + 1) for i in range(1, 41))
                     + ((1, 3), (2, 4), (1, 4)))
    assert big.max_degree() > 2
    with pytest.raises(ValueError, match="too large"):
        independence_number(big)


def test_mis_core_examples():
    assert mis_core(EDGE) == frozenset()
    assert mis_core(PATH3) == frozenset({1, 3})
    assert mis_core(Multigraph(3)) == frozenset({1, 2, 3})


def test_max_cut_examples():
    assert max_cut(TRIANGLE) == 2
    assert max_cut(Multigraph(2, ((1, 2), (1, 2)))) == 2
    assert max_cut(Multigraph(1, ((1, 1),))) == 0


def test_max_cut_matches_subset_oracle():
    rng = np.random.default_rng(4)
    for _ in range(150):
        g = random_multigraph(rng, 8, 12)
        assert max_cut(g) == max_cut_subsets(g)


# ---------------------------------------------------------------------------
# spin models


def test_ising_model_values():
    assert ising_model(0.0).J == ((1.0, 1.0), (1.0, 1.0))
    m = ising_model(1.0)
    assert m.J[0][0] == pytest.approx(math.exp(-1))
    assert m.J[0][1] == pytest.approx(math.e)
    with pytest.raises(ValueError):
        ising_model(-1.0)


def test_potts_model_values():
    assert potts_model(2, 0.0).J == ((1.0, 1.0), (1.0, 1.0))
    m = potts_model(3, 1.0)
    assert m.J[0][0] == pytest.approx(math.exp(-1))
    assert m.J[0][1] == 1.0
    with pytest.raises(ValueError):
        potts_model(1, 1.0)
    with pytest.raises(ValueError):
        potts_model(3, -0.5)


def test_log_partition_examples():
    assert log_partition(Multigraph(3), ising_model(0.0)) == pytest.approx(
        3 * math.log(2), abs=1e-12)
    assert log_partition(EDGE, ising_model(1.0)) == pytest.approx(
        math.log(2 * math.e + 2 / math.e), abs=1e-12)
    beta = 0.8
    assert log_partition(Multigraph(1, ((1, 1),)), ising_model(beta)) == (
        pytest.approx(math.log(2) - beta, abs=1e-12))


def test_log_partition_counts_multiplicity():
    # double edge squares the interaction inside each term
    m = ising_model(0.5)
    double = Multigraph(2, ((1, 2), (1, 2)))
    expect = math.log(2 * math.exp(-1.0) + 2 * math.exp(1.0))
    assert log_partition(double, m) == pytest.approx(expect, abs=1e-12)


def test_log_partition_budget():
    with pytest.raises(ValueError, match="budget"):
        log_partition(Multigraph(30), ising_model(1.0))


def test_log_partition_brute_force_cross_check():
    rng = np.random.default_rng(5)
    model = potts_model(3, 0.7)
    J = np.array(model.J)
    for _ in range(25):
        g = random_multigraph(rng, 4, 5)
        total = 0.0
        for state in np.ndindex(*(model.q,) * g.n):
            w = 1.0
            for i, j in g.edges:
                w *= J[state[i - 1], state[j - 1]]
            total += w
        assert log_partition(g, model) == pytest.approx(math.log(total),
                                                        abs=1e-10)


# ---------------------------------------------------------------------------
# parameters as class members


def test_parameter_registry():
    assert parameter_from_name("independence") is INDEPENDENCE
    assert parameter_from_name("neg-components") is NEG_COMPONENTS
    assert parameter_from_name("ising", beta=2.0).kappa == pytest.approx(2.0)
    assert parameter_from_name("potts", beta=1.0, q=3).kappa == pytest.approx(1.0)
    with pytest.raises(ValueError):
        parameter_from_name("ising")
    with pytest.raises(ValueError):
        parameter_from_name("nope")


def test_isomorphism_invariance():
    rng = np.random.default_rng(6)
    params = [INDEPENDENCE, MAX_CUT, NEG_COMPONENTS,
              ising_parameter(0.5), potts_parameter(3, 1.0)]
    for _ in range(10):
        g = random_multigraph(rng, 6, 8)
        values = [p.evaluate(g) for p in params]
        for _ in range(20):
            perm = list(rng.permutation(g.n) + 1)
            h = g.relabeled(perm)
            for p, v in zip(params, values):
                assert p.evaluate(h) == pytest.approx(v, abs=1e-9)


# ---------------------------------------------------------------------------
# increments


def test_increment_matrix_examples():
    inc = increment_matrix(INDEPENDENCE, Multigraph(2))
    assert (inc.values == -1).all()
    inc = increment_matrix(MAX_CUT, EDGE)
    assert inc.values[0, 1] == 1
    assert inc.values[0, 0] == 0 and inc.values[1, 1] == 0
    inc = increment_matrix(NEG_COMPONENTS, EDGE)
    assert (inc.values == 0).all()


def _core_indicator(g):
    core = mis_core(g)
    ind = np.zeros((g.n, g.n))
    for i in core:
        for j in core:
            ind[i - 1, j - 1] = 1
    return ind


def test_independence_increment_formula():
    # adding ij loses exactly one vertex iff both endpoints sit in the
    # intersection of all maximum independent sets
    rng = np.random.default_rng(7)
    for _ in range(120):
        g = random_multigraph(rng, 6, 8)
        inc = increment_matrix(INDEPENDENCE, g)
        assert np.array_equal(inc.values, -_core_indicator(g))


def test_max_cut_increment_formula():
    # increment is 0 iff i and j agree on every maximum cut
    rng = np.random.default_rng(8)
    for _ in range(100):
        g = random_multigraph(rng, 6, 8)
        value = max_cut(g)
        same_side = np.ones((g.n, g.n), dtype=bool)
        for mask in range(1 << g.n):
            cut = sum(1 for i, j in g.edges if i != j
                      and (mask >> (i - 1) & 1) != (mask >> (j - 1) & 1))
            if cut == value:
                side = np.array([(mask >> v & 1) for v in range(g.n)])
                same_side &= np.equal.outer(side, side)
        inc = increment_matrix(MAX_CUT, g)
        assert np.array_equal(inc.values, 1.0 - same_side)


def test_components_increment_formula():
    rng = np.random.default_rng(9)
    for _ in range(100):
        g = random_multigraph(rng, 6, 8)
        inc = increment_matrix(NEG_COMPONENTS, g)
        for i in range(1, g.n + 1):
            for j in range(1, g.n + 1):
                joined = num_components(g.add_edge(i, j)) != num_components(g)
                assert inc.values[i - 1, j - 1] == (1.0 if joined else 0.0)


# ---------------------------------------------------------------------------
# conditional negative semidefiniteness


def test_is_cnd_examples():
    assert is_cnd(np.ones((4, 4)))
    assert not is_cnd(np.eye(2))
    assert is_cnd(np.array(ising_model(1.0).J))


def test_is_cnd_rejects_bad_input():
    with pytest.raises(ValueError, match="square"):
        is_cnd(np.ones((2, 3)))
    with pytest.raises(ValueError, match="symmetric"):
        is_cnd(np.array([[0.0, 1.0], [0.5, 0.0]]))


def _random_cnd(rng, n):
    # a_i + a_j - (A^T A)_ij is always conditionally negative semidefinite
    a = rng.normal(size=n)
    root = rng.normal(size=(n, n))
    return a[:, None] + a[None, :] - root.T @ root


def test_cnd_convex_cone():
    rng = np.random.default_rng(10)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        m1, m2 = _random_cnd(rng, n), _random_cnd(rng, n)
        lam = float(rng.uniform())
        assert is_cnd(lam * m1 + (1 - lam) * m2)


def test_cnd_pullback_closure():
    rng = np.random.default_rng(11)
    for _ in range(50):
        k = int(rng.integers(2, 6))
        n = int(rng.integers(2, 8))
        m = _random_cnd(rng, k)
        sigma = rng.integers(0, k, size=n)
        pulled = m[np.ix_(sigma, sigma)]
        assert is_cnd(pulled)


def _all_multigraphs(max_n, max_edges):
    for n in range(1, max_n + 1):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        for m in range(max_edges + 1):
            for combo in combinations_with_replacement(pairs, m):
                yield Multigraph(n, combo)


def test_log_partition_increments_cnd_exhaustive():
    # antiferromagnetic interactions are CND, hence so are the increments;
    # exhaustive over every multigraph with n <= 4 and at most 4 edges
    models = [ising_parameter(0.0), ising_parameter(0.5), ising_parameter(2.0),
              potts_parameter(3, 1.0)]
    for g in _all_multigraphs(4, 4):
        for p in models:
            assert is_cnd(increment_matrix(p, g))


def test_ising_lipschitz_constant_is_tight_bound():
    rng = np.random.default_rng(12)
    for beta in (0.5, 2.0):
        p = ising_parameter(beta)
        worst = 0.0
        for _ in range(40):
            g = random_multigraph(rng, 5, 6)
            worst = max(worst, float(np.abs(increment_matrix(p, g).values).max()))
        assert worst <= beta + 1e-9


# ---------------------------------------------------------------------------
# certification


@pytest.mark.parametrize("param", [INDEPENDENCE, MAX_CUT, NEG_COMPONENTS])
def test_certify_integer_parameters(param):
    report = certify_parameter(param, 100, 6, np.random.default_rng(13),
                               max_edges=8)
    assert report.all_passed, report.to_json()


def test_certify_spin_parameters():
    report = certify_parameter(ising_parameter(0.5), 60, 5,
                               np.random.default_rng(14), max_edges=6)
    assert report.all_passed, report.to_json()


def test_certify_negative_control():
    report = certify_parameter(POS_COMPONENTS, 100, 6,
                               np.random.default_rng(15), max_edges=8)
    assert report.additive.passed
    assert report.lipschitz.passed
    assert not report.concave.passed
    assert report.concave.counterexample is not None
    assert not report.all_passed


def test_certification_report_json():
    import json
    report = certify_parameter(INDEPENDENCE, 10, 4, np.random.default_rng(16))
    payload = json.loads(report.to_json())
    assert payload["all_passed"] is True
    assert set(payload["properties"]) == {"additive", "lipschitz", "concave"}
