import pytest

import oracle
from pebblelab.engine import Budget, SearchLimitExceeded, TargetSearch, is_cover_solvable, is_t_solvable
from pebblelab.graph import (
    Graph, book, complete, corona, cycle, friendship, hypercube, neighbourhood_corona, path, star,
)
from pebblelab.numbers import (
    CLASS, GAMMA, PI_STAR, PI_T, classify, cover_pebbling_search, cover_pebbling_stacking,
    max_failing_configuration, optimal_pebbling_number, pebbling_number, rooted_box,
    rooted_pebbling_number,
)

K1 = complete(1)


def adjacency(g):
    return [list(a) for a in g.adj]


def test_rooted_examples():
    assert rooted_pebbling_number(complete(4), 2)[0] == 4
    assert rooted_pebbling_number(path(4), 0)[0] == 8
    assert rooted_pebbling_number(complete(4), 1, t=2)[0] == 6


@pytest.mark.parametrize("g,value", [
    (friendship(2), 6), (book(2), 8), (hypercube(3), 8), (cycle(5), 5), (cycle(6), 8),
    (star(3), 5), (path(5), 16),
])
def test_pebbling_number_examples(g, value):
    res = pebbling_number(g)
    assert res.kind == PI_T and res.value == value
    assert res.witness.size == value - 1
    assert not is_t_solvable(g, res.witness, res.target)
    assert res.rooted_values[res.target] == value == max(res.rooted_values.values())


def test_worst_target_is_smallest_index():
    res = pebbling_number(path(4))
    assert res.target == 0
    assert res.rooted_values == {0: 8, 1: 5, 2: 5, 3: 8}


def test_symmetry_does_not_change_results():
    for g in (book(2), friendship(2), path(5)):
        a = pebbling_number(g, use_symmetry=True)
        b = pebbling_number(g, use_symmetry=False)
        assert (a.value, a.target, a.witness, a.rooted_values) == (b.value, b.target, b.witness, b.rooted_values)


@pytest.mark.parametrize("n", range(1, 5))
def test_rooted_numbers_match_oracle(n):
    for edges, adj in oracle.graphs_of_order(n):
        g = Graph(n, edges)
        for r in range(n):
            assert rooted_pebbling_number(g, r)[0] == oracle.rooted_pebbling_number(adj, r), (edges, r)


@pytest.mark.parametrize("n", range(1, 4))
def test_two_fold_rooted_numbers_match_oracle(n):
    for edges, adj in oracle.graphs_of_order(n):
        g = Graph(n, edges)
        for r in range(n):
            assert rooted_pebbling_number(g, r, t=2)[0] == oracle.rooted_pebbling_number(adj, r, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_cover_and_optimal_numbers_match_oracle(n):
    for edges, adj in oracle.graphs_of_order(n):
        g = Graph(n, edges)
        assert cover_pebbling_stacking(g) == oracle.cover_number(adj), edges
        assert cover_pebbling_search(g).value == oracle.cover_number(adj), edges
        assert optimal_pebbling_number(g).value == oracle.optimal_number(adj), edges


SANDWICH = [complete(3), complete(4), path(3), path(4), cycle(4), cycle(5), star(3),
            friendship(2), book(2), hypercube(2)]


@pytest.mark.parametrize("g", SANDWICH, ids=lambda g: g.tag)
def test_sandwich_and_ceiling(g):
    pi = pebbling_number(g).value
    pi2 = pebbling_number(g, t=2).value
    assert max(g.n, 2 ** g.diameter) <= pi <= pi2 <= 2 * pi
    for t in (1, 2):
        for r in range(g.n):
            value, witness = rooted_pebbling_number(g, r, t)
            ceiling = (t - 1) + sum((t << g.dist[v][r]) - 1 for v in range(g.n) if v != r) + 1
            assert value <= ceiling
            assert witness.size == value - 1
            assert all(c <= cap for c, cap in zip(witness, rooted_box(g, r, t)))


@pytest.mark.parametrize("g", [cycle(5), cycle(6), complete(5), hypercube(3)], ids=lambda g: g.tag)
def test_vertex_transitive_rooted_values_agree(g):
    res = pebbling_number(g, use_symmetry=False)
    assert len(set(res.rooted_values.values())) == 1


def test_witness_is_lexicographically_smallest():
    # every maximum failing configuration on P_3 rooted at 0
    g = path(3)
    value, witness = rooted_pebbling_number(g, 0)
    adj = adjacency(g)
    maxima = [c for c in oracle.configurations(3, value - 1) if not oracle.t_solvable(adj, c, 0)]
    assert witness.counts == min(maxima)


def test_max_failing_configuration_on_a_simple_down_set():
    # failing iff 2x + y < 6
    best = max_failing_configuration([5, 5], lambda c: 2 * c[0] + c[1] < 6)
    assert best == (0, 5)
    with pytest.raises(RuntimeError):
        max_failing_configuration([2], lambda c: False)


@pytest.mark.parametrize("g,value", [(complete(3), 5), (cycle(4), 9), (path(3), 7), (star(3), 11)])
def test_cover_number_examples(g, value):
    res = cover_pebbling_search(g)
    assert res.kind == GAMMA and res.value == value == cover_pebbling_stacking(g)
    assert res.witness.size == value - 1
    assert not is_cover_solvable(g, res.witness)


@pytest.mark.parametrize("g,value", [
    (cycle(5), 13), (cycle(6), 21), (hypercube(2), 9), (hypercube(3), 27), (path(5), 31), (complete(6), 11),
])
def test_stacking_examples(g, value):
    assert cover_pebbling_stacking(g) == value


@pytest.mark.parametrize("g,value", [
    (complete(4), 2), (corona(complete(3), K1), 4), (path(4), 3), (neighbourhood_corona(complete(2), K1), 3),
])
def test_optimal_pebbling(g, value):
    res = optimal_pebbling_number(g)
    assert res.kind == PI_STAR and res.value == value == res.witness.size
    for r in range(g.n):
        assert TargetSearch(g, r, 1).decide(res.witness.counts)


def test_optimal_witness_on_complete_graph():
    assert optimal_pebbling_number(complete(4)).witness.to_map() == {"0": 2}


@pytest.mark.parametrize("g,label,pi", [
    (neighbourhood_corona(complete(4), K1), "Class 0", 8),
    (neighbourhood_corona(complete(3), complete(2)), "Class 1", 10),
    (friendship(2), "Class 1", 6),
    (path(4), "pi-n = 4", 8),
])
def test_classify(g, label, pi):
    res = classify(g)
    assert res.kind == CLASS and res.label == label and res.details["pi"] == pi
    assert res.details["diameter_two_bound_applies"] == (g.diameter == 2)


def test_budget_exhaustion_raises():
    with pytest.raises(SearchLimitExceeded):
        pebbling_number(book(3), budget=Budget(max_states=50))


def test_parallel_workers_match_serial():
    g = friendship(3)
    serial = pebbling_number(g, workers=1)
    parallel = pebbling_number(g, workers=2)
    assert (serial.value, serial.target, serial.witness, serial.rooted_values) == \
        (parallel.value, parallel.target, parallel.witness, parallel.rooted_values)


@pytest.mark.parametrize("expr", [
    "cycle(5)", "cycle(6)", "friendship(2)", "book(2)", "star(4)",
    "corona(complete(2),complete(1))", "ncorona(complete(3),complete(1))",
    "cartesian(path(2),complete(3))",
])
def test_pebbling_numbers_match_oracle_up_to_six_vertices(expr):
    from pebblelab.expr import build
    g = build(expr)
    adj = adjacency(g)
    res = pebbling_number(g, use_symmetry=False)
    for r in range(g.n):
        assert res.rooted_values[r] == oracle.rooted_pebbling_number(adj, r, stop_early=True), r
