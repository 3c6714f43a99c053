import random

import pytest

from _oracles import floyd_warshall, has_zero_cycle, random_graph, shortest_walks
from tabsem.errors import (
    BrokenPathError,
    DimensionMismatchError,
    DuplicateLabelError,
    InvalidParameterError,
    NegativeWeightError,
    NoConvergenceError,
)
from tabsem.memorized import ONE, ZERO, mem
from tabsem.scalars import INF, SemiringSpec, semiring_instance
from tabsem.semimatrix import (
    Arrow,
    SquareMatrix,
    WeightedGraph,
    address_matrix,
    apsp_with_addresses,
    closure_with_stats,
    identity,
    mat_closure,
    mat_mul,
    memorized_carrier,
    path_weight,
    scalar_carrier,
    squaring_bound,
)

TROPICAL = semiring_instance("tropical")
COUNTING = semiring_instance("counting")
TROP = scalar_carrier(TROPICAL)
MEM = memorized_carrier()


def graph(*arrows, states=None):
    arrows = [Arrow(*a) for a in arrows]
    if states is None:
        states = []
        for a in arrows:
            for s in (a.tail, a.head):
                if s not in states:
                    states.append(s)
    return WeightedGraph(tuple(states), tuple(arrows))


SECTION_EXAMPLE = graph(("p", "q", 2, "x"), ("q", "r", 3, "y"), ("r", "s", 5, "z"))


def brute_matmul(a, b, add, mul):
    n = a.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = [mul(a[i, k], b[k, j]) for k in range(n)]
            acc = terms[0]
            for t in terms[1:]:
                acc = add(acc, t)
            row.append(acc)
        out.append(row)
    return out


class TestPathWeight:
    def test_counting_multiplies(self):
        assert path_weight(SECTION_EXAMPLE, ["x", "y", "z"], COUNTING) == ("p", "s", 30)

    def test_tropical_adds(self):
        assert path_weight(SECTION_EXAMPLE, ["x", "y", "z"], TROPICAL) == ("p", "s", 10)
        assert path_weight(SECTION_EXAMPLE, ["x", "y"], TROPICAL) == ("p", "r", 5)

    def test_single_arrow(self):
        assert path_weight(SECTION_EXAMPLE, [SECTION_EXAMPLE.arrows[1]], COUNTING) == ("q", "r", 3)

    def test_broken(self):
        with pytest.raises(BrokenPathError):
            path_weight(SECTION_EXAMPLE, ["x", "z"], COUNTING)
        with pytest.raises(BrokenPathError):
            path_weight(SECTION_EXAMPLE, [], COUNTING)


class TestGraph:
    def test_validation(self):
        with pytest.raises(NegativeWeightError):
            graph(("p", "q", -1, "a"))
        with pytest.raises(DuplicateLabelError):
            graph(("p", "q", 1, "a"), ("q", "p", 1, "a"))
        with pytest.raises(InvalidParameterError):
            graph(("p", "q", 1, "a"), states=["p"])


class TestMatMul:
    def test_identity(self):
        a = SquareMatrix([[0, 2], [INF, 0]])
        i = identity(2, TROP)
        assert mat_mul(i, a, TROP) == a
        assert mat_mul(a, i, TROP) == a

    def test_two_by_two(self):
        a = SquareMatrix([[0, 2], [INF, 0]])
        b = SquareMatrix([[0, 3], [INF, 0]])
        expected = brute_matmul(a, b, min, lambda x, y: x + y)
        assert expected == [[0, 2], [INF, 0]]
        assert mat_mul(a, b, TROP) == SquareMatrix(expected)

    def test_memorized_one_by_one(self):
        a = SquareMatrix([[mem(["a"], 1)]])
        b = SquareMatrix([[mem(["b"], 2)]])
        assert mat_mul(a, b, MEM) == SquareMatrix([[mem(["ab"], 3)]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            mat_mul(SquareMatrix([[0]]), SquareMatrix([[0, 1], [1, 0]]), TROP)
        with pytest.raises(DimensionMismatchError):
            SquareMatrix([[0, 1]])
        with pytest.raises(DimensionMismatchError):
            SquareMatrix([])

    def test_associative(self):
        rng = random.Random(5)

        def trop():
            return SquareMatrix([[rng.choice([INF, rng.randint(0, 9)]) for _ in range(3)] for _ in range(3)])

        def memo():
            return SquareMatrix([[rng.choice([ZERO, mem([rng.choice("abc")], rng.randint(0, 3))])
                                  for _ in range(3)] for _ in range(3)])

        for make, carrier in ((trop, TROP), (memo, MEM)):
            for _ in range(100):
                a, b, c = make(), make(), make()
                assert mat_mul(mat_mul(a, b, carrier), c, carrier) == mat_mul(a, mat_mul(b, c, carrier), carrier)

    def test_matches_brute_force(self):
        rng = random.Random(6)
        for _ in range(50):
            n = rng.randint(1, 5)
            a = SquareMatrix([[rng.choice([INF, rng.randint(0, 9)]) for _ in range(n)] for _ in range(n)])
            b = SquareMatrix([[rng.choice([INF, rng.randint(0, 9)]) for _ in range(n)] for _ in range(n)])
            assert mat_mul(a, b, TROP) == SquareMatrix(brute_matmul(a, b, min, lambda x, y: x + y))


class TestClosure:
    def test_no_arrows_is_identity(self):
        a = SquareMatrix([[INF] * 3 for _ in range(3)])
        assert mat_closure(a, TROP) == identity(3, TROP)

    def test_chain(self):
        a = SquareMatrix([[INF, 2, INF], [INF, INF, 3], [INF, INF, INF]])
        assert mat_closure(a, TROP)[0, 2] == 5

    @pytest.mark.parametrize("n,bound", [(1, 0), (2, 0), (3, 1), (5, 2), (9, 3), (12, 4), (17, 4)])
    def test_bound(self, n, bound):
        assert squaring_bound(n) == bound

    def test_matches_floyd_warshall(self):
        rng = random.Random(8)
        for _ in range(60):
            g = random_graph(rng)
            n = len(g.states)
            idx = g.index()
            cells = [[INF] * n for _ in range(n)]
            for arr in g.arrows:
                i, j = idx[arr.tail], idx[arr.head]
                cells[i][j] = min(cells[i][j], arr.weight)
            result = closure_with_stats(SquareMatrix(cells), TROP)
            assert result.stabilized and result.squarings <= squaring_bound(n)
            assert [list(r) for r in result.matrix.rows] == floyd_warshall(g)

    def test_negative_cycle_does_not_converge(self):
        # only the library path allows negative scalars; the graph layer forbids them
        plus_min = SemiringSpec("minplus-reals", TROPICAL.add, TROPICAL.mul, INF, 0.0)
        a = SquareMatrix([[INF, -1], [-1, INF]])
        with pytest.raises(NoConvergenceError):
            mat_closure(a, scalar_carrier(plus_min))

    def test_needs_idempotent_sum(self):
        with pytest.raises(InvalidParameterError):
            mat_closure(SquareMatrix([[0]]), scalar_carrier(COUNTING))

    def test_needs_neutrals(self):
        spec = SemiringSpec("noone", TROPICAL.add, TROPICAL.mul, INF, None)
        with pytest.raises(InvalidParameterError):
            mat_closure(SquareMatrix([[0]]), scalar_carrier(spec))

    def test_extra_squarings_allowed(self):
        a = SquareMatrix([[INF, 2], [INF, INF]])
        assert mat_closure(a, TROP, max_squarings=5) == SquareMatrix([[0, 2], [INF, 0]])


class TestApsp:
    CHAIN = graph(("p", "q", 2, "a"), ("q", "r", 3, "b"), ("p", "r", 6, "c"))
    TIE = graph(("p", "q", 2, "a"), ("q", "r", 3, "b"), ("p", "r", 5, "c"))

    def test_chain(self):
        m = apsp_with_addresses(self.CHAIN)
        assert m[0, 2] == mem(["a.b"], 5)
        assert m[0, 0] == ONE
        assert m[2, 0] == ZERO

    def test_tie(self):
        assert apsp_with_addresses(self.TIE)[0, 2] == mem(["a.b", "c"], 5)

    def test_parallel_arrows_fold(self):
        g = graph(("p", "q", 2, "a"), ("p", "q", 2, "b"), ("p", "q", 4, "c"))
        assert apsp_with_addresses(g)[0, 1] == mem(["a", "b"], 2)

    def test_zero_cycle_is_bounded(self):
        # p <-> q at cost 0: ties grow forever, so the result keeps walks of at most n-1 arrows
        g = graph(("p", "q", 0, "a"), ("q", "p", 0, "b"), ("q", "r", 1, "c"))
        m = apsp_with_addresses(g)
        assert m[0, 0] == mem(["@eps", "a.b"], 0)
        assert m[0, 2] == mem(["a.c"], 1)
        assert m[1, 2] == mem(["c"], 1)
        carrier = memorized_carrier()
        assert not closure_with_stats(address_matrix(g, carrier), carrier).stabilized

    def test_tie_epsilon(self):
        g = graph(("p", "q", 2, "a"), ("q", "r", 3, "b"), ("p", "r", 5.01, "c"))
        assert apsp_with_addresses(g)[0, 2] == mem(["a.b"], 5)
        assert apsp_with_addresses(g, tie_epsilon=0.1)[0, 2] == mem(["a.b", "c"], 5)

    def test_matches_oracles(self):
        rng = random.Random(9)
        for _ in range(40):
            g = random_graph(rng, max_n=8)
            m = apsp_with_addresses(g)
            dist = floyd_warshall(g)
            walks = shortest_walks(g, dist)
            n = len(g.states)
            for i in range(n):
                for j in range(n):
                    assert m[i, j].cost == dist[i][j]
                    assert m[i, j].addresses == walks[i, j]

    def test_stabilizes_without_zero_cycles(self):
        rng = random.Random(10)
        carrier = memorized_carrier()
        for _ in range(40):
            g = random_graph(rng, max_n=8)
            result = closure_with_stats(address_matrix(g, carrier), carrier)
            assert result.stabilized == (not has_zero_cycle(g))
