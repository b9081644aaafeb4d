import pytest

from posetgames.core import Convention, Player
from posetgames.errors import InstanceSyntaxError, InvalidBudget, PreconditionViolated
from posetgames.oracle import MMResult, solve_mb, solve_mm
from posetgames.reductions import (
    CnfFormula,
    CoverInstance,
    PosDnf,
    QbfFormula,
    avoid_true_winner,
    from_3qbf,
    from_3sat,
    from_avoid_true,
    from_setcover,
    gen_connect_k,
    parse_avoid_true,
    parse_dimacs,
    parse_qdimacs,
    parse_setcover,
)

MAKER, BREAKER = Player.MAKER, Player.BREAKER


def test_3sat_single_clause():
    f = CnfFormula(3, ((1, 2, 3),))
    g = from_3sat(f)
    assert g.size == 12 and len(g.winsets) == 1
    assert g.poset.height() == 2
    assert f.satisfiable() and solve_mb(g) is BREAKER


def test_3sat_contradiction():
    f = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))
    g = from_3sat(f)
    assert set(g.winsets) == {frozenset({"v1"}), frozenset({"nv1"})}
    assert not f.satisfiable() and solve_mb(g) is MAKER


def test_3sat_empty_formula():
    g = from_3sat(CnfFormula(2, ()))
    assert g.winsets == () and solve_mb(g) is BREAKER


def test_cnf_validation():
    with pytest.raises(PreconditionViolated):
        CnfFormula(2, ((3,),))
    with pytest.raises(PreconditionViolated):
        CnfFormula(4, ((1, 2, 3, 4),))
    with pytest.raises(PreconditionViolated):
        CnfFormula(1, ((),))


def test_setcover_examples():
    one = CoverInstance(("v1",), (frozenset({"v1"}),), 1)
    g = from_setcover(one)
    assert g.size == 4 and one.has_cover() and solve_mb(g) is BREAKER
    two = CoverInstance(("v1", "v2"), (frozenset({"v1"}), frozenset({"v2"})), 1)
    g = from_setcover(two)
    assert g.size == 8 and not two.has_cover() and solve_mb(g) is MAKER
    assert g.poset.height() == 3


def test_setcover_budget_and_validation():
    inst = CoverInstance(("v1", "v2"), (frozenset({"v1", "v2"}),), 2)
    with pytest.raises(InvalidBudget):
        from_setcover(inst)
    with pytest.raises(PreconditionViolated):
        CoverInstance(("v1", "v2"), (frozenset({"v1"}),), 1)


def test_qbf_two_clause_example():
    q = QbfFormula(CnfFormula(4, ((1, 2, 3), (-2, 3, -4))))
    g = from_3qbf(q)
    assert g.size == 11
    assert g.poset.width() == 2
    assert max(len(s) for s in g.winsets) == 3
    assert q.is_true() and solve_mb(g) is BREAKER


def test_qbf_single_universal_clause():
    q = QbfFormula(CnfFormula(2, ((1, 1, 1),)))
    g = from_3qbf(q)
    assert g.size == 5
    assert not q.is_true() and solve_mb(g) is MAKER


def test_qbf_needs_even_prefix():
    with pytest.raises(PreconditionViolated):
        QbfFormula(CnfFormula(3, ((1,),)))


def test_avoid_true_examples():
    d = PosDnf(("x1", "x2"), (frozenset({"x1", "x2"}),))
    g = from_avoid_true(d)
    assert g.size == 3 and g.convention is Convention.MAKER_MAKER
    assert avoid_true_winner(d) == "first" and solve_mm(g) is MMResult.FIRST_WIN
    d = PosDnf(("x1",), (frozenset({"x1"}),))
    assert avoid_true_winner(d) == "second" and solve_mm(from_avoid_true(d)) is MMResult.SECOND_WIN
    d = PosDnf(("x1", "x2"), ())
    assert avoid_true_winner(d) is None and solve_mm(from_avoid_true(d)) is MMResult.DRAW


def test_connect_k_counts():
    g = gen_connect_k(3, 3, 3)
    assert g.size == 9 and len(g.winsets) == 8
    g = gen_connect_k(4, 7, 6)
    assert g.size == 42 and len(g.winsets) == 69
    assert gen_connect_k(5, 3, 3).winsets == ()


@pytest.mark.parametrize("k,w,h", [(2, 3, 2), (3, 5, 4), (4, 4, 4), (1, 2, 2)])
def test_connect_k_count_formula(k, w, h):
    expected = (w - k + 1) * h + w * (h - k + 1) + 2 * max(w - k + 1, 0) * max(h - k + 1, 0)
    if k == 1:
        expected = 4 * w * h
    assert len(gen_connect_k(k, w, h).winsets) == expected


def test_parse_dimacs():
    text = "c example\np cnf 3 2\n1 -2 3 0\n-1\n2 0\n"
    f = parse_dimacs(text)
    assert f.num_vars == 3 and f.clauses == ((1, -2, 3), (-1, 2))
    with pytest.raises(InstanceSyntaxError) as err:
        parse_dimacs("1 2 0\n")
    assert err.value.line == 1


def test_parse_qdimacs_renumbers_prefix():
    text = "p cnf 4 1\na 3 0\ne 1 0\na 4 0\ne 2 0\n3 -1 0\n"
    q = parse_qdimacs(text)
    assert q.matrix.clauses == ((1, -2),)
    with pytest.raises(PreconditionViolated):
        parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n")
    with pytest.raises(PreconditionViolated):
        parse_qdimacs("p cnf 3 1\na 1 0\ne 2 0\n1 3 0\n")


def test_line_formats():
    c = parse_setcover("element a\nelement b\nedge a b\nedge b\n", 1)
    assert c.has_cover()
    d = parse_avoid_true("var p\nvar q\nclause p q # both\n")
    assert d.clauses == (frozenset({"p", "q"}),)
    with pytest.raises(InstanceSyntaxError):
        parse_avoid_true("variable p\n")
