import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruteforce import group_elements
from sigmagroups.arith import multiplicative_order
from sigmagroups.catalog import (K_29_7, K_43_7, PRESETS, Alt, Cyclic, Dihedral, Direct, ExplicitPerms,
                                 Preset, Q8, SL2, SemidirectExpr, Sym, group_from_text, invariant_key,
                                 parse_group_expr, predicted_order, preset, print_group_expr, realize,
                                 small_catalog, smallest_action)
from sigmagroups.groups import factors
from sigmagroups.verdict import CapExceeded, Caps, ParseError

FIXTURES = Path(__file__).parent / "fixtures"


def test_parse_examples():
    assert parse_group_expr("C29 : C7 @ 16") == SemidirectExpr(29, 7, 16)
    e = parse_group_expr("SL(2,7) x A7 x A5 x (C43 : C7 @ 4)")
    assert e == Direct(Direct(Direct(SL2(7), Alt(7)), Alt(5)), SemidirectExpr(43, 7, 4))
    assert parse_group_expr("preset:ex15iii") == Preset("ex15iii")
    assert parse_group_expr("perm[4;(1 2)(3 4), (1 2 3)]") == ExplicitPerms(4, ("(1 2)(3 4)", "(1 2 3)"))


@pytest.mark.parametrize("text", ["C4 : C2 @ 2", "C7:C3@3", "SL(2,11)", "D2", "C0", "X5",
                                  "S3 x", "(S3", "S3 y", "perm[3;(1 4)]", "preset:nope", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_group_expr(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_group_expr("S3 x C4:C2@2")
    assert info.value.pos == 5


def test_action_parameters_fixture():
    data = json.loads((FIXTURES / "action_parameters.json").read_text())
    assert data["C29:C7"]["k"] == K_29_7 and data["C43:C7"]["k"] == K_43_7
    for entry in data.values():
        n, m, k = entry["n"], entry["m"], entry["k"]
        powers = [pow(k, i, n) for i in range(1, m + 1)]
        assert powers == entry["powers_mod_n"]
        assert powers[-1] == 1 and 1 not in powers[:-1]
        assert smallest_action(n, m) == k
    assert multiplicative_order(16, 29) == 7


def test_realize_orders():
    G = realize(SL2(3))
    assert (G.degree, G.order) == (8, 24)
    B = realize(SemidirectExpr(29, 7, 16))
    assert B.order == 203 and not B.is_abelian()
    assert realize(Direct(Alt(5), SemidirectExpr(29, 7, 16))).order == 12180
    assert realize(SemidirectExpr(6, 2, 1)).is_abelian()


def test_sl2_on_nonzero_vectors():
    for q in (2, 3, 5, 7):
        G = realize(SL2(q))
        assert G.degree == q * q - 1
        assert G.order == q * (q * q - 1)


def test_dihedral_and_q8():
    D5 = realize(Dihedral(5))
    assert (D5.degree, D5.order) == (5, 10)
    Q = realize(Q8())
    orders = sorted(len({x for x in _powers(e)}) for e in group_elements(Q))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def _powers(e):
    x = e
    out = [x]
    ident = tuple(range(len(e)))
    while x != ident:
        x = tuple(e[i] for i in x)
        out.append(x)
    return out


def test_presets():
    assert realize(preset("ex15iii")).order == 12180
    assert realize(preset("ex18_core")).order == 336 * 2520
    assert realize(preset("ex15iv")).order == 336 * 2520 * 60 * 301
    assert realize(preset("ex13_sl23")).order == 24
    with pytest.raises(KeyError):
        preset("nope")


def test_direct_metadata():
    G = group_from_text("S3 x (C7:C3@2) x Q8")
    assert [f.order for f in factors(G)] == [6, 21, 8]


def test_degree_cap():
    with pytest.raises(CapExceeded):
        realize(parse_group_expr("S5 x S5"), Caps(max_degree=8))


@st.composite
def exprs(draw, depth=2):
    atoms = [
        st.builds(Cyclic, st.integers(1, 12)),
        st.builds(Dihedral, st.integers(3, 8)),
        st.builds(Sym, st.integers(1, 4)),
        st.builds(Alt, st.integers(1, 5)),
        st.just(Q8()),
        st.builds(SL2, st.sampled_from([2, 3])),
        st.sampled_from([SemidirectExpr(7, 3, 2), SemidirectExpr(5, 4, 2), SemidirectExpr(9, 2, 8),
                         SemidirectExpr(6, 2, 1)]),
        st.sampled_from([Preset("ex13_sl23"), Preset("ex13_c7c3")]),
        st.just(ExplicitPerms(4, ("(1 2)(3 4)", "(1 3)"))),
    ]
    if depth == 0:
        return draw(st.one_of(atoms))
    return draw(st.one_of(*atoms, st.builds(Direct, exprs(depth - 1), exprs(depth - 1))))


@settings(max_examples=120, deadline=None)
@given(exprs())
def test_print_parse_round_trip(e):
    assert parse_group_expr(print_group_expr(e)) == e


@settings(max_examples=40, deadline=None)
@given(exprs(depth=1))
def test_realized_order_matches_prediction(e):
    G = realize(e)
    predicted = predicted_order(e)
    if predicted is not None:
        assert G.order == predicted


def test_predicted_order_with_explicit_factor():
    e = parse_group_expr("Q8 x perm[4; (1 2)(3 4), (1 3)]")
    assert predicted_order(e) is None
    assert realize(e).order == 64


def test_small_catalog():
    cat = list(small_catalog(24))
    orders = [G.order for _, G in cat]
    assert orders == sorted(orders)
    assert max(orders) <= 24
    keys = [invariant_key(G) for _, G in cat]
    assert len(keys) == len(set(keys))
    names = {print_group_expr(e) for e, _ in cat}
    assert {"C1", "S4", "Q8", "SL(2,3)"} <= names
    assert [print_group_expr(e) for e, _ in small_catalog(1)] == ["C1"]


def test_catalog_expressions_reparse():
    for e, G in small_catalog(60):
        assert group_from_text(print_group_expr(e)).order == G.order


def test_presets_table():
    assert set(PRESETS) == {"ex13_sl23", "ex13_c7c3", "ex15iii", "ex15iv", "ex18_core"}
