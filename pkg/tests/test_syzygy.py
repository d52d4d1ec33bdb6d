import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring3
from homaloidal import (
    QQ,
    FamilySpec,
    Ideal,
    NotDeterminantal,
    PresentationMatrix,
    family_make,
    field_make,
    fitting_ideal,
    minimal_presentation,
    naive_degrees,
    saturate,
    syzygies,
    tteCar_hypotheses,
)
from homaloidal.syzygy import dot, syzygies_linear_algebra


def partials(f):
    return tuple(f.derivative(i) for i in range(3))


def near_pencil(n, F):
    return family_make(FamilySpec("near-pencil", n, F))


def test_triangle_syzygies():
    R = ring3(QQ)
    f = R.parse("x0*x1*x2")
    cols = syzygies(*partials(f))
    assert all(dot(c, partials(f)).is_zero() for c in cols)
    M = minimal_presentation(partials(f))
    assert M.column_degrees == [1, 1]
    assert M.is_syzygy_matrix()
    assert naive_degrees(M).as_tuple() == (1, 2, 1)


@pytest.mark.parametrize("F", [QQ, field_make(2, 2), field_make(3), field_make(7)], ids=lambda F: F.label())
def test_near_pencil_4_shape(F):
    M = minimal_presentation(partials(near_pencil(4, F)))
    assert M.column_degrees == [1, 3]
    hb = M.hilbert_burch()
    assert hb.holds
    assert naive_degrees(M).as_tuple() == (3, 4, 1)


def test_g3_first_column_over_gf5():
    F = field_make(5)
    R = ring3(F)
    M = minimal_presentation(partials(R.parse("x0*x1*(x1^2+x0*x2)")))
    assert M.column_degrees == [1, 2]
    x0, x1, x2 = R.gens()
    # proportional to (3 x0, -x1, -5 x2) = (3 x0, -x1, 0) in GF(5)
    target = (x0.scale(3), -x1, R.zero())
    col = M.column(0)
    lc = col[0].lc()
    c = F.div(lc, 3)
    assert all(a == b.scale(c) for a, b in zip(col, target))


def test_ramphoid_char3_presentation_and_fitting():
    F = field_make(3)
    h = family_make(FamilySpec("ramphoid", None, F))
    M = minimal_presentation(partials(h))
    assert M.column_degrees == [1, 3]
    assert M.hilbert_burch().holds
    fit = fitting_ideal(M)
    assert fit.radical() == "(x1,x2)"
    assert naive_degrees(M).as_tuple() == (3, 4, 1)
    # the displayed char-3 matrix is a valid Hilbert-Burch presentation as well
    R = h.ring
    rows = [["0", "x1^3-x0*x1*x2-x2^3"], ["x1", "x0*x2^2"], ["-x2", "-x1*x2^2"]]
    shown = PresentationMatrix([[R.parse(t) for t in r] for r in rows], [1, 3], partials(h), "shown")
    assert shown.is_syzygy_matrix()
    assert shown.hilbert_burch().holds


CHAR0_ROWS = [
    ["15*x1^2+3*x0*x2", "72*x0*x1+15*x2^2"],
    ["8*x1*x2", "2*x1^2+30*x0*x2"],
    ["-2*x2^2", "-8*x1*x2"],
]


def test_ramphoid_char0_presentation_spans_displayed_matrix():
    h = family_make(FamilySpec("ramphoid", None, QQ))
    R = h.ring
    M = minimal_presentation(partials(h))
    assert M.column_degrees == [2, 2]
    assert naive_degrees(M).as_tuple() == (4, 4, 1)
    shown = PresentationMatrix([[R.parse(t) for t in r] for r in CHAR0_ROWS], [2, 2], partials(h), "shown")
    assert shown.is_syzygy_matrix()
    # same degree-2 syzygy space: the four column vectors have rank 2
    monos = R.monomials_of_degree(2)

    def vec(col):
        out = []
        for e in col:
            d = dict(e.items())
            out += [sp.Rational(d.get(m, 0)) for m in monos]
        return out

    ours = [vec(c) for c in M.columns()]
    theirs = [vec(c) for c in shown.columns()]
    assert sp.Matrix(ours).rank() == 2
    assert sp.Matrix(ours + theirs).rank() == 2


def test_fitting_ideal_patterns():
    for n in (3, 4, 5):
        fit = fitting_ideal(minimal_presentation(partials(near_pencil(n, QQ))))
        assert fit.equals("(x0,x1,x2)")
    for p, n in [(2, 4), (3, 3), (3, 6), (5, 5)]:
        fit = fitting_ideal(minimal_presentation(partials(near_pencil(n, field_make(p)))))
        assert fit.equals("(x0,x1)")


def test_triangle_in_char_2_has_maximal_fitting_ideal():
    # degree-1 syzygies (x0, x1, 0) and (0, x1, x2) already involve x2, and
    # Fitting ideals do not depend on the presentation
    M = minimal_presentation(partials(near_pencil(2, field_make(2))))
    R = M.ring
    x0, x1, x2 = R.gens()
    assert M.column_degrees == [1, 1]
    assert all(dot(c, M.source_generators).is_zero() for c in [(x0, x1, R.zero()), (R.zero(), x1, x2)])
    assert fitting_ideal(M).equals("(x0,x1,x2)")


def test_naive_degrees_needs_two_columns():
    R = ring3(QQ)
    f = R.parse("x0^2*x1*x2 + x1^4 + x2^4")  # not free: more than two syzygies
    M = minimal_presentation(partials(f))
    assert M.s > 2
    with pytest.raises(NotDeterminantal):
        naive_degrees(M)
    assert M.hilbert_burch() is None


def test_tte_car_reports():
    for p, n in [(2, 4), (3, 3), (3, 6), (5, 5)]:
        M = minimal_presentation(partials(near_pencil(n, field_make(p))))
        assert tteCar_hypotheses(M, n, (0, 1)).passed
    h = family_make(FamilySpec("ramphoid", None, field_make(3)))
    M = minimal_presentation(partials(h))
    rep = tteCar_hypotheses(M, 4, (1, 2))
    assert rep.passed and rep.clauses["iii"]
    assert tteCar_hypotheses(M).pair == (1, 2)
    M = minimal_presentation(partials(near_pencil(4, QQ)))
    rep = tteCar_hypotheses(M, 4, (0, 1))
    assert "i" in rep.failed


def test_linear_algebra_route_agrees_on_degrees():
    for f in [near_pencil(4, QQ), family_make(FamilySpec("ramphoid", None, field_make(3))),
              family_make(FamilySpec("gn", 4, field_make(11)))]:
        a = minimal_presentation(partials(f))
        b = minimal_presentation(partials(f), method="linear-algebra")
        assert a.column_degrees == b.column_degrees
        assert b.is_syzygy_matrix()
        gens = partials(f)
        assert all(dot(c, gens).is_zero() for c in syzygies_linear_algebra(gens, 2 * f.degree()))


def _irrelevant_saturation(fit):
    R = fit.ideal.ring
    return saturate(fit.ideal, R.gens())


@pytest.mark.parametrize("spec", [
    FamilySpec("ramphoid", None, field_make(3)),
    FamilySpec("near-pencil", 5, field_make(5)),
    FamilySpec("gn", 3, field_make(5)),
    FamilySpec("near-pencil", 4, QQ),
], ids=lambda s: s.label() + "@" + s.field.label())
def test_fitting_ideal_independent_of_presentation(spec):
    f = family_make(spec)
    a = fitting_ideal(minimal_presentation(partials(f)))
    b = fitting_ideal(minimal_presentation(partials(f), method="linear-algebra"))
    assert _irrelevant_saturation(a) == _irrelevant_saturation(b)


# -- Hilbert-Burch certificates on a randomized free-curve corpus ---------------------

@settings(max_examples=25)
@given(st.sampled_from([QQ, field_make(2, 3), field_make(3, 2), field_make(5), field_make(7)]),
       st.integers(2, 6), st.integers(0, 20))
def test_hilbert_burch_on_near_pencils(F, n, seed):
    f = family_make(FamilySpec("near-pencil", n, F, seed))
    M = minimal_presentation(partials(f))
    assert M.is_syzygy_matrix()
    assert M.column_degrees == [1, n - 1]
    hb = M.hilbert_burch()
    assert hb.holds and hb.scalar is not None
    # signed minors generate the same ideal as the partials
    assert Ideal(list(hb.signed_minors)) == Ideal(list(M.source_generators))


@settings(max_examples=15)
@given(st.integers(2, 6), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_hilbert_burch_on_gn(n, p):
    F = field_make(p)
    f = family_make(FamilySpec("gn", n, F))
    gens = partials(f)
    if any(g.is_zero() for g in gens):
        return
    M = minimal_presentation(gens)
    if M.s == 2:
        assert M.hilbert_burch().holds
