import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_FIELDS, elements, field_id, homogeneous_polys, ring3
from homaloidal import QQ, InvalidField, NotDivisible, PolySyntaxError, Ring, field_make, poly_parse
from homaloidal.fields import is_irreducible


# -- fields -------------------------------------------------------------------------

def test_prime_field_and_rationals():
    assert field_make(3, 1).order == 3
    assert field_make(3, 1).modulus is None
    assert field_make(0, 1) == QQ


def test_gf9_modulus_has_no_root_mod_3():
    F = field_make(3, 2, seed=7)
    m = F.modulus
    assert len(m) == 3 and m[-1] == 1
    assert all((m[0] + m[1] * a + m[2] * a * a) % 3 for a in range(3))


def test_field_make_deterministic_per_seed():
    for s in range(4):
        assert field_make(5, 3, seed=s).modulus == field_make(5, 3, seed=s).modulus


@pytest.mark.parametrize("bad", [(4, 1), (1, 1), (9, 2), (3, 0)])
def test_invalid_fields(bad):
    with pytest.raises(InvalidField):
        field_make(*bad)


def test_irreducibility_against_brute_force():
    # monic cubics over GF(2) and GF(3): irreducible iff rootless
    for p in (2, 3):
        for a, b, c in itertools.product(range(p), repeat=3):
            m = [c, b, a, 1]
            rootless = all((c + b * x + a * x * x + x**3) % p for x in range(p))
            assert is_irreducible(m, p) == rootless


def test_extension_elements_enumerate_field():
    F = field_make(2, 3)
    elems = list(F.elements())
    assert len(set(elems)) == 8
    assert len({F.to_residues(a) for a in elems}) == 8
    for a in elems:
        assert F.from_residues(F.to_residues(a)) == a


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=field_id)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    add, mul = F.add, F.mul
    eq = lambda x, y: F.sub(x, y) == 0
    assert eq(add(add(a, b), c), add(a, add(b, c)))
    assert eq(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
    assert eq(add(a, F.neg(a)), 0)
    if not F.is_zero(a):
        assert eq(mul(a, F.inv(a)), F.from_int(1))


@pytest.mark.parametrize("F", [F for F in SMALL_FIELDS if F.kind != "Q"], ids=field_id)
@given(data=st.data())
def test_frobenius_fixes_every_element(F, data):
    a = data.draw(elements(F))
    assert F.sub(F.pow(a, F.order), a) == 0


# -- polynomials --------------------------------------------------------------------------

def test_parse_examples():
    F3 = field_make(3)
    R = ring3(F3)
    f = poly_parse("x0*x1*x2", F3)
    assert f == R.monomial((1, 1, 1))
    h = poly_parse("x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)", QQ)
    assert h.degree() == 5 and h.is_homogeneous() and len(h) == 4
    g3 = poly_parse("x0*x1*(x1^2+x0*x2)", field_make(5))
    assert {e for e, _ in g3.items()} == {(1, 3, 0), (2, 1, 1)}


@pytest.mark.parametrize("text", ["x0 +", "x0*/x1", "x3", "x0/2", "(x0", "2x0"])
def test_parse_errors(text):
    with pytest.raises(PolySyntaxError):
        poly_parse(text, QQ)


def test_parse_error_reports_position():
    with pytest.raises(PolySyntaxError) as exc:
        poly_parse("x0 + x1 + $", QQ)
    assert "$" in str(exc.value) or "10" in str(exc.value)


def test_freshman_dream_and_expansion():
    R2 = ring3(field_make(2))
    x0, x1, _ = R2.gens()
    assert (x0 + x1) ** 2 == x0**2 + x1**2
    R = ring3(field_make(3))
    x0, x1, x2 = R.gens()
    assert x0 * x1 * (x0 + x1) * x2 == x0**2 * x1 * x2 + x0 * x1**2 * x2


def test_exact_division():
    R = ring3(QQ)
    rng = random.Random(3)
    for _ in range(20):
        f = R.zero()
        g = R.zero()
        for _ in range(4):
            f = f + R.monomial([rng.randint(0, 3) for _ in range(3)], rng.randint(-9, 9))
            g = g + R.monomial([rng.randint(0, 3) for _ in range(3)], rng.randint(-9, 9))
        if g.is_zero():
            continue
        assert (f * g).exact_div(g) == f
    x0, x1, _ = R.gens()
    with pytest.raises(NotDivisible):
        (x0**2 + x1).exact_div(x0)


def test_derivative_examples():
    for F, expected in [(QQ, "2*x0*x1"), (field_make(2), "0")]:
        R = ring3(F)
        assert str(R.parse("x0^2*x1").derivative(0)) == expected


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=field_id)
@given(data=st.data())
def test_linear_form_in_pencil_is_its_own_euler_sum(F, data):
    R = ring3(F)
    a, b = data.draw(elements(F)), data.draw(elements(F))
    l = R.linear_form([a, b, 0])
    x0, x1, _ = R.gens()
    assert x0 * l.derivative(0) + x1 * l.derivative(1) == l


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=field_id)
@given(data=st.data())
def test_euler_identity(F, data):
    f = data.draw(homogeneous_polys(F))
    R = f.ring
    lhs = sum((R.gen(i) * f.derivative(i) for i in range(3)), R.zero())
    assert lhs == f.scale(F.from_int(f.degree()))


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=field_id)
@given(data=st.data())
def test_derivative_is_a_derivation(F, data):
    f = data.draw(homogeneous_polys(F, 3, 4))
    g = data.draw(homogeneous_polys(F, 3, 4))
    for i in range(3):
        assert (f * g).derivative(i) == f * g.derivative(i) + g * f.derivative(i)


@pytest.mark.parametrize("F", [F for F in SMALL_FIELDS if F.extension_degree == 1], ids=field_id)
@given(data=st.data())
def test_parser_round_trip(F, data):
    f = data.draw(homogeneous_polys(F))
    assert poly_parse(str(f), F) == f


@pytest.mark.parametrize("F", [F for F in SMALL_FIELDS if F.extension_degree > 1], ids=field_id)
@given(data=st.data())
def test_parser_round_trip_extension(F, data):
    f = data.draw(homogeneous_polys(F))
    assert poly_parse(str(f), ring3(F)) == f


def test_ring_rejects_duplicates():
    with pytest.raises(ValueError):
        Ring(QQ, ("x", "x"))
