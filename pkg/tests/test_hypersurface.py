"""Normal forms and division in R = k[X,Y,Z]/(F)."""

import pytest
from hypothesis import given

from conftest import P0, R0, base_elements, polys, x, y, z
from danielewski.errors import InputError, InvalidRingError
from danielewski.hypersurface import HypersurfaceRing


@pytest.mark.parametrize(
    "elem, expected",
    [
        (lambda: x**2, "-y^3 - z^7"),
        (lambda: x**3, "-x*y^3 - x*z^7"),
        (lambda: (x + y) ** 2, "2*x*y - y^3 + y^2 - z^7"),
        (lambda: x**2 + y**3 + z**7, "0"),
    ],
)
def test_normal_forms(elem, expected):
    assert str(elem()) == expected


def test_lowercase_generators():
    assert R0.gen("x") == R0.gen("X") == x


def test_divides():
    assert str(R0.divides(x, x * y + x**3)) == "-y^3 + y - z^7"
    assert R0.divides(y, x) is None
    assert R0.divides(y, x**2) is None  # -y^3 - z^7 is not a multiple of y


def test_quo_rem():
    q, rem = R0.quo_rem(y, x**2 + y * z)
    assert str(q) == "-y^2 + z" and str(rem) == "-z^7"
    with pytest.raises(ZeroDivisionError):
        R0.quo_rem(R0.zero, x)


def test_relation_must_be_monic():
    P = P0
    X, Y, Z = P.gens_polys()
    with pytest.raises(InvalidRingError):
        HypersurfaceRing(("X", "Y", "Z"), X * Y - Z, "X")
    with pytest.raises(InputError):
        HypersurfaceRing(("X", "Y", "Z"), X**2 - Y, "W")


@pytest.mark.parametrize(
    "r, s, expected",
    [
        (x, y, True),
        (x, x, False),
        (R0.one, y, False),
        (x, y**3 + z**7, False),
        (x * (x - 1), y, True),
        (y, z, True),
    ],
)
def test_height2(r, s, expected):
    assert R0.height2_check(r, s) == expected


@given(polys(max_deg=4, max_terms=5))
def test_normal_form_is_idempotent_and_reduced(p):
    a = R0(p)
    assert R0(a.rep) == a
    assert a.rep.degree("X") < 2


@given(polys(max_deg=3), polys(max_deg=2))
def test_representative_independence(p, q):
    X, Y, Z = P0.gens_polys()
    assert R0(p) == R0(p + q * (X**2 + Y**3 + Z**7))


@given(base_elements(), base_elements(), base_elements())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(base_elements(max_deg=2), base_elements(max_deg=2))
def test_division_recovers_quotient(a, b):
    if a.is_zero():
        return
    q = R0.divides(a, a * b)
    assert q is not None and a * q == a * b
