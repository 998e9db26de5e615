import pytest
from hypothesis import settings
from hypothesis import strategies as st

from danielewski.hypersurface import HypersurfaceRing
from danielewski.poly import QQ, ParamField, PolyRing
from danielewski.ring import DanielewskiRing

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GENS = ("X", "Y", "Z")
P0 = PolyRing(GENS)
X, Y, Z = P0.gens_polys()
F0 = X**2 + Y**3 + Z**7


def make_r0(field=QQ):
    P = PolyRing(GENS, field)
    return HypersurfaceRing(GENS, P.convert_poly(F0), "X", field)


R0 = make_r0()
x, y, z = R0.gens_elements()


def ring(r, s, base=R0):
    return DanielewskiRing(base, r, s)


@pytest.fixture(scope="session")
def r0():
    return R0


@pytest.fixture(scope="session")
def qt():
    return ParamField(("t",))


@pytest.fixture(scope="session")
def r0t(qt):
    return make_r0(qt)


@pytest.fixture(scope="session")
def A11():
    return ring(x, y)


@pytest.fixture(scope="session")
def A23():
    return ring(x**2, y**3)


def exponents(nvars, max_deg):
    return st.tuples(*[st.integers(0, max_deg)] * nvars).filter(lambda e: sum(e) <= max_deg)


def polys(ring=P0, max_deg=3, max_terms=4):
    """Strategy for small polynomials with small integer coefficients."""
    return st.dictionaries(
        exponents(ring.nvars, max_deg), st.integers(-4, 4), max_size=max_terms
    ).map(ring.from_dict)


def base_elements(base=R0, max_deg=3, max_terms=4):
    return polys(base.poly_ring, max_deg, max_terms).map(base)


def a_elements(A, max_uv=2, base_deg=2, max_terms=3):
    """Random elements of A, built as sums of c*u^i*v^j and then normalized."""
    term = st.tuples(base_elements(A.base, base_deg, 3), st.integers(0, max_uv),
                     st.integers(0, max_uv))

    def build(terms):
        h = A.zero
        for c, i, j in terms:
            h = h + A(c) * A.u**i * A.v**j
        return h

    return st.lists(term, max_size=max_terms).map(build)


_RESULTS = {}


def record(criterion, ok, detail):
    _RESULTS[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        ok, detail = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
