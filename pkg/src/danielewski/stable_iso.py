"""Stable isomorphisms A_{r,s}[T] ~ A_{r',s'}[T'] for ideals with equal radicals.

If r', s' lie in rad(r, s) and r, s lie in rad(r', s'), each ring has a
unit partition a*r' + b*s' = 1 (resp. a'*r + b'*s = 1), obtained by
expanding a power of the defining relation. The map

    u -> s*T' + a',  v -> r*T' - b',  T -> b(...)*u' + a(...)*v'

and its mirror image are mutually inverse; both directions are checked
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import (
    InputError,
    RadicalBudgetError,
    RingMismatchError,
    TermLimitError,
    VerificationError,
)
from .groebner import DEFAULT_NMAX, GREVLEX, radical_power_member
from .hypersurface import HypersurfaceRing, RElement
from .poly import QQ, LaurentRing, PolyRing
from .ring import AElement, DanielewskiRing

__all__ = [
    "DEFAULT_TERM_LIMIT",
    "ExtendedElement",
    "RadicalData",
    "StableIsoCertificate",
    "SS1Report",
    "radicals_equal",
    "unit_partition",
    "build_stable_iso",
    "verify_stable_iso",
    "ss1_map_check",
]

DEFAULT_TERM_LIMIT = 10**6


class ExtendedElement:
    """A polynomial in one new variable with coefficients in a DanielewskiRing."""

    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, ring, coeffs, var="T"):
        self.ring = ring
        self.coeffs = {k: c for k, c in coeffs.items() if c}
        self.var = var

    @classmethod
    def constant(cls, x, var="T"):
        return cls(x.ring, {0: x}, var)

    @classmethod
    def generator(cls, ring, var="T"):
        return cls(ring, {1: ring.one}, var)

    def _lift(self, other):
        if isinstance(other, ExtendedElement):
            if other.ring != self.ring or other.var != self.var:
                raise RingMismatchError("elements of different extended rings")
            return other
        return ExtendedElement(self.ring, {0: self.ring(other)}, self.var)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return ExtendedElement(self.ring, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedElement(self.ring, {k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExtendedElement):
            if isinstance(other, (AElement, RElement)):
                c = self.ring(other)
                return ExtendedElement(
                    self.ring, {k: x * c for k, x in self.coeffs.items()}, self.var
                )
            return ExtendedElement(
                self.ring, {k: x * other for k, x in self.coeffs.items()}, self.var
            )
        other = self._lift(other)
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return ExtendedElement(self.ring, out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExtendedElement):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max(self.coeffs, default=-1)

    def coefficient(self, k):
        return self.coeffs.get(k, self.ring.zero)

    def term_count(self):
        return sum(c.term_count() for c in self.coeffs.values())

    def to_ambient(self):
        """The canonical representative as a polynomial in base vars, U, V, var."""
        amb = self.ring.ambient
        ring = PolyRing(amb.gens + (self.var,), amb.field)
        terms = {}
        for k, c in self.coeffs.items():
            for e, x in c.to_ambient().terms.items():
                terms[e + (k,)] = x
        return ring._make(terms)

    def format(self):
        names = [g.lower() for g in self.ring.ambient.gens] + [self.var]
        return self.to_ambient().format(names)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ExtendedElement({self.format()!r})"


def _guard(x, limit, what):
    if limit is not None and x.term_count() > limit:
        raise TermLimitError(f"{what} exceeds the term ceiling of {limit}")
    return x


def _eval_in_extension(h, image_u, image_v, limit=None):
    """h(u -> image_u, v -> image_v), base fixed, as an ExtendedElement."""
    target = image_u.ring
    var = image_u.var
    upow, vpow = [ExtendedElement(target, {0: target.one}, var)], [
        ExtendedElement(target, {0: target.one}, var)
    ]
    out = ExtendedElement(target, {}, var)
    for (i, j), c in sorted(h.terms.items()):
        while len(upow) <= i:
            upow.append(_guard(upow[-1] * image_u, limit, "a power of the image of u"))
        while len(vpow) <= j:
            vpow.append(_guard(vpow[-1] * image_v, limit, "a power of the image of v"))
        coeff = target(RElement(target.base, c))
        out = out + (upow[i] * vpow[j]) * coeff
        _guard(out, limit, "an image")
    return out


# -- radicals and partitions --


@dataclass(frozen=True)
class RadicalData:
    """Powers of each generator lying in the other ideal, with cofactors.

    ``second_in_first`` holds (N, alpha, beta) with r'^N = alpha*r + beta*s
    and s'^N likewise; ``first_in_second`` holds the same for r, s in
    (r', s').
    """

    first: tuple
    second: tuple
    second_in_first: tuple
    first_in_second: tuple

    def exponents(self):
        """(N_r, N_s, N_r', N_s')."""
        return tuple(x[0] for x in self.first_in_second + self.second_in_first)


def _power_in(base, f, g1, g2, nmax):
    found = radical_power_member(f.rep, base.ideal_gens([g1, g2]), nmax, GREVLEX)
    if found is None:
        return None
    n, cof = found
    alpha, beta = base(cof[0]), base(cof[1])
    if f**n != alpha * g1 + beta * g2:
        raise VerificationError("radical cofactors do not reproduce the power")
    return n, alpha, beta


def radicals_equal(r, s, r2, s2, nmax=DEFAULT_NMAX):
    """RadicalData if rad(r, s) == rad(r2, s2) is established within nmax, else None."""
    base = r.ring
    for x in (r, s, r2, s2):
        if x.ring != base:
            raise RingMismatchError("all four elements must lie in one ring")
        if x.is_zero():
            raise InputError("radicals_equal needs nonzero elements")
    out = []
    for f, g1, g2 in ((r2, r, s), (s2, r, s), (r, r2, s2), (s, r2, s2)):
        found = _power_in(base, f, g1, g2, nmax)
        if found is None:
            return None
        out.append(found)
    return RadicalData((r, s), (r2, s2), tuple(out[:2]), tuple(out[2:]))


def unit_partition(A, r2, s2, powers):
    """(a, b) in A with a*r2 + b*s2 == 1.

    ``powers`` is ((N_r, alpha, beta), (N_s, gamma, delta)) with
    r^N_r = alpha*r2 + beta*s2 and s^N_s = gamma*r2 + delta*s2. Every term
    of (r*u - s*v)^M, M = N_r + N_s - 1, contains r^N_r or s^N_s.
    """
    (nr, alpha, beta), (ns, gamma, delta) = powers
    r, s = A.r, A.s
    m = nr + ns - 1
    upow = [A.one]
    mvpow = [A.one]
    for _ in range(m):
        upow.append(upow[-1] * A.u)
        mvpow.append(mvpow[-1] * (-A.v))
    a, b = A.zero, A.zero
    for i in range(m + 1):
        if i >= nr:
            rest = r ** (i - nr) * s ** (m - i) * comb(m, i)
            ca, cb = alpha, beta
        else:
            rest = r**i * s ** (m - i - ns) * comb(m, i)
            ca, cb = gamma, delta
        mono = upow[i] * mvpow[m - i]
        a = a + mono * (ca * rest)
        b = b + mono * (cb * rest)
    r2e, s2e = A(r2), A(s2)
    if a * r2e + b * s2e != A.one:
        raise VerificationError("unit partition does not sum to 1")
    return a, b


# -- the certificate --


@dataclass
class StableIsoCertificate:
    """Everything needed to re-check a stable isomorphism by arithmetic alone."""

    source: DanielewskiRing
    target: DanielewskiRing
    radical: RadicalData
    partition: tuple
    partition_target: tuple
    theta: dict
    theta_inverse: dict
    relations_verified: bool = False
    roundtrip_verified: bool = False
    checks: dict = field(default_factory=dict)

    @property
    def verified(self):
        return self.relations_verified and self.roundtrip_verified


def _theta_images(A, B, a, b, a2, b2, var_b, limit):
    """Images of u, v, T under the map A[T] -> B[var_b].

    (a, b) is the partition a*r_B + b*s_B = 1 in A and (a2, b2) the
    partition a2*r_A + b2*s_A = 1 in B.
    """
    tb = ExtendedElement.generator(B, var_b)
    img_u = tb * B(A.s) + a2
    img_v = tb * B(A.r) - b2
    img_t = (
        _eval_in_extension(b, img_u, img_v, limit) * B.u
        + _eval_in_extension(a, img_u, img_v, limit) * B.v
    )
    return {"U": img_u, "V": img_v, "T": _guard(img_t, limit, "the image of T")}


def _apply_on_extended(h, images, limit):
    """Apply the map given by ``images`` (of U, V, T) to h in A[var_src]."""
    target = images["U"]
    out = ExtendedElement(target.ring, {}, target.var)
    tpow = ExtendedElement(target.ring, {0: target.ring.one}, target.var)
    for k in range(h.degree() + 1):
        if k:
            tpow = _guard(tpow * images["T"], limit, "a power of the image of T")
        c = h.coeffs.get(k)
        if c is not None:
            out = out + _eval_in_extension(c, images["U"], images["V"], limit) * tpow
    return out


def _check_relation(A, images):
    """Image of r*U - s*V - 1 under u, v -> images."""
    return images["U"] * A.r - images["V"] * A.s - 1


def verify_stable_iso(cert, limit=DEFAULT_TERM_LIMIT):
    """Re-check every stored identity of a certificate by exact arithmetic.

    Returns a dict of named boolean checks and sets the two flags on
    ``cert``. Round trips compose the two maps on every generator.
    """
    A, B = cert.source, cert.target
    a, b = cert.partition
    a2, b2 = cert.partition_target
    th, thi = cert.theta, cert.theta_inverse
    checks = {}
    checks["partition_source"] = a * A(B.r) + b * A(B.s) == A.one
    checks["partition_target"] = a2 * B(A.r) + b2 * B(A.s) == B.one
    checks["relation_source"] = _check_relation(A, th).is_zero()
    checks["relation_target"] = _check_relation(B, thi).is_zero()
    var_a = thi["U"].var
    var_b = th["U"].var
    # images of T recomputed from their defining formula
    expect = _theta_images(A, B, a, b, a2, b2, var_b, limit)
    checks["theta_formula"] = all(expect[k] == th[k] for k in ("U", "V", "T"))
    expect = _theta_images(B, A, a2, b2, a, b, var_a, limit)
    checks["theta_inverse_formula"] = all(expect[k] == thi[k] for k in ("U", "V", "T"))
    for name, fwd, bwd, src, vs in (
        ("source", th, thi, A, var_a),
        ("target", thi, th, B, var_b),
    ):
        tv = ExtendedElement.generator(src, vs)
        back_u = _apply_on_extended(fwd["U"], bwd, limit)
        back_v = _apply_on_extended(fwd["V"], bwd, limit)
        checks[f"roundtrip_{name}_u"] = back_u == ExtendedElement.constant(src.u, vs)
        checks[f"roundtrip_{name}_v"] = back_v == ExtendedElement.constant(src.v, vs)
        checks[f"roundtrip_{name}_base"] = all(
            _apply_on_extended(
                _apply_on_extended(ExtendedElement.constant(src.gen(g), vs), fwd, limit),
                bwd, limit,
            ) == ExtendedElement.constant(src.gen(g), vs)
            for g in src.base.gens
        )
        back_t = _apply_on_extended(fwd["T"], bwd, limit)
        checks[f"roundtrip_{name}_t"] = back_t == tv
    cert.checks = checks
    cert.relations_verified = all(
        checks[k] for k in ("partition_source", "partition_target",
                            "relation_source", "relation_target")
    )
    cert.roundtrip_verified = all(checks.values())
    return checks


def build_stable_iso(A, B, nmax=DEFAULT_NMAX, limit=DEFAULT_TERM_LIMIT,
                     var_source="T", var_target="T2"):
    """A verified StableIsoCertificate for A[T] ~ B[T2].

    Raises RadicalBudgetError if equal radicals are not established within
    nmax and VerificationError (naming the failed check) if any identity
    fails.
    """
    if A.base != B.base:
        raise RingMismatchError("both rings must have the same base ring")
    data = radicals_equal(A.r, A.s, B.r, B.s, nmax)
    if data is None:
        raise RadicalBudgetError(
            f"rad({A.r}, {A.s}) = rad({B.r}, {B.s}) not established with nmax={nmax}"
        )
    a, b = unit_partition(A, B.r, B.s, data.first_in_second)
    a2, b2 = unit_partition(B, A.r, A.s, data.second_in_first)
    theta = _theta_images(A, B, a, b, a2, b2, var_target, limit)
    theta_inv = _theta_images(B, A, a2, b2, a, b, var_source, limit)
    cert = StableIsoCertificate(A, B, data, (a, b), (a2, b2), theta, theta_inv)
    checks = verify_stable_iso(cert, limit)
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise VerificationError("stable isomorphism check failed: " + ", ".join(failed))
    return cert


# -- the Laurent embedding --


@dataclass
class SS1Report:
    """Outcome of mapping a Danielewski ring into a Laurent polynomial ring."""

    p: int
    q: int
    m: int
    n: int
    relation_images: dict
    relations_ok: bool
    image_of_x: str
    surjectivity_verified: bool = False
    open_items: list = field(default_factory=list)


def ss1_map_check(p, q, m, n):
    """Check that X^pY - Z^q and X^mU - Y^nV - 1 vanish under the Laurent map.

    The map is X -> X, Z -> Z, Y -> Z^q X^-p, V -> V,
    U -> (Y^n V + 1) X^-m. Only well-definedness is checked; whether the
    map is onto its claimed image is recorded as open.
    """
    for k in (p, q, m, n):
        if not isinstance(k, int) or k < 1:
            raise InputError("p, q, m, n must be positive integers")
    P = PolyRing(("X", "Y", "Z"), QQ)
    X, Y, Z = P.gens_polys()
    base = HypersurfaceRing(("X", "Y", "Z"), X**p * Y - Z**q, "Z")
    A = DanielewskiRing(base, base.gen("X") ** m, base.gen("Y") ** n)
    L = LaurentRing(("X", "Z", "V"), "X", QQ)
    LX, LZ, LV = L.gens_polys()
    xinv = L.gen_inverse()
    img_y = LZ**q * xinv**p
    img_u = (img_y**n * LV + 1) * xinv**m
    images = {"X": LX, "Y": img_y, "Z": LZ, "U": img_u, "V": LV}
    rel_f = base.F.substitute({k: images[k] for k in ("X", "Y", "Z")})
    rel_a = A.relation.substitute(images)
    img_x = P.gen("X").substitute({k: images[k] for k in ("X", "Y", "Z")})
    rel = {"F": str(rel_f), "A": str(rel_a)}
    ok = rel_f.is_zero() and rel_a.is_zero()
    return SS1Report(
        p, q, m, n, rel, ok, str(img_x),
        open_items=["surjectivity onto the claimed Laurent subring is not verified"],
    )
