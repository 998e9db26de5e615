"""Hypersurface quotient rings R = k[X_1..X_n]/(F).

F must have a nonzero scalar leading coefficient as a polynomial in a
designated variable w. Residue classes are then represented uniquely by
polynomials of w-degree below deg_w(F), obtained by one-polynomial
division.
"""

from __future__ import annotations

from .errors import InputError, InvalidRingError, RingMismatchError, VerificationError
from .groebner import GREVLEX, MonomialOrder, buchberger, is_proper, is_zero_dimensional
from fractions import Fraction

from .poly import QQ, ParamFraction, PolyRing, Polynomial

__all__ = ["HypersurfaceRing", "RElement"]


class HypersurfaceRing:
    """k[gens]/(F) with normal forms reduced in the designated variable.

    ``irreducible`` and ``units_are_scalars`` are declared assumptions that
    are recorded but never checked.
    """

    def __init__(self, gens, relation, designated, field=QQ,
                 irreducible=True, units_are_scalars=True):
        self.poly_ring = PolyRing(gens, field)
        if isinstance(relation, Polynomial):
            relation = self.poly_ring.convert_poly(relation)
        self.F = relation
        self.field = field
        self.w = designated
        if designated not in self.poly_ring.index:
            raise InputError(f"designated variable {designated!r} is not a ring variable")
        self.irreducible = irreducible
        self.units_are_scalars = units_are_scalars
        if relation.total_degree() < 1:
            raise InvalidRingError("the relation must be nonconstant")
        coeffs = relation.coefficients_in(designated)
        self.degree = max(coeffs)
        lead = coeffs[self.degree]
        if self.degree < 1 or not lead.is_constant():
            raise InvalidRingError(
                f"{relation} is not monic (up to a scalar) in {designated}"
            )
        # w^d == sum_j tail[j] * w^j with deg_w(tail[j]) == 0
        inv = field.one / lead.constant_coeff()
        self._tail = {
            j: -c.scale(inv) for j, c in coeffs.items() if j < self.degree
        }
        self._wi = self.poly_ring.index[designated]
        self.w_first = MonomialOrder.with_first("lex", self.poly_ring, designated)
        self._quotient_cache = {}
        self.zero = RElement(self, self.poly_ring.zero)
        self.one = RElement(self, self.poly_ring.one)

    @property
    def gens(self):
        return self.poly_ring.gens

    def __eq__(self, other):
        return (
            isinstance(other, HypersurfaceRing)
            and other.poly_ring == self.poly_ring
            and other.F == self.F
            and other.w == self.w
        )

    def __hash__(self):
        return hash((self.poly_ring, self.F, self.w))

    def __repr__(self):
        return f"{self.field}[{','.join(self.gens)}]/({self.F})"

    def with_field(self, field):
        """The same ring with coefficients extended to ``field``."""
        ring = PolyRing(self.gens, field)
        return HypersurfaceRing(self.gens, ring.convert_poly(self.F), self.w, field,
                                self.irreducible, self.units_are_scalars)

    # -- normal forms --

    def reduce_poly(self, p):
        """Representative of p mod F with w-degree below deg_w(F)."""
        d = self.degree
        wi = self._wi
        if all(e[wi] < d for e in p.terms):
            return p
        # group by w-degree, then eliminate from the top down
        by_deg = {}
        for e, c in p.terms.items():
            k = e[wi]
            by_deg.setdefault(k, {})[e[:wi] + (0,) + e[wi + 1:]] = c
        top = max(by_deg)
        for k in range(top, d - 1, -1):
            coeff = by_deg.pop(k, None)
            if not coeff:
                continue
            for j, t in self._tail.items():
                acc = by_deg.setdefault(k - d + j, {})
                for e1, c1 in coeff.items():
                    for e2, c2 in t.terms.items():
                        e = tuple([a + b for a, b in zip(e1, e2)])
                        v = acc.get(e)
                        if v is None:
                            acc[e] = c1 * c2
                        else:
                            v = v + c1 * c2
                            if v:
                                acc[e] = v
                            else:
                                del acc[e]
        terms = {}
        for k, coeff in by_deg.items():
            for e, c in coeff.items():
                terms[e[:wi] + (k,) + e[wi + 1:]] = c
        return self.poly_ring._make(terms)

    def __call__(self, x):
        if isinstance(x, RElement):
            if x.ring == self:
                return x
            if x.ring.gens == self.gens and x.ring.F == self.F:
                return RElement(self, self.reduce_poly(self.poly_ring.convert_poly(x.rep)))
            raise RingMismatchError(f"{x} is not in {self}")
        if isinstance(x, Polynomial):
            if x.ring != self.poly_ring:
                x = self.poly_ring.convert_poly(x)
            return RElement(self, self.reduce_poly(x))
        return RElement(self, self.poly_ring.constant(x))

    nf = __call__

    def gen(self, name):
        return self(self.poly_ring.gen(name.upper() if name not in self.gens else name))

    def gens_elements(self):
        return tuple(self.gen(g) for g in self.gens)

    # -- division --

    def _division_basis(self, a):
        rep = a.rep
        gb = self._quotient_cache.get(rep)
        if gb is None:
            gb = buchberger((rep, self.F), self.w_first)
            self._quotient_cache[rep] = gb
        return gb

    def quo_rem(self, a, b):
        """b = a*q + rem in R, with rem the canonical representative of b mod aR.

        The remainder is the normal form modulo a Groebner basis of (a, F)
        under lex with w first, so it is already reduced in w and depends
        only on the class of b modulo aR.
        """
        if a.ring != self or b.ring != self:
            raise RingMismatchError("elements of another ring")
        if a.is_zero():
            raise ZeroDivisionError("division by zero in R")
        gb = self._division_basis(a)
        quots, rem = gb.reduce(b.rep, track=True)
        q = self.poly_ring.zero
        for qk, row in zip(quots, gb.cofactors):
            if qk.terms and row[0].terms:
                q = q + qk * row[0]
        return RElement(self, self.reduce_poly(q)), RElement(self, rem)

    def divides(self, a, b):
        """Some q with a*q == b in R, else None."""
        q, rem = self.quo_rem(a, b)
        if not rem.is_zero():
            return None
        if a * q != b:
            raise VerificationError(f"quotient {q} fails to reproduce {b}")
        return q

    # -- ideal-theoretic checks --

    def ideal_gens(self, elements):
        """Ambient generators of the ideal (elements) + (F)."""
        return tuple(e.rep for e in elements if not e.is_zero()) + (self.F,)

    def height2_check(self, r, s):
        """(r, s) has height 2 in this two-dimensional ring.

        Realized as: (r, s, F) is proper and zero-dimensional in the
        ambient polynomial ring.
        """
        if r.is_zero() or s.is_zero():
            raise InputError("height2_check needs nonzero elements")
        gens = self.ideal_gens([r, s])
        if not is_proper(gens, GREVLEX):
            return False
        return is_zero_dimensional(gens, GREVLEX)


class RElement:
    """A residue class in a HypersurfaceRing, stored by its normal form."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring, rep):
        self.ring = ring
        self.rep = rep

    def _foreign(self, other):
        return not isinstance(other, (RElement, Polynomial, int, Fraction, ParamFraction, type(QQ.one)))

    def _coerce(self, other):
        if isinstance(other, RElement):
            if other.ring != self.ring:
                raise RingMismatchError("elements of different rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        if self._foreign(other):
            return NotImplemented
        return RElement(self.ring, self.rep + self._coerce(other).rep)

    __radd__ = __add__

    def __sub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return RElement(self.ring, self.rep - self._coerce(other).rep)

    def __rsub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self._coerce(other) - self

    def __neg__(self):
        return RElement(self.ring, -self.rep)

    def __mul__(self, other):
        if self._foreign(other):
            return NotImplemented
        if not isinstance(other, (RElement, Polynomial)):
            return RElement(self.ring, self.rep * other)
        return RElement(self.ring, self.ring.reduce_poly(self.rep * self._coerce(other).rep))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, RElement):
            return self.ring == other.ring and self.rep == other.rep
        try:
            return self.rep == self.ring(other).rep
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return not self.rep.is_zero()

    def is_zero(self):
        return self.rep.is_zero()

    def is_scalar(self):
        return self.rep.is_constant()

    def scalar(self):
        return self.rep.constant_coeff()

    def format(self):
        return self.rep.format([g.lower() for g in self.ring.gens])

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RElement({self.format()!r})"
