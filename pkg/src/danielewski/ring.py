"""Danielewski-type rings A = R[U,V]/(rU - sV - 1).

Elements are stored in a canonical form: a finite sum of c_ij u^i v^j
where every coefficient is a normal form in R, and for i >= 1 the
coefficient is additionally the canonical remainder modulo rR. Any term
c u^i v^j with c = r q + c' is rewritten as

    c' u^i v^j + q (s v + 1) v^j u^(i-1)

scanning from the highest u-degree down. The form is unique, so two
elements are equal iff their term maps are equal, and it is linear, so
sums of canonical forms are canonical.
"""

from __future__ import annotations

from .errors import InputError, InvalidRingError, RingMismatchError, VerificationError
from .groebner import GREVLEX, ideal_member
from .hypersurface import HypersurfaceRing, RElement
from .poly import PolyRing, Polynomial

__all__ = ["DanielewskiRing", "AElement"]

_MEMO_LIMIT = 200_000


class DanielewskiRing:
    """The ring R[U,V]/(rU - sV - 1) over a HypersurfaceRing R.

    Construction checks that r, s are nonzero and that (r, s) has height
    two; pass ``check=False`` to skip the height test.
    """

    def __init__(self, base: HypersurfaceRing, r, s, check=True):
        self.base = base
        self.r = base(r)
        self.s = base(s)
        if self.r.is_zero() or self.s.is_zero():
            raise InvalidRingError("r and s must be nonzero")
        if check and not base.height2_check(self.r, self.s):
            raise InvalidRingError(f"(r, s) = ({self.r}, {self.s}) is not a height-2 ideal")
        if "U" in base.gens or "V" in base.gens:
            raise InputError("base variables may not be named U or V")
        self.ambient = PolyRing(base.gens + ("U", "V"), base.field)
        nb = len(base.gens)
        self._nb = nb
        self.relation = (
            self.ambient.convert_poly(self.r.rep) * self.ambient.gen("U")
            - self.ambient.convert_poly(self.s.rep) * self.ambient.gen("V")
            - 1
        )
        self._memo = {}
        self._div_gens = {}
        self.zero = AElement(self, {})
        self.one = AElement(self, {(0, 0): base.poly_ring.one})
        self.u = AElement(self, {})._raw({(1, 0): base.poly_ring.one})
        self.v = AElement(self, {(0, 1): base.poly_ring.one})

    @property
    def field(self):
        return self.base.field

    def __eq__(self, other):
        return (
            isinstance(other, DanielewskiRing)
            and other.base == self.base
            and other.r == self.r
            and other.s == self.s
        )

    def __hash__(self):
        return hash((self.base, self.r, self.s))

    def __repr__(self):
        return f"A_({self.r}, {self.s}) over {self.base!r}"

    # -- construction --

    def __call__(self, x):
        if isinstance(x, AElement):
            if x.ring == self:
                return x
            raise RingMismatchError("element of another Danielewski ring")
        if isinstance(x, RElement):
            x = self.base(x)
            return AElement(self, {(0, 0): x.rep} if x.rep.terms else {})
        if isinstance(x, Polynomial):
            if x.ring == self.ambient or (
                x.ring != self.base.poly_ring and ("U" in x.ring.gens or "V" in x.ring.gens)
            ):
                return self.from_ambient(self.ambient.convert_poly(x))
            return self(self.base(x))
        return self(self.base(x))

    def gen(self, name):
        name = name.upper()
        if name == "U":
            return self.u
        if name == "V":
            return self.v
        return self(self.base.gen(name))

    def from_raw(self, raw):
        """nf_A of a bivariate polynomial given as {(i, j): base coefficient}."""
        return AElement(self, {})._raw(
            {k: (c.rep if isinstance(c, RElement) else self.base.poly_ring.convert_poly(c)
                 if isinstance(c, Polynomial) else self.base(c).rep)
             for k, c in raw.items()}
        )

    def from_ambient(self, p):
        """Canonical form of a polynomial in the base variables and U, V."""
        if p.ring != self.ambient:
            p = self.ambient.convert_poly(p)
        nb = self._nb
        raw = {}
        for e, c in p.terms.items():
            raw.setdefault((e[nb], e[nb + 1]), {})[e[:nb]] = c
        mk = self.base.poly_ring._make
        return AElement(self, {})._raw({k: mk(t) for k, t in raw.items()})

    # -- the rewriting --

    def _quo_rem_r(self, c):
        hit = self._memo.get(c)
        if hit is None:
            q, rem = self.base.quo_rem(self.r, RElement(self.base, c))
            hit = (q.rep, rem.rep)
            if len(self._memo) > _MEMO_LIMIT:
                self._memo.clear()
            self._memo[c] = hit
        return hit

    def _normalize(self, raw):
        reduce_poly = self.base.reduce_poly
        work = {}
        for k, c in raw.items():
            if c.terms:
                c = reduce_poly(c)
                if c.terms:
                    work[k] = c
        if not work:
            return work
        s_rep = self.s.rep
        top = max(i for i, _ in work)
        for i in range(top, 0, -1):
            for key in sorted((k for k in work if k[0] == i), reverse=True):
                c = work[key]
                q, rem = self._quo_rem_r(c)
                if not q.terms:
                    continue
                j = key[1]
                if rem.terms:
                    work[key] = rem
                else:
                    del work[key]
                for target, add in (((i - 1, j + 1), reduce_poly(q * s_rep)), ((i - 1, j), q)):
                    if not add.terms:
                        continue
                    old = work.get(target)
                    new = add if old is None else old + add
                    if new.terms:
                        work[target] = new
                    elif old is not None:
                        del work[target]
        return work

    # -- derived operations --

    def derivative_E(self, h):
        """s*H_u + r*H_v for the canonical representative of h."""
        return AElement(self, {})._raw(_e_raw(h.terms, self.s.rep, self.r.rep))

    def kernel_test(self, h):
        """True iff s*H_u + r*H_v == 0, i.e. h is killed by the canonical LND."""
        return self.derivative_E(self(h)).is_zero()

    def divide_by_base(self, h, c):
        """Some G with c*G == h, else None.

        Decided by membership of h in (c, F, rU - sV - 1) in the ambient
        polynomial ring; the cofactor of c, normalized, is the quotient.
        """
        h = self(h)
        c = self.base(c)
        if c.is_zero():
            raise ZeroDivisionError("divide_by_base by zero")
        if h.is_zero():
            return self.zero
        gens = self._div_gens.get(c)
        if gens is None:
            gens = (self.ambient.convert_poly(c.rep), self.ambient.convert_poly(self.base.F),
                    self.relation)
            self._div_gens[c] = gens
        cof = ideal_member(h.to_ambient(), gens, GREVLEX)
        if cof is None:
            return None
        g = self.from_ambient(cof[0])
        if g * c != h:
            raise VerificationError("divide_by_base quotient does not reproduce h")
        return g


def _e_raw(terms, s_rep, r_rep):
    raw = {}
    for (i, j), c in terms.items():
        if i:
            _acc(raw, (i - 1, j), (c * s_rep).scale(i))
        if j:
            _acc(raw, (i, j - 1), (c * r_rep).scale(j))
    return raw


def _acc(d, key, p):
    old = d.get(key)
    d[key] = p if old is None else old + p


class AElement:
    """An element of a DanielewskiRing in canonical form.

    ``terms`` maps (u-exponent, v-exponent) to the base representative.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _raw(self, raw):
        return AElement(self.ring, self.ring._normalize(raw))

    def _coerce(self, other):
        if isinstance(other, AElement):
            if other.ring != self.ring:
                raise RingMismatchError("elements of different Danielewski rings")
            return other
        return self.ring(other)

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            old = out.get(k)
            if old is None:
                out[k] = c
            else:
                new = old + c
                if new.terms:
                    out[k] = new
                else:
                    del out[k]
        return AElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return AElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (AElement, RElement, Polynomial)):
            c = self.ring.field.convert(other)
            if not c:
                return self.ring.zero
            return AElement(self.ring, {k: p.scale(c) for k, p in self.terms.items()})
        other = self._coerce(other)
        raw = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                _acc(raw, (i1 + i2, j1 + j2), c1 * c2)
        return self._raw(raw)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self.ring.field.convert(other)
        return self * (self.ring.field.one / c)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- comparison --

    def __eq__(self, other):
        if isinstance(other, AElement):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure --

    def coefficient(self, i, j):
        rep = self.terms.get((i, j))
        return RElement(self.ring.base, rep if rep is not None else self.ring.base.poly_ring.zero)

    def u_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    def v_degree(self):
        return max((j for _, j in self.terms), default=-1)

    def term_count(self):
        return sum(len(c.terms) for c in self.terms.values())

    def is_in_R(self):
        """The base element this equals, or None if it involves u or v."""
        if not self.terms:
            return self.ring.base.zero
        if set(self.terms) == {(0, 0)}:
            return RElement(self.ring.base, self.terms[(0, 0)])
        return None

    def partials(self):
        """Formal (H_u, H_v) of the canonical representative, renormalized."""
        du, dv = {}, {}
        for (i, j), c in self.terms.items():
            if i:
                _acc(du, (i - 1, j), c.scale(i))
            if j:
                _acc(dv, (i, j - 1), c.scale(j))
        return self._raw(du), self._raw(dv)

    def to_ambient(self):
        terms = {}
        for (i, j), c in self.terms.items():
            for e, v in c.terms.items():
                terms[e + (i, j)] = v
        return self.ring.ambient._make(terms)

    def format(self):
        names = [g.lower() for g in self.ring.ambient.gens]
        return self.to_ambient().format(names)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"AElement({self.format()!r})"
