"""Exact multivariate polynomials.

Polynomials are immutable maps from exponent tuples to nonzero
coefficients. Coefficients live in one of two exact fields:

* ``QQ``: the rationals, backed by ``gmpy2.mpq``;
* ``ParamField(params)``: rational functions in a few parameter symbols,
  stored as :class:`ParamFraction` numerator/denominator pairs.

A :class:`LaurentRing` is a polynomial ring in which one designated
variable may carry negative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from gmpy2 import mpq

from .errors import MissingImageError, RingMismatchError, UnknownVariableError

__all__ = [
    "QQ",
    "RationalField",
    "ParamField",
    "ParamFraction",
    "PolyRing",
    "Polynomial",
    "LaurentRing",
    "LaurentPolynomial",
]


def _to_mpq(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class RationalField:
    """The field of rational numbers."""

    name = "QQ"
    params = ()

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def convert(self, x):
        if isinstance(x, ParamFraction):
            if x.is_constant():
                return x.constant_value()
            raise RingMismatchError(f"cannot convert {x} to a rational")
        return _to_mpq(x)

    def is_element(self, x):
        return type(x) is type(self.zero)

    def format(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class ParamField:
    """Rational functions over QQ in the given parameter symbols."""

    def __init__(self, params):
        self.params = tuple(params)
        if not self.params:
            raise ValueError("ParamField needs at least one parameter")
        self.param_ring = PolyRing(self.params, QQ)
        self.name = "QQ(" + ",".join(self.params) + ")"
        self.zero = ParamFraction(self, self.param_ring.zero, self.param_ring.one, True)
        self.one = ParamFraction(self, self.param_ring.one, self.param_ring.one, True)

    def convert(self, x):
        if isinstance(x, ParamFraction):
            if x.field == self:
                return x
            if x.is_constant():
                return self.convert(x.constant_value())
            raise RingMismatchError(f"{x} is not in {self.name}")
        if isinstance(x, Polynomial):
            if x.ring != self.param_ring:
                raise RingMismatchError(f"{x} is not a polynomial in {self.params}")
            return ParamFraction(self, x, self.param_ring.one)
        return ParamFraction(
            self, self.param_ring.constant(_to_mpq(x)), self.param_ring.one, True
        )

    def param(self, name):
        return ParamFraction(self, self.param_ring.gen(name), self.param_ring.one, True)

    def is_element(self, x):
        return isinstance(x, ParamFraction) and x.field == self

    def format(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, ParamField) and other.params == self.params

    def __hash__(self):
        return hash(("ParamField", self.params))

    def __repr__(self):
        return self.name


# -- univariate helpers used to cancel common factors in one parameter --


def _udense(p):
    """Dense coefficient list (low degree first) of a univariate Polynomial."""
    deg = max(e[0] for e in p.terms)
    out = [mpq(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def _utrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(_utrim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return _utrim(q), a


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _from_udense(ring, coeffs):
    return ring.from_dict({(i,): c for i, c in enumerate(coeffs) if c})


class ParamFraction:
    """A quotient of two polynomials in the parameters of a ParamField.

    Normalization divides out common monomial factors (and, for a single
    parameter, the full univariate gcd), then scales the denominator to a
    primitive integer polynomial with positive leading coefficient.
    Equality is decided by cross-multiplication.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not normalized:
            num, den = self._normalize(field, num, den)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(field, num, den):
        ring = field.param_ring
        if num.is_zero():
            return ring.zero, ring.one
        if len(field.params) == 1:
            if not den.is_constant():
                g = _ugcd(_udense(num), _udense(den))
                if len(g) > 1:
                    num = _from_udense(ring, _udivmod(_udense(num), g)[0])
                    den = _from_udense(ring, _udivmod(_udense(den), g)[0])
        else:
            shift = tuple(
                min(e[i] for e in list(num.terms) + list(den.terms))
                for i in range(len(field.params))
            )
            if any(shift):
                num = num.shift_exponents(tuple(-k for k in shift))
                den = den.shift_exponents(tuple(-k for k in shift))
        coeffs = list(den.terms.values())
        scale = mpq(
            reduce(lcm, (int(c.denominator) for c in coeffs), 1),
            reduce(gcd, (int(c.numerator) for c in coeffs), 0),
        )
        lead = den.terms[max(den.terms)]
        if lead < 0:
            scale = -scale
        if scale != 1:
            num = num.scale(scale)
            den = den.scale(scale)
        return num, den

    def _foreign(self, other):
        if isinstance(other, Polynomial):
            return other.ring != self.field.param_ring
        return not isinstance(other, (ParamFraction, int, Fraction, type(QQ.one)))

    def _coerce(self, other):
        if isinstance(other, ParamFraction):
            if other.field != self.field:
                raise RingMismatchError(f"{other.field} vs {self.field}")
            return other
        return self.field.convert(other)

    def __add__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        if self.den == other.den:
            return ParamFraction(self.field, self.num + other.num, self.den)
        return ParamFraction(
            self.field,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return ParamFraction(self.field, -self.num, self.den, True)

    def __sub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        if not self.num.terms or not other.num.terms:
            return self.field.zero
        return ParamFraction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in " + self.field.name)
        return ParamFraction(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return (self.field.one / self) ** (-k)
        return ParamFraction(self.field, self.num**k, self.den**k)

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (RingMismatchError, TypeError, ValueError):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self._hash is None:
            if len(self.field.params) == 1:
                self._hash = hash((self.num, self.den))
            else:
                point = {p: mpq(2 * i + 1, 3 * i + 5) for i, p in enumerate(self.field.params)}
                d = self.den.evaluate(point)
                self._hash = hash(self.num.evaluate(point) / d) if d else 0
        return self._hash

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_coeff() / self.den.constant_coeff()

    def evaluate(self, values):
        """Specialize parameters to rationals; raises ZeroDivisionError on poles."""
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {values}")
        return self.num.evaluate(values) / d

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"ParamFraction({self})"


def _format_coeff(c):
    """Split a coefficient into (negative, text, is_atom)."""
    if isinstance(c, ParamFraction):
        if c.is_constant():
            c = c.constant_value()
        elif c.den.is_one() and len(c.num.terms) == 1:
            (e, k), = c.num.terms.items()
            if k < 0:
                return True, str(-c.num), True
            return False, str(c.num), True
        else:
            return False, str(c), False
    if c < 0:
        return True, str(-c), True
    return False, str(c), True


class PolyRing:
    """A polynomial ring over an exact field in named variables."""

    def __init__(self, gens, field=QQ):
        self.gens = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError(f"duplicate variable names in {self.gens}")
        self.field = field
        self.nvars = len(self.gens)
        self.index = {g: i for i, g in enumerate(self.gens)}
        self._zero_exp = (0,) * self.nvars
        self.zero = self._make({})
        self.one = self._make({self._zero_exp: field.one})

    element_class = None  # set below

    def _make(self, terms):
        return self.element_class(self, terms)

    def from_dict(self, d):
        conv = self.field.convert
        terms = {}
        for e, c in d.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong length for {self.gens}")
            c = conv(c)
            if c:
                terms[e] = c
        return self._make(terms)

    def constant(self, c):
        c = self.field.convert(c)
        return self._make({self._zero_exp: c} if c else {})

    def monomial(self, exp, c=None):
        c = self.field.one if c is None else self.field.convert(c)
        return self._make({tuple(exp): c} if c else {})

    def gen(self, name):
        if name not in self.index:
            raise UnknownVariableError(f"unknown variable {name!r}; ring has {self.gens}")
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return self._make({tuple(e): self.field.one})

    def gens_polys(self):
        return tuple(self.gen(g) for g in self.gens)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return self.convert_poly(x)
        return self.constant(x)

    def convert_poly(self, p):
        """Map a polynomial from another ring by variable name."""
        if not isinstance(p, Polynomial):
            return self.constant(p)
        idx = []
        for i, g in enumerate(p.ring.gens):
            if g not in self.index:
                if any(e[i] for e in p.terms):
                    raise UnknownVariableError(f"variable {g!r} not in {self.gens}")
                idx.append(None)
            else:
                idx.append(self.index[g])
        conv = self.field.convert
        terms = {}
        for e, c in p.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            terms[tuple(ne)] = conv(c)
        return self._make(terms)

    def with_field(self, field):
        return PolyRing(self.gens, field)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.gens == self.gens
            and other.field == self.field
        )

    def __hash__(self):
        return hash((type(self).__name__, self.gens, self.field))

    def __repr__(self):
        return f"{self.field}[{','.join(self.gens)}]"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion --

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self.ring._make(out)

    __radd__ = __add__

    def __neg__(self):
        return self.ring._make({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self.ring._make(out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field.convert(other))
        other = self._coerce(other)
        out = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self.ring._make({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        if not c:
            return self.ring.zero
        return self.ring._make({e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp, c):
        """Multiply by the single term c * x^exp."""
        return self.ring._make(
            {tuple([a + b for a, b in zip(e, exp)]): v * c for e, v in self.terms.items()}
        )

    def shift_exponents(self, shift):
        return self.ring._make(
            {tuple([a + b for a, b in zip(e, shift)]): c for e, c in self.terms.items()}
        )

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant():
                raise ValueError("polynomial division needs a constant divisor")
            other = other.constant_coeff()
        other = self.ring.field.convert(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self.scale(self.ring.field.one / other)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if len(self.terms) == 1:
                return self._monomial_inverse() ** (-k)
            raise ValueError("negative power of a non-monomial")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _monomial_inverse(self):
        raise ValueError("negative exponents need a LaurentRing")

    # -- comparison --

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ValueError, RingMismatchError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def is_one(self):
        return self.terms == {self.ring._zero_exp: self.ring.field.one}

    def constant_coeff(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var):
        i = self._var_index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self):
        """Names of variables that actually occur."""
        return tuple(
            g for i, g in enumerate(self.ring.gens) if any(e[i] for e in self.terms)
        )

    def _var_index(self, var):
        try:
            return self.ring.index[var]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {var!r}; ring has {self.ring.gens}")

    def coefficients_in(self, var):
        """Split into {k: coefficient of var^k} with the coefficients in the same ring."""
        i = self._var_index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: self.ring._make(t) for k, t in out.items()}

    # -- calculus and evaluation --

    def derivative(self, var):
        i = self._var_index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return self.ring._make(out)

    def evaluate(self, values):
        """Evaluate at field values given by variable name (all variables)."""
        field = self.ring.field
        vals = []
        for g in self.ring.gens:
            if g in values:
                vals.append(values[g])
            else:
                vals.append(None)
        total = field.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    if v is None:
                        raise MissingImageError("no value for a variable in evaluate()")
                    term = term * v**k
            total = total + term
        return total

    def substitute(self, images):
        """Ring homomorphism defined by images of variables.

        ``images`` maps variable names to Polynomials (all in one target
        ring) or scalars. Variables without an image are kept when the
        target ring contains a variable of the same name.
        """
        target = None
        for v in images.values():
            if isinstance(v, Polynomial):
                if target is None:
                    target = v.ring
                elif v.ring != target:
                    raise RingMismatchError("images lie in different rings")
        if target is None:
            target = self.ring
        imgs = []
        for i, g in enumerate(self.ring.gens):
            if g in images:
                imgs.append(target(images[g]) if not isinstance(images[g], Polynomial) else images[g])
            elif g in target.index:
                imgs.append(target.gen(g))
            elif any(e[i] for e in self.terms):
                raise MissingImageError(f"no image for variable {g!r}")
            else:
                imgs.append(None)
        for g in images:
            if g not in self.ring.index:
                raise UnknownVariableError(f"unknown variable {g!r}; ring has {self.ring.gens}")
        powers = [{0: target.one, 1: im} for im in imgs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * imgs[i]
            return cache[k]

        conv = target.field.convert
        out = target.zero
        for e, c in self.terms.items():
            term = target.constant(conv(c))
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # -- printing --

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def format(self, names=None):
        names = names or self.ring.gens
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            neg, cs, atom = _format_coeff(c)
            if not mono:
                body = cs if atom else f"({cs})"
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}" if atom else f"({cs})*{mono}"
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r} in {self.ring!r})"


PolyRing.element_class = Polynomial


class LaurentRing(PolyRing):
    """Polynomial ring in which ``laurent_var`` may have negative exponents."""

    def __init__(self, gens, laurent_var, field=QQ):
        super().__init__(gens, field)
        if laurent_var not in self.index:
            raise UnknownVariableError(f"{laurent_var!r} not among {self.gens}")
        self.laurent_var = laurent_var
        self.laurent_index = self.index[laurent_var]

    def from_dict(self, d):
        p = super().from_dict(d)
        for e in p.terms:
            for i, k in enumerate(e):
                if k < 0 and i != self.laurent_index:
                    raise ValueError(f"only {self.laurent_var} may have negative exponents")
        return p

    def gen_inverse(self):
        e = [0] * self.nvars
        e[self.laurent_index] = -1
        return self._make({tuple(e): self.field.one})

    def __eq__(self, other):
        return super().__eq__(other) and other.laurent_var == self.laurent_var

    def __hash__(self):
        return hash((super().__hash__(), self.laurent_var))

    def __repr__(self):
        return f"{self.field}[{','.join(self.gens)}, {self.laurent_var}^-1]"


class LaurentPolynomial(Polynomial):
    __slots__ = ()

    def _monomial_inverse(self):
        (e, c), = self.terms.items()
        li = self.ring.laurent_index
        if any(k for i, k in enumerate(e) if i != li):
            raise ValueError(f"only monomials in {self.ring.laurent_var} are invertible")
        return self.ring._make({tuple(-k for k in e): self.ring.field.one / c})


LaurentRing.element_class = LaurentPolynomial
