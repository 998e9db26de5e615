"""Buchberger's algorithm with cofactor tracking.

Every basis element carries the combination of the original generators
that produces it, so membership answers come with certificates that can
be checked by one multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from heapq import heapify, heappop, heappush

from .errors import ImproperIdealError, InputError, RingMismatchError, VerificationError
from .poly import Polynomial

__all__ = [
    "MonomialOrder",
    "LEX",
    "GRLEX",
    "GREVLEX",
    "GroebnerBasis",
    "divide_with_cofactors",
    "buchberger",
    "ideal_member",
    "ideal_equal",
    "radical_power_member",
    "is_proper",
    "is_zero_dimensional",
    "s_polynomial",
    "is_groebner_basis",
    "leading_exponent",
]

DEFAULT_NMAX = 16


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``kind`` plus a variable priority permutation.

    ``perm`` lists variable indices from most to least significant; ``None``
    means the ring's own variable order.
    """

    kind: str = "grevlex"
    perm: tuple | None = None
    key: object = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "grevlex"):
            raise InputError(f"unknown monomial order {self.kind!r}")
        perm = self.perm
        kind = self.kind
        if perm is None:
            if kind == "lex":
                key = tuple
            elif kind == "grlex":
                def key(e):
                    return (sum(e),) + tuple(e)
            else:
                def key(e):
                    return (sum(e),) + tuple([-k for k in reversed(e)])
        else:
            perm = tuple(perm)
            rev = tuple(reversed(perm))
            if kind == "lex":
                def key(e):
                    return tuple([e[i] for i in perm])
            elif kind == "grlex":
                def key(e):
                    return (sum(e),) + tuple([e[i] for i in perm])
            else:
                def key(e):
                    return (sum(e),) + tuple([-e[i] for i in rev])
        object.__setattr__(self, "key", key)

    @classmethod
    def with_first(cls, kind, ring, first):
        """Order of the given kind with variable ``first`` most significant."""
        i = ring.index[first]
        return cls(kind, (i,) + tuple(j for j in range(ring.nvars) if j != i))


LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")
GREVLEX = MonomialOrder("grevlex")


# -- raw helpers on {exponent: coefficient} dicts --


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _pmul(a, b):
    out = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple([x + y for x, y in zip(e1, e2)])
            v = get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return {e: c for e, c in out.items() if c}


def _padd_scaled(acc, b, mono, c):
    """acc += c * x^mono * b, in place."""
    for e, v in b.items():
        ne = tuple([x + y for x, y in zip(e, mono)])
        w = acc.get(ne)
        if w is None:
            acc[ne] = c * v
        else:
            w = w + c * v
            if w:
                acc[ne] = w
            else:
                del acc[ne]


def _padd_prod(acc, a, b, sign=1):
    """acc += sign * a * b, in place."""
    for e1, c1 in a.items():
        _padd_scaled(acc, b, e1, c1 if sign == 1 else -c1)


def _leading(terms, key):
    return max(terms, key=key)


def leading_exponent(p: Polynomial, order: MonomialOrder = GREVLEX):
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    return _leading(p.terms, order.key)


def _reduce(f, basis, key, quotients=None):
    """Fully reduce ``f`` by ``basis`` = [(lm, lc, terms)].

    Returns the remainder; if ``quotients`` is a list of dicts, the
    multipliers are accumulated there.
    """
    p = dict(f)
    heap = [(tuple([-k for k in key(e)]), e) for e in p]
    heapify(heap)
    rem = {}
    while heap:
        _, e = heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        for k, (lm, lc, g) in enumerate(basis):
            if _divides(lm, e):
                mono = tuple([x - y for x, y in zip(e, lm)])
                q = c / lc
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    ne = tuple([x + y for x, y in zip(ge, mono)])
                    v = p.get(ne)
                    if v is None:
                        p[ne] = -q * gc
                        heappush(heap, (tuple([-k for k in key(ne)]), ne))
                    else:
                        v = v - q * gc
                        if v:
                            p[ne] = v
                        else:
                            del p[ne]
                if quotients is not None:
                    qk = quotients[k]
                    v = qk.get(mono)
                    v = q if v is None else v + q
                    if v:
                        qk[mono] = v
                    else:
                        del qk[mono]
                break
        else:
            rem[e] = c
    return rem


def _check_ring(polys):
    ring = polys[0].ring
    for p in polys:
        if not isinstance(p, Polynomial) or p.ring != ring:
            raise RingMismatchError("all polynomials must share one ring")
    return ring


def divide_with_cofactors(f, divisors, order=GREVLEX):
    """Multivariate division: f = sum(q_i * d_i) + remainder.

    No term of the remainder is divisible by a leading term of a divisor.
    """
    if not divisors:
        raise InputError("empty divisor list")
    ring = _check_ring([f, *divisors])
    if any(d.is_zero() for d in divisors):
        raise InputError("zero divisor")
    key = order.key
    basis = []
    for d in divisors:
        lm = _leading(d.terms, key)
        basis.append((lm, d.terms[lm], d.terms))
    quots = [{} for _ in divisors]
    rem = _reduce(f.terms, basis, key, quots)
    return [ring._make(q) for q in quots], ring._make(rem)


def s_polynomial(f, g, order=GREVLEX):
    key = order.key
    lf, lg = _leading(f.terms, key), _leading(g.terms, key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    return f.mul_term(mf, f.ring.field.one / f.terms[lf]) - g.mul_term(
        mg, g.ring.field.one / g.terms[lg]
    )


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis with optional cofactor matrix.

    ``cofactors[k][i]`` is the multiplier of ``generators[i]`` in
    ``basis[k]``.
    """

    generators: tuple
    basis: tuple
    cofactors: tuple | None
    order: MonomialOrder

    @property
    def ring(self):
        return self.generators[0].ring

    def is_unit_ideal(self):
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def leading_exponents(self):
        return [_leading(g.terms, self.order.key) for g in self.basis]

    def reduce(self, f, track=False):
        """Normal form of f; with ``track`` also the quotient per basis element."""
        key = self.order.key
        basis = [(lm, g.terms[lm], g.terms) for lm, g in zip(self.leading_exponents(), self.basis)]
        quots = [{} for _ in basis] if track else None
        rem = f.ring._make(_reduce(f.terms, basis, key, quots))
        if track:
            return [f.ring._make(q) for q in quots], rem
        return rem

    def contains(self, f):
        return self.reduce(f).is_zero()

    def verify_cofactors(self):
        for g, row in zip(self.basis, self.cofactors):
            total = g.ring.zero
            for c, gen in zip(row, self.generators):
                total = total + c * gen
            if total != g:
                return False
        return True


def _buchberger_raw(gens, key, field, track):
    """Core loop on raw dicts. Returns [(terms, cofactor dict)]."""
    one = field.one
    m = len(gens)
    G = []  # (lm, lc, terms, cof) with cof = {gen index: terms}
    pairs = set()

    def add(terms, cof):
        lm = _leading(terms, key)
        idx = len(G)
        G.append((lm, terms[lm], terms, cof))
        for i in range(idx):
            pairs.add((i, idx))

    zero_exp = None
    for i, g in enumerate(gens):
        if not g:
            continue
        zero_exp = zero_exp or (0,) * len(next(iter(g)))
        add(dict(g), {i: {zero_exp: one}} if track else None)
        if len(g) == 1 and next(iter(g)) == zero_exp:
            break  # unit ideal

    def lcm_of(pair):
        a, b = G[pair[0]][0], G[pair[1]][0]
        return tuple([max(x, y) for x, y in zip(a, b)])

    while pairs:
        if any(sum(g[0]) == 0 for g in G):
            break
        pair = min(pairs, key=lambda p: (key(lcm_of(p)), p))
        pairs.discard(pair)
        i, j = pair
        lmi, lci, ti, ci = G[i]
        lmj, lcj, tj, cj = G[j]
        lcm = lcm_of(pair)
        # product criterion
        if all(x == 0 or y == 0 for x, y in zip(lmi, lmj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if _divides(G[k][0], lcm):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        mi = tuple([x - y for x, y in zip(lcm, lmi)])
        mj = tuple([x - y for x, y in zip(lcm, lmj)])
        s = {}
        _padd_scaled(s, ti, mi, one / lci)
        _padd_scaled(s, tj, mj, -one / lcj)
        if not s:
            continue
        basis = [(g[0], g[1], g[2]) for g in G]
        quots = [{} for _ in G] if track else None
        h = _reduce(s, basis, key, quots)
        if not h:
            continue
        cof = None
        if track:
            cof = {}
            for idx, c in ci.items():
                acc = cof.setdefault(idx, {})
                _padd_scaled(acc, c, mi, one / lci)
            for idx, c in cj.items():
                acc = cof.setdefault(idx, {})
                _padd_scaled(acc, c, mj, -one / lcj)
            for k, q in enumerate(quots):
                if q:
                    for idx, c in G[k][3].items():
                        acc = cof.setdefault(idx, {})
                        _padd_prod(acc, q, c, -1)
            cof = {idx: c for idx, c in cof.items() if c}
        add(h, cof)

    # minimal basis
    G.sort(key=lambda g: key(g[0]))
    minimal = []
    for g in G:
        if not any(_divides(h[0], g[0]) for h in minimal):
            minimal.append(g)
    # inter-reduce and make monic
    out = []
    for k, (lm, lc, terms, cof) in enumerate(minimal):
        others = [(h[0], h[1], h[2]) for idx, h in enumerate(minimal) if idx != k]
        quots = [{} for _ in others] if track else None
        red = _reduce(terms, others, key, quots)
        # leading term is untouched since the basis is minimal
        lc = red[lm]
        inv = one / lc
        red = {e: c * inv for e, c in red.items()}
        newcof = None
        if track:
            newcof = {}
            for idx, c in cof.items():
                _padd_scaled(newcof.setdefault(idx, {}), c, (0,) * len(lm), inv)
            other_cofs = [h[3] for idx, h in enumerate(minimal) if idx != k]
            for q, ocof in zip(quots, other_cofs):
                if q:
                    for idx, c in ocof.items():
                        acc = newcof.setdefault(idx, {})
                        _padd_prod(acc, {e: v * inv for e, v in q.items()}, c, -1)
        out.append((red, newcof))
    return out, m


@lru_cache(maxsize=2048)
def _cached_gb(gens, order, track):
    ring = gens[0].ring
    raw, m = _buchberger_raw([g.terms for g in gens], order.key, ring.field, track)
    basis = tuple(ring._make(t) for t, _ in raw)
    cofactors = None
    if track:
        cofactors = tuple(
            tuple(ring._make(cof.get(i, {})) for i in range(m)) for _, cof in raw
        )
    return GroebnerBasis(gens, basis, cofactors, order)


def buchberger(gens, order=GREVLEX, track=True):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``track`` (the default) the result carries exact cofactors.
    """
    gens = tuple(gens)
    if not gens:
        raise InputError("empty generator list")
    _check_ring(list(gens))
    return _cached_gb(gens, order, bool(track))


def is_groebner_basis(basis, order=GREVLEX):
    """Buchberger's criterion: every S-polynomial reduces to 0 by division.

    Uses only division, so it can check a basis found elsewhere.
    """
    basis = [g for g in basis if not g.is_zero()]
    if not basis:
        return True
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            _, rem = divide_with_cofactors(s_polynomial(basis[i], basis[j], order), basis, order)
            if not rem.is_zero():
                return False
    return True


def _combine(gb, quots):
    ring = gb.ring
    m = len(gb.generators)
    out = []
    for i in range(m):
        acc = {}
        for q, row in zip(quots, gb.cofactors):
            if q.terms and row[i].terms:
                _padd_prod(acc, q.terms, row[i].terms)
        out.append(ring._make(acc))
    return out


def ideal_member(f, gens, order=GREVLEX):
    """Cofactors c with f = sum(c_i * gens_i), or None if f is not in the ideal."""
    gens = tuple(gens)
    _check_ring([f, *gens])
    gb = buchberger(gens, order)
    quots, rem = gb.reduce(f, track=True)
    if not rem.is_zero():
        return None
    cof = _combine(gb, quots)
    total = f.ring.zero
    for c, g in zip(cof, gens):
        total = total + c * g
    if total != f:
        raise VerificationError("membership cofactors do not reproduce f")
    return cof


def _contains_all(gens_a, gens_b, order):
    gb = buchberger(tuple(gens_a), order, track=False)
    return all(gb.contains(g) for g in gens_b)


def ideal_equal(gens_i, gens_j, order=GREVLEX):
    """True iff the two generator lists span the same ideal."""
    _check_ring([*gens_i, *gens_j])
    return _contains_all(gens_i, gens_j, order) and _contains_all(gens_j, gens_i, order)


def radical_power_member(f, gens, nmax=DEFAULT_NMAX, order=GREVLEX):
    """Smallest N <= nmax with f^N in the ideal, with cofactors; else None.

    None means "not found within the budget", not "not in the radical".
    """
    if nmax < 1:
        raise InputError("nmax must be at least 1")
    gens = tuple(gens)
    gb = buchberger(gens, order, track=False)
    power = f.ring.one
    for n in range(1, nmax + 1):
        power = power * f
        if gb.contains(power):
            return n, ideal_member(power, gens, order)
    return None


def is_proper(gens, order=GREVLEX):
    gb = buchberger(tuple(gens), order, track=False)
    return not gb.is_unit_ideal()


def is_zero_dimensional(gens, order=GREVLEX):
    """True iff the ideal has finitely many zeros over the algebraic closure."""
    gb = buchberger(tuple(gens), order, track=False)
    if gb.is_unit_ideal():
        raise ImproperIdealError("the ideal is the whole ring")
    nvars = gb.ring.nvars
    found = [False] * nvars
    for lm in gb.leading_exponents():
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            found[nz[0]] = True
    return all(found)
