"""Derivations and endomorphisms of Danielewski rings.

A derivation is given by its values on u, v and the base variables; an
endomorphism by the images of the same generators. Both are checked
against the two defining relations when constructed.
"""

from __future__ import annotations

from math import factorial

from .errors import (
    BaseNotFixedError,
    InconsistencyError,
    MissingInverseError,
    NotAnAutomorphismError,
    RelationNotPreservedError,
    RingMismatchError,
    UncertifiedNilpotencyError,
)
from .groebner import GREVLEX, ideal_equal
from .ring import AElement, DanielewskiRing, _acc

__all__ = [
    "Derivation",
    "Endomorphism",
    "RAutomorphism",
    "DEFAULT_MAX_ITER",
    "canonical_E",
    "apply_derivation",
    "is_locally_nilpotent",
    "exp_derivation",
    "exp_tE",
    "recognize_multiple_of_E",
    "recognize_R_automorphism",
    "lift_base_automorphism",
    "conjugate_derivation",
    "base_automorphism_check",
    "ongelijk_ideal_check",
]

DEFAULT_MAX_ITER = 64


def _generator_names(A):
    return ("U", "V") + A.base.gens


def _eval_base_poly(p, images, target):
    """Evaluate a base polynomial at AElement images of the base variables."""
    if all(im.is_in_R() is not None for im in images):
        base_images = {g: im.is_in_R().rep for g, im in zip(target.base.gens, images)}
        return target(target.base(p.substitute(base_images)))
    powers = [{0: target.one, 1: im} for im in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    out = target.zero
    for e, c in p.terms.items():
        term = target.one * c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


class Derivation:
    """A k-derivation of a DanielewskiRing, given on generators."""

    def __init__(self, ring: DanielewskiRing, image_u, image_v, base_images=None, check=True):
        self.ring = ring
        self.image_u = ring(image_u)
        self.image_v = ring(image_v)
        base_images = base_images or {}
        self.base_images = {
            g: ring(base_images.get(g, base_images.get(g.lower(), ring.zero)))
            for g in ring.base.gens
        }
        if check:
            self._check_well_defined()

    def _check_well_defined(self):
        A = self.ring
        F = A.base.F
        # D(F(x)) = sum dF/dX_k * D(x_k)
        dF = A.zero
        for g in A.base.gens:
            img = self.base_images[g]
            if img:
                dF = dF + A(A.base(F.derivative(g))) * img
        if dF:
            raise RelationNotPreservedError(f"D(F) = {dF} != 0")
        dr = self.apply(A(A.r))
        ds = self.apply(A(A.s))
        rel = dr * A.u + A(A.r) * self.image_u - ds * A.v - A(A.s) * self.image_v
        if rel:
            raise RelationNotPreservedError(f"D(rU - sV - 1) = {rel} != 0")

    def kills_base(self):
        return all(not im for im in self.base_images.values())

    def image(self, name):
        name = name.upper()
        if name == "U":
            return self.image_u
        if name == "V":
            return self.image_v
        return self.base_images[name]

    def images(self):
        return {n: self.image(n) for n in _generator_names(self.ring)}

    def apply(self, h):
        """Leibniz extension applied to the canonical representative of h."""
        A = self.ring
        h = A(h)
        if not h.terms:
            return A.zero
        # D(h) = h_u D(u) + h_v D(v) + sum_k (dh/dx_k) D(x_k)
        out = A.zero
        hu, hv = {}, {}
        for (i, j), c in h.terms.items():
            if i:
                _acc(hu, (i - 1, j), c.scale(i))
            if j:
                _acc(hv, (i, j - 1), c.scale(j))
        if hu and self.image_u:
            out = out + A.from_raw(hu) * self.image_u
        if hv and self.image_v:
            out = out + A.from_raw(hv) * self.image_v
        for g in A.base.gens:
            img = self.base_images[g]
            if not img:
                continue
            dg = {}
            for k, c in h.terms.items():
                d = c.derivative(g)
                if d.terms:
                    dg[k] = d
            if dg:
                out = out + A.from_raw(dg) * img
        return out

    __call__ = apply

    def scale(self, t):
        """The derivation t*D for t in A (or R, or a scalar)."""
        A = self.ring
        t = A(t) if not isinstance(t, AElement) else t
        return Derivation(
            A, t * self.image_u, t * self.image_v,
            {g: t * im for g, im in self.base_images.items()}, check=False,
        )

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if other.ring != self.ring:
            raise RingMismatchError("derivations of different rings")
        return Derivation(
            self.ring, self.image_u + other.image_u, self.image_v + other.image_v,
            {g: self.base_images[g] + other.base_images[g] for g in self.base_images},
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and other.ring == self.ring
            and other.images() == self.images()
        )

    def __hash__(self):
        return hash(tuple(self.images().values()))

    def is_zero(self):
        return all(not im for im in self.images().values())

    def __repr__(self):
        parts = ", ".join(f"{n.lower()} -> {im}" for n, im in self.images().items() if im)
        return f"Derivation({parts or '0'})"


class Endomorphism:
    """A ring map source -> target given by images of u, v and base variables.

    ``inverse_images`` optionally records the images of the inverse map;
    they are checked to compose to the identity.
    """

    def __init__(self, source, target, images, inverse_images=None, check=True):
        self.source = source
        self.target = target
        norm = {}
        for name, im in images.items():
            norm[name.upper()] = target(im)
        for g in source.base.gens:
            if g not in norm:
                norm[g] = target(target.base.gen(g)) if g in target.base.gens else None
                if norm[g] is None:
                    raise RingMismatchError(f"no image for base variable {g}")
        for g in ("U", "V"):
            if g not in norm:
                raise RingMismatchError(f"no image for {g.lower()}")
        self.images = {n: norm[n] for n in _generator_names(source)}
        self.inverse_images = None
        if inverse_images is not None:
            self.inverse_images = {n.upper(): source(im) for n, im in inverse_images.items()}
        if check:
            self._check_relations()
            if self.inverse_images is not None:
                self._check_inverse()

    def _check_relations(self):
        A, B = self.source, self.target
        base_imgs = [self.images[g] for g in A.base.gens]
        fimg = _eval_base_poly(A.base.F, base_imgs, B)
        if fimg:
            raise RelationNotPreservedError(f"image of F is {fimg}, not 0")
        rimg = _eval_base_poly(A.r.rep, base_imgs, B)
        simg = _eval_base_poly(A.s.rep, base_imgs, B)
        rel = rimg * self.images["U"] - simg * self.images["V"] - 1
        if rel:
            raise RelationNotPreservedError(f"image of rU - sV - 1 is {rel}, not 0")

    def _check_inverse(self):
        inv = self.inverse()
        for n in _generator_names(self.source):
            if inv(self.images[n]) != self.source.gen(n):
                raise NotAnAutomorphismError("declared inverse does not invert on " + n.lower())
        for n in _generator_names(self.target):
            if self(inv.images[n]) != self.target.gen(n):
                raise NotAnAutomorphismError("declared inverse does not invert on " + n.lower())

    def inverse(self):
        if self.inverse_images is None:
            raise MissingInverseError("no inverse recorded")
        return Endomorphism(self.target, self.source, self.inverse_images, self.images,
                            check=False)

    def has_inverse(self):
        return self.inverse_images is not None

    def apply(self, h):
        A, B = self.source, self.target
        h = A(h)
        base_imgs = [self.images[g] for g in A.base.gens]
        pu, pv = self.images["U"], self.images["V"]
        upow, vpow = [B.one], [B.one]
        out = B.zero
        for (i, j), c in sorted(h.terms.items()):
            while len(upow) <= i:
                upow.append(upow[-1] * pu)
            while len(vpow) <= j:
                vpow.append(vpow[-1] * pv)
            out = out + _eval_base_poly(c, base_imgs, B) * upow[i] * vpow[j]
        return out

    __call__ = apply

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target != self.source:
            raise RingMismatchError("cannot compose: rings do not match")
        images = {n: self(im) for n, im in other.images.items()}
        inverse = None
        if self.inverse_images is not None and other.inverse_images is not None:
            # (self o other)^-1 = other^-1 o self^-1
            other_inv = other.inverse()
            inverse = {n: other_inv(im) for n, im in self.inverse_images.items()}
        return Endomorphism(other.source, self.target, images, inverse, check=False)

    def fixes_base(self):
        B = self.target
        return all(self.images[g] == B.gen(g) for g in self.source.base.gens)

    def is_identity(self):
        return self.source == self.target and all(
            im == self.source.gen(n) for n, im in self.images.items()
        )

    def __eq__(self, other):
        return (
            isinstance(other, Endomorphism)
            and other.source == self.source
            and other.target == self.target
            and other.images == self.images
        )

    def __hash__(self):
        return hash(tuple(self.images.values()))

    def __repr__(self):
        parts = ", ".join(f"{n.lower()} -> {im}" for n, im in self.images.items())
        return f"Endomorphism({parts})"


class RAutomorphism:
    """exp(tE): u -> u + t*s, v -> v + t*r, identity on the base."""

    def __init__(self, ring, t):
        self.ring = ring
        self.t = ring.base(t)

    def endomorphism(self):
        return exp_tE(self.ring, self.t)

    def __repr__(self):
        return f"RAutomorphism(t={self.t})"


def canonical_E(A: DanielewskiRing) -> Derivation:
    """E = s d/du + r d/dv."""
    return Derivation(A, A(A.s), A(A.r))


def apply_derivation(D, h):
    return D.apply(h)


def _default_probes(A):
    return [A.gen(n) for n in _generator_names(A)]


def is_locally_nilpotent(D, probes=None, max_iter=DEFAULT_MAX_ITER):
    """{probe: k} with D^k(probe) == 0 for each probe, or None.

    ``k`` is the number of applications needed to reach 0 (a probe that
    is already 0 has index 0). None means the budget ran out, which does
    not prove that D is not locally nilpotent.
    """
    A = D.ring
    probes = _default_probes(A) if probes is None else [A(p) for p in probes]
    if not probes:
        raise ValueError("at least one probe is needed")
    out = {}
    for p in probes:
        cur = p
        k = 0
        while cur:
            if k >= max_iter:
                return None
            cur = D.apply(cur)
            k += 1
        out[p] = k
    return out


def _exp_images(D, indices, sign=1):
    A = D.ring
    images = {}
    for n in _generator_names(A):
        g = A.gen(n)
        if g not in indices:
            raise UncertifiedNilpotencyError(f"no nilpotency certificate for {n.lower()}")
        total = A.zero
        cur = g
        for k in range(indices[g]):
            total = total + cur / factorial(k) * (sign**k)
            cur = D.apply(cur)
        if cur:
            raise UncertifiedNilpotencyError(f"certificate for {n.lower()} is wrong")
        images[n] = total
    return images


def exp_derivation(D, indices):
    """exp(D) as an endomorphism, with exp(-D) recorded as its inverse.

    ``indices`` must come from :func:`is_locally_nilpotent` and cover u, v
    and every base variable.
    """
    if indices is None:
        raise UncertifiedNilpotencyError("nilpotency was not certified")
    fwd = _exp_images(D, indices, 1)
    bwd = _exp_images(D, indices, -1)
    return Endomorphism(D.ring, D.ring, fwd, bwd)


def exp_tE(A, t):
    """exp(tE) written out directly: u -> u + t*s, v -> v + t*r."""
    t = A(A.base(t))
    s, r = A(A.s), A(A.r)
    fwd = {"U": A.u + t * s, "V": A.v + t * r}
    bwd = {"U": A.u - t * s, "V": A.v - t * r}
    return Endomorphism(A, A, fwd, bwd, check=False)


def recognize_multiple_of_E(D):
    """t in R with D == t*E, or None."""
    A = D.ring
    if not D.kills_base():
        raise BaseNotFixedError("the derivation does not kill the base ring")
    if D.image_u.is_in_R() is None:
        return None
    t = A.divide_by_base(D.image_u, A.s)
    if t is None:
        return None
    t_base = t.is_in_R()
    if t_base is None:
        return None
    if D.image_v != A(A.r * t_base):
        return None
    return t_base


def recognize_R_automorphism(phi):
    """t in R with phi == exp(tE), or None.

    A base-fixing map with a verified inverse that is not of this shape
    would contradict the structure of the R-automorphism group and raises
    InconsistencyError.
    """
    A = phi.source
    if phi.target != A:
        raise RingMismatchError("an R-automorphism maps a ring to itself")
    if not phi.fixes_base():
        raise BaseNotFixedError("the map does not fix the base ring")
    du = phi.images["U"] - A.u
    dv = phi.images["V"] - A.v
    t = A.divide_by_base(du, A.s)
    t_base = t.is_in_R() if t is not None else None
    if t_base is not None and dv == A(A.r * t_base):
        return t_base
    if phi.has_inverse():
        raise InconsistencyError(
            "an invertible R-endomorphism is not of the form exp(tE)"
        )
    return None


def base_automorphism_check(base, images, inverse_images=None):
    """Validate a map of R given by base-variable images.

    Returns the normalized (images, inverse_images) as RElement dicts. The
    map must send F into (F); its inverse must be supplied unless the map
    is diagonal (x_i -> c_i x_i), in which case it is derived.
    """
    imgs = {g: base(images.get(g, images.get(g.lower(), base.gen(g)))) for g in base.gens}

    def apply(p, m):
        return base(p.substitute({g: m[g].rep for g in base.gens}))

    if apply(base.F, imgs):
        raise NotAnAutomorphismError("the map does not preserve the relation F")
    if inverse_images is None:
        inv = {}
        for g in base.gens:
            x = base.poly_ring.gen(g)
            (e,) = x.terms
            c = imgs[g].rep.coeff(e)
            if len(imgs[g].rep.terms) != 1 or not c:
                raise NotAnAutomorphismError("inverse not supplied and the map is not diagonal")
            inv[g] = base(x * (base.field.one / c))
    else:
        inv = {g: base(inverse_images.get(g, base.gen(g))) for g in base.gens}
    if apply(base.F, inv):
        raise NotAnAutomorphismError("the inverse does not preserve the relation F")
    for g in base.gens:
        if apply(imgs[g].rep, inv) != base.gen(g) or apply(inv[g].rep, imgs) != base.gen(g):
            raise NotAnAutomorphismError("the supplied inverse does not invert the map")
    return imgs, inv


def _scalar_ratio(a, b):
    """c with a == c*b for a nonzero scalar c, else None."""
    if b.is_zero() or a.is_zero():
        return None
    e, bc = next(iter(b.rep.terms.items()))
    ac = a.rep.coeff(e)
    if not ac:
        return None
    c = ac / bc
    return c if a == b * c else None


def lift_base_automorphism(base_images, A, inverse_images=None):
    """Extend an automorphism of R to A when it rescales r and s.

    If phi(r) = alpha*r and phi(s) = beta*s for scalars alpha, beta, the
    lift is u -> u/alpha, v -> v/beta. Returns None otherwise.
    """
    base = A.base
    imgs, inv = base_automorphism_check(base, base_images, inverse_images)

    def apply(p, m):
        return base(p.substitute({g: m[g].rep for g in base.gens}))

    alpha = _scalar_ratio(apply(A.r.rep, imgs), A.r)
    beta = _scalar_ratio(apply(A.s.rep, imgs), A.s)
    if alpha is None or beta is None:
        return None
    one = base.field.one
    fwd = {g: A(imgs[g]) for g in base.gens}
    fwd.update({"U": A.u * (one / alpha), "V": A.v * (one / beta)})
    bwd = {g: A(inv[g]) for g in base.gens}
    bwd.update({"U": A.u * alpha, "V": A.v * beta})
    return Endomorphism(A, A, fwd, bwd)


def conjugate_derivation(phi, D):
    """phi^-1 o D o phi as a derivation of phi's source ring."""
    if not phi.has_inverse():
        raise MissingInverseError("conjugation needs an invertible map")
    if D.ring != phi.target:
        raise RingMismatchError("derivation and map live on different rings")
    inv = phi.inverse()
    A = phi.source
    imgs = {n: inv(D.apply(phi.images[n])) for n in _generator_names(A)}
    base = {g: imgs[g] for g in A.base.gens}
    return Derivation(A, imgs["U"], imgs["V"], base)


def ongelijk_ideal_check(base, base_images, pair, pair2, inverse_images=None, order=GREVLEX):
    """Whether (phi(r), phi(s)) + (F) == (r', s') + (F) in the ambient ring.

    Equality is necessary for A_{r,s} and A_{r',s'} to be isomorphic via a
    map restricting to phi on R.
    """
    imgs, _ = base_automorphism_check(base, base_images, inverse_images)
    r, s = (base(x) for x in pair)
    r2, s2 = (base(x) for x in pair2)

    def apply(p):
        return base(p.substitute({g: imgs[g].rep for g in base.gens}))

    left = base.ideal_gens([apply(r.rep), apply(s.rep)])
    right = base.ideal_gens([r2, s2])
    return ideal_equal(left, right, order)
