"""JSON certificates: construction and independent re-verification.

Every certificate is a dict with keys ``kind``, ``version``, ``inputs``,
``data``, ``verified`` and ``assumptions``. Expressions are strings in the
parser grammar. Verification rebuilds the rings from ``inputs`` and checks
the stored data by ring arithmetic and polynomial division only; no
Groebner basis is searched for.
"""

from __future__ import annotations

import json
from math import factorial

from . import __version__
from .config import ring_config_from_dict
from .equivariance import (
    DEFAULT_MAX_ITER,
    Derivation,
    Endomorphism,
    base_automorphism_check,
    canonical_E,
    conjugate_derivation,
    exp_derivation,
    exp_tE,
    is_locally_nilpotent,
    lift_base_automorphism,
    recognize_multiple_of_E,
    recognize_R_automorphism,
)
from .errors import (
    BudgetError,
    CertificateError,
    InputError,
    NotAnAutomorphismError,
    RadicalBudgetError,
    RejectionError,
    UncertifiedNilpotencyError,
    VerificationError,
)
from .groebner import (
    DEFAULT_NMAX,
    GREVLEX,
    GRLEX,
    LEX,
    buchberger,
    divide_with_cofactors,
    ideal_member,
    is_groebner_basis,
    radical_power_member,
)
from .parse import parse_expr
from .poly import QQ, PolyRing
from .stable_iso import (
    DEFAULT_TERM_LIMIT,
    ExtendedElement,
    RadicalData,
    StableIsoCertificate,
    build_stable_iso,
    ss1_map_check,
    verify_stable_iso,
)

__all__ = [
    "ORDERS",
    "dumps",
    "emit_certificate",
    "verify_certificate",
    "gb_certificate",
    "member_certificate",
    "ideal_eq_certificate",
    "radical_pow_certificate",
    "dim0_certificate",
    "height2_certificate",
    "lnd_check_certificate",
    "lnd_exp_certificate",
    "recognize_aut_certificate",
    "lift_aut_certificate",
    "conjugate_certificate",
    "stable_iso_certificate",
    "ongelijk_certificate",
    "fm06_grid_certificate",
    "ss1_certificate",
    "R0_CONFIG",
]

ORDERS = {"lex": LEX, "grlex": GRLEX, "grevlex": GREVLEX}

R0_CONFIG = {
    "variables": ["X", "Y", "Z"],
    "relation": "X^2 + Y^3 + Z^7",
    "designated": "X",
}


# -- serialization --


def dumps(cert):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(cert, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_certificate(cert, path=None, stream=None):
    """Write a verified certificate to ``path`` (or ``stream``); returns the text."""
    if cert.get("verified") is not True:
        raise VerificationError("refusing to emit an unverified certificate")
    text = dumps(cert)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif stream is not None:
        stream.write(text)
    return text


def _wrap(kind, inputs, data, assumptions):
    cert = {
        "kind": kind,
        "version": __version__,
        "inputs": inputs,
        "data": data,
        "verified": False,
        "assumptions": assumptions,
    }
    try:
        verify_certificate(cert)
    except CertificateError as exc:
        raise VerificationError(f"freshly built {kind} certificate fails: {exc}") from exc
    cert["verified"] = True
    return cert


def _require(ok, what):
    if not ok:
        raise CertificateError(what)


# -- expression helpers --


def _fmt(p):
    return p.format()


def _parse_list(texts, ring):
    if isinstance(texts, str):
        texts = [t for t in texts.split(",") if t.strip()]
    return [parse_expr(t, ring) for t in texts]


def _a_parse(text, A):
    return A.from_ambient(parse_expr(text, A.ambient))


def _r_parse(text, base):
    return base(parse_expr(text, base.poly_ring))


def _ext_ring(A, var):
    return PolyRing(A.ambient.gens + (var,), A.field)


def _ext_parse(text, A, var):
    p = parse_expr(text, _ext_ring(A, var))
    by_deg = {}
    for e, c in p.terms.items():
        by_deg.setdefault(e[-1], {})[e[:-1]] = c
    coeffs = {k: A.from_ambient(A.ambient._make(t)) for k, t in by_deg.items()}
    return ExtendedElement(A, coeffs, var)


def _order(name):
    if name not in ORDERS:
        raise InputError(f"unknown monomial order {name!r}; use one of {sorted(ORDERS)}")
    return ORDERS[name]


def _config(d):
    return ring_config_from_dict(d)


def _ideal_gens(cfg, texts, with_relation):
    base = cfg.base()
    gens = _parse_list(texts, base.poly_ring)
    if with_relation:
        gens.append(base.F)
    if not gens:
        raise InputError("no generators given")
    return base, gens


# -- Groebner data --


def _gb_data(gens, order):
    gb = buchberger(tuple(gens), order)
    return {
        "basis": [_fmt(g) for g in gb.basis],
        "cofactors": [[_fmt(c) for c in row] for row in gb.cofactors],
    }


def _check_gb_data(gens, data, order, ring):
    basis = [parse_expr(t, ring) for t in data["basis"]]
    cof = [[parse_expr(t, ring) for t in row] for row in data["cofactors"]]
    _require(len(cof) == len(basis), "cofactor matrix has the wrong shape")
    for g, row in zip(basis, cof):
        _require(len(row) == len(gens), "cofactor row has the wrong length")
        total = ring.zero
        for c, h in zip(row, gens):
            total = total + c * h
        _require(total == g, f"basis element {g} is not the stated combination")
    for h in gens:
        _, rem = divide_with_cofactors(h, basis, order)
        _require(rem.is_zero(), f"generator {h} does not reduce to 0 by the basis")
    _require(is_groebner_basis(basis, order), "basis fails Buchberger's criterion")
    return basis


def _combination(cofs, gens, ring):
    total = ring.zero
    for c, g in zip(cofs, gens):
        total = total + c * g
    return total


def _ideal_eq_data(left, right, order):
    data = {"equal": True, "left_in_right": [], "right_in_left": []}
    for side, src, dst in (("left", left, right), ("right", right, left)):
        rows = []
        for i, g in enumerate(src):
            cof = ideal_member(g, dst, order)
            if cof is None:
                gb = buchberger(tuple(dst), order)
                return {
                    "equal": False,
                    "witness": {
                        "side": side,
                        "index": i,
                        "groebner": _gb_data(dst, order),
                        "remainder": _fmt(gb.reduce(g)),
                    },
                }
            rows.append([_fmt(c) for c in cof])
        data[f"{side}_in_{'right' if side == 'left' else 'left'}"] = rows
    return data


def _check_ideal_eq_data(left, right, data, order, ring):
    if data["equal"]:
        for key, src, dst in (("left_in_right", left, right), ("right_in_left", right, left)):
            rows = data[key]
            _require(len(rows) == len(src), f"{key} has the wrong length")
            for g, row in zip(src, rows):
                cof = [parse_expr(t, ring) for t in row]
                _require(len(cof) == len(dst), f"{key} row has the wrong length")
                _require(_combination(cof, dst, ring) == g, f"{key}: {g} is not the stated combination")
        return True
    w = data["witness"]
    src, dst = (left, right) if w["side"] == "left" else (right, left)
    basis = _check_gb_data(dst, w["groebner"], order, ring)
    g = src[w["index"]]
    _, rem = divide_with_cofactors(g, basis, order)
    _require(not rem.is_zero(), "witness reduces to 0, so it does lie in the ideal")
    _require(rem == parse_expr(w["remainder"], ring), "stored remainder is wrong")
    return False


# -- ideal commands --


def gb_certificate(cfg, gens, order="grevlex", with_relation=True):
    base, polys = _ideal_gens(cfg, gens, with_relation)
    inputs = {"ring": cfg.to_dict(), "generators": [_fmt(g) for g in polys], "order": order}
    return _wrap("gb", inputs, {"groebner": _gb_data(polys, _order(order))}, cfg.assumptions())


def _verify_gb(cert):
    inp = cert["inputs"]
    ring = _config(inp["ring"]).base().poly_ring
    gens = _parse_list(inp["generators"], ring)
    _check_gb_data(gens, cert["data"]["groebner"], _order(inp["order"]), ring)


def member_certificate(cfg, f, gens, order="grevlex", with_relation=True):
    base, polys = _ideal_gens(cfg, gens, with_relation)
    f = parse_expr(f, base.poly_ring)
    o = _order(order)
    cof = ideal_member(f, polys, o)
    if cof is not None:
        data = {"member": True, "cofactors": [_fmt(c) for c in cof]}
    else:
        data = {
            "member": False,
            "groebner": _gb_data(polys, o),
            "remainder": _fmt(buchberger(tuple(polys), o).reduce(f)),
        }
    inputs = {"ring": cfg.to_dict(), "f": _fmt(f), "generators": [_fmt(g) for g in polys],
              "order": order}
    return _wrap("member", inputs, data, cfg.assumptions())


def _verify_member(cert):
    inp, data = cert["inputs"], cert["data"]
    ring = _config(inp["ring"]).base().poly_ring
    gens = _parse_list(inp["generators"], ring)
    f = parse_expr(inp["f"], ring)
    if data["member"]:
        cof = [parse_expr(t, ring) for t in data["cofactors"]]
        _require(len(cof) == len(gens), "wrong number of cofactors")
        _require(_combination(cof, gens, ring) == f, "cofactors do not reproduce f")
    else:
        o = _order(inp["order"])
        basis = _check_gb_data(gens, data["groebner"], o, ring)
        _, rem = divide_with_cofactors(f, basis, o)
        _require(not rem.is_zero(), "f reduces to 0, so it is a member")
        _require(rem == parse_expr(data["remainder"], ring), "stored remainder is wrong")


def ideal_eq_certificate(cfg, left, right, order="grevlex", with_relation=True):
    base, lp = _ideal_gens(cfg, left, with_relation)
    _, rp = _ideal_gens(cfg, right, with_relation)
    inputs = {"ring": cfg.to_dict(), "left": [_fmt(g) for g in lp],
              "right": [_fmt(g) for g in rp], "order": order}
    return _wrap("ideal-eq", inputs, _ideal_eq_data(lp, rp, _order(order)), cfg.assumptions())


def _verify_ideal_eq(cert):
    inp = cert["inputs"]
    ring = _config(inp["ring"]).base().poly_ring
    left = _parse_list(inp["left"], ring)
    right = _parse_list(inp["right"], ring)
    _check_ideal_eq_data(left, right, cert["data"], _order(inp["order"]), ring)


def radical_pow_certificate(cfg, f, gens, nmax=DEFAULT_NMAX, order="grevlex",
                            with_relation=True):
    base, polys = _ideal_gens(cfg, gens, with_relation)
    f = parse_expr(f, base.poly_ring)
    found = radical_power_member(f, polys, nmax, _order(order))
    if found is None:
        raise RadicalBudgetError(f"no power f^N with N <= {nmax} lies in the ideal")
    n, cof = found
    inputs = {"ring": cfg.to_dict(), "f": _fmt(f), "generators": [_fmt(g) for g in polys],
              "order": order, "nmax": nmax}
    data = {"exponent": n, "cofactors": [_fmt(c) for c in cof]}
    return _wrap("radical-pow", inputs, data, cfg.assumptions())


def _verify_radical_pow(cert):
    inp, data = cert["inputs"], cert["data"]
    ring = _config(inp["ring"]).base().poly_ring
    gens = _parse_list(inp["generators"], ring)
    f = parse_expr(inp["f"], ring)
    cof = [parse_expr(t, ring) for t in data["cofactors"]]
    n = data["exponent"]
    _require(isinstance(n, int) and n >= 1, "exponent must be a positive integer")
    _require(_combination(cof, gens, ring) == f**n, "cofactors do not reproduce f^N")


def _dim0_data(gens, order):
    gb = buchberger(tuple(gens), order)
    data = {"groebner": _gb_data(gens, order)}
    data.update(_dim0_facts(list(gb.basis), order))
    return data


def _dim0_facts(basis, order):
    proper = not (len(basis) == 1 and basis[0].is_constant())
    ring = basis[0].ring
    found = set()
    for g in basis:
        lm = max(g.terms, key=order.key)
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            found.add(nz[0])
    return {"proper": proper, "zero_dimensional": proper and len(found) == ring.nvars}


def dim0_certificate(cfg, gens, order="grevlex", with_relation=True):
    base, polys = _ideal_gens(cfg, gens, with_relation)
    inputs = {"ring": cfg.to_dict(), "generators": [_fmt(g) for g in polys], "order": order}
    return _wrap("dim0", inputs, _dim0_data(polys, _order(order)), cfg.assumptions())


def _verify_dim0(cert):
    inp, data = cert["inputs"], cert["data"]
    ring = _config(inp["ring"]).base().poly_ring
    gens = _parse_list(inp["generators"], ring)
    o = _order(inp["order"])
    basis = _check_gb_data(gens, data["groebner"], o, ring)
    facts = _dim0_facts(basis, o)
    _require(facts["proper"] == data["proper"], "properness claim is wrong")
    _require(facts["zero_dimensional"] == data["zero_dimensional"], "dimension claim is wrong")


def height2_certificate(cfg, order="grevlex"):
    base = cfg.base()
    if cfg.r is None:
        raise InputError("height2 needs r and s in the ring configuration")
    r, s = _r_parse(cfg.r, base), _r_parse(cfg.s, base)
    if r.is_zero() or s.is_zero():
        raise InputError("r and s must be nonzero")
    gens = list(base.ideal_gens([r, s]))
    data = _dim0_data(gens, _order(order))
    data["height2"] = data["zero_dimensional"]
    inputs = {"ring": cfg.to_dict(), "generators": [_fmt(g) for g in gens], "order": order}
    return _wrap("height2", inputs, data, cfg.assumptions())


def _verify_height2(cert):
    _verify_dim0(cert)
    d = cert["data"]
    _require(d["height2"] == d["zero_dimensional"], "height2 flag disagrees with dimension")


# -- derivations and maps --


def _ring_from(d, check=False):
    cfg = _config(d)
    A = cfg.ring(check=check)
    if A is None:
        raise InputError("this command needs r and s in the ring configuration")
    return cfg, A


def _gen_names(A):
    return ["u", "v"] + [g.lower() for g in A.base.gens]


def _derivation_from(A, spec):
    if spec is None:
        return canonical_E(A)
    spec = {k.lower(): v for k, v in spec.items()}
    unknown = set(spec) - set(_gen_names(A))
    if unknown:
        raise InputError(f"derivation images for unknown generators: {sorted(unknown)}")
    base = {g: _a_parse(spec[g.lower()], A) for g in A.base.gens if g.lower() in spec}
    return Derivation(A, _a_parse(spec.get("u", "0"), A), _a_parse(spec.get("v", "0"), A), base)


def _derivation_text(D):
    return {n.lower(): str(D.image(n)) for n in ("U", "V") + D.ring.base.gens}


def _map_from(A, spec, inverse=None):
    images = {k.upper(): _a_parse(v, A) for k, v in spec.items()}
    inv = None
    if inverse is not None:
        inv = {k.upper(): _a_parse(v, A) for k, v in inverse.items()}
        for g in ("U", "V") + A.base.gens:
            inv.setdefault(g, A.gen(g))
    for g in ("U", "V") + A.base.gens:
        images.setdefault(g, A.gen(g))
    return Endomorphism(A, A, images, inv)


def _map_text(images):
    return {n.lower(): str(im) for n, im in images.items()}


def lnd_check_certificate(cfg, derivation=None, max_iter=DEFAULT_MAX_ITER):
    A = cfg.ring()
    D = _derivation_from(A, derivation)
    idx = is_locally_nilpotent(D, max_iter=max_iter)
    if idx is None:
        raise BudgetError(f"nilpotency not established within {max_iter} applications")
    inputs = {"ring": cfg.to_dict(), "derivation": _derivation_text(D), "max_iter": max_iter}
    data = {"indices": {str(p): k for p, k in idx.items()}}
    return _wrap("lnd-check", inputs, data, cfg.assumptions())


def _verify_lnd_check(cert):
    inp = cert["inputs"]
    _, A = _ring_from(inp["ring"])
    D = _derivation_from(A, inp["derivation"])
    for text, k in cert["data"]["indices"].items():
        cur = _a_parse(text, A)
        for step in range(k):
            _require(cur, f"D^{step} of {text} is already 0, index {k} is too large")
            cur = D(cur)
        _require(cur.is_zero(), f"D^{k} of {text} is not 0")


def lnd_exp_certificate(cfg, derivation=None, max_iter=DEFAULT_MAX_ITER):
    A = cfg.ring()
    D = _derivation_from(A, derivation)
    idx = is_locally_nilpotent(D, max_iter=max_iter)
    if idx is None:
        raise UncertifiedNilpotencyError(
            f"nilpotency not established within {max_iter} applications"
        )
    phi = exp_derivation(D, idx)
    inputs = {"ring": cfg.to_dict(), "derivation": _derivation_text(D), "max_iter": max_iter}
    data = {
        "indices": {str(p): k for p, k in idx.items()},
        "images": _map_text(phi.images),
        "inverse_images": _map_text(phi.inverse_images),
    }
    return _wrap("lnd-exp", inputs, data, cfg.assumptions())


def _verify_lnd_exp(cert):
    inp, data = cert["inputs"], cert["data"]
    _, A = _ring_from(inp["ring"])
    D = _derivation_from(A, inp["derivation"])
    try:
        phi = _map_from(A, data["images"], data["inverse_images"])
    except RejectionError as exc:
        raise CertificateError(str(exc)) from exc
    for name in _gen_names(A):
        for sign, stored in ((1, phi.images), (-1, phi.inverse_images)):
            total, cur, k = A.zero, A.gen(name), 0
            while cur:
                _require(k <= inp["max_iter"], f"{name} is not nilpotent within budget")
                total = total + cur / factorial(k) * sign**k
                cur = D(cur)
                k += 1
            _require(stored[name.upper()] == total, f"image of {name} is not exp(D)({name})")


def recognize_aut_certificate(cfg, images, inverse=None):
    A = cfg.ring()
    phi = _map_from(A, images, inverse)
    t = recognize_R_automorphism(phi)
    if t is None:
        raise NotAnAutomorphismError("the map is not of the form exp(tE)")
    inputs = {"ring": cfg.to_dict(), "images": _map_text(phi.images)}
    if inverse is not None:
        inputs["inverse_images"] = _map_text(phi.inverse_images)
    return _wrap("recognize-aut", inputs, {"t": str(t)}, cfg.assumptions())


def _verify_recognize_aut(cert):
    inp = cert["inputs"]
    _, A = _ring_from(inp["ring"])
    phi = _map_from(A, inp["images"], inp.get("inverse_images"))
    t = _r_parse(cert["data"]["t"], A.base)
    _require(phi.fixes_base(), "the map moves the base ring")
    _require(phi.images["U"] == A.u + A(t * A.s), "u is not sent to u + t*s")
    _require(phi.images["V"] == A.v + A(t * A.r), "v is not sent to v + t*r")


def _base_images_from(base, spec):
    if spec is None:
        return None
    return {k.upper(): _r_parse(v, base) for k, v in spec.items()}


def lift_aut_certificate(cfg, base_images, inverse=None):
    A = cfg.ring()
    imgs = _base_images_from(A.base, base_images)
    inv = _base_images_from(A.base, inverse)
    phi = lift_base_automorphism(imgs, A, inv)
    if phi is None:
        raise NotAnAutomorphismError(
            "the base map does not rescale r and s by scalars; no lift is constructed"
        )
    inputs = {"ring": cfg.to_dict(), "base_images": {k.lower(): str(v) for k, v in imgs.items()}}
    data = {"images": _map_text(phi.images), "inverse_images": _map_text(phi.inverse_images)}
    return _wrap("lift-aut", inputs, data, cfg.assumptions())


def _verify_lift_aut(cert):
    inp, data = cert["inputs"], cert["data"]
    _, A = _ring_from(inp["ring"])
    try:
        phi = _map_from(A, data["images"], data["inverse_images"])
    except RejectionError as exc:
        raise CertificateError(str(exc)) from exc
    for k, v in inp["base_images"].items():
        _require(phi.images[k.upper()] == _a_parse(v, A), f"lift does not restrict to {k}")


def conjugate_certificate(cfg, base_images=None, t=None, derivation=None):
    A = cfg.ring()
    if (base_images is None) == (t is None):
        raise InputError("give exactly one of a base map or t")
    if t is not None:
        phi = exp_tE(A, _r_parse(t, A.base))
    else:
        phi = lift_base_automorphism(_base_images_from(A.base, base_images), A)
        if phi is None:
            raise NotAnAutomorphismError("the base map has no supported lift")
    D = _derivation_from(A, derivation)
    C = conjugate_derivation(phi, D)
    inputs = {"ring": cfg.to_dict(), "map": _map_text(phi.images),
              "inverse": _map_text(phi.inverse_images), "derivation": _derivation_text(D)}
    data = {"conjugate": _derivation_text(C)}
    if C.kills_base():
        lam = recognize_multiple_of_E(C)
        if lam is not None:
            data["multiple_of_E"] = str(lam)
    return _wrap("conjugate", inputs, data, cfg.assumptions())


def _verify_conjugate(cert):
    inp, data = cert["inputs"], cert["data"]
    _, A = _ring_from(inp["ring"])
    try:
        phi = _map_from(A, inp["map"], inp["inverse"])
    except RejectionError as exc:
        raise CertificateError(str(exc)) from exc
    D = _derivation_from(A, inp["derivation"])
    C = _derivation_from(A, data["conjugate"])
    inv = phi.inverse()
    for n in _gen_names(A):
        _require(inv(D(phi.images[n.upper()])) == C.image(n), f"conjugate is wrong on {n}")
    if "multiple_of_E" in data:
        lam = _r_parse(data["multiple_of_E"], A.base)
        _require(C == canonical_E(A).scale(A(lam)), "conjugate is not the stated multiple of E")


# -- stable isomorphism --


def stable_iso_certificate(cfg_a, cfg_b, nmax=DEFAULT_NMAX, limit=DEFAULT_TERM_LIMIT):
    A, B = cfg_a.ring(), cfg_b.ring()
    if A is None or B is None:
        raise InputError("both configurations need r and s")
    cert = build_stable_iso(A, B, nmax, limit)
    rad = cert.radical

    def pw(entry):
        n, alpha, beta = entry
        return {"exponent": n, "cofactors": [str(alpha), str(beta)]}

    data = {
        "exponents": list(rad.exponents()),
        "radical": {
            "source_r": pw(rad.first_in_second[0]),
            "source_s": pw(rad.first_in_second[1]),
            "target_r": pw(rad.second_in_first[0]),
            "target_s": pw(rad.second_in_first[1]),
        },
        "partition_source": [str(x) for x in cert.partition],
        "partition_target": [str(x) for x in cert.partition_target],
        "extension_variables": [cert.theta_inverse["U"].var, cert.theta["U"].var],
        "theta": {k.lower() if k != "T" else "T": str(v) for k, v in cert.theta.items()},
        "theta_inverse": {k.lower() if k != "T" else "T": str(v)
                          for k, v in cert.theta_inverse.items()},
        "relations_verified": cert.relations_verified,
        "roundtrip_verified": cert.roundtrip_verified,
    }
    inputs = {"source": cfg_a.to_dict(), "target": cfg_b.to_dict(), "nmax": nmax}
    return _wrap("stable-iso", inputs, data, cfg_a.assumptions())


def _verify_stable_iso(cert):
    inp, data = cert["inputs"], cert["data"]
    _, A = _ring_from(inp["source"])
    _, B = _ring_from(inp["target"])
    _require(A.base == B.base, "source and target have different base rings")
    base = A.base

    def pw(entry, f, g1, g2):
        n = entry["exponent"]
        alpha, beta = (_r_parse(t, base) for t in entry["cofactors"])
        _require(f**n == alpha * g1 + beta * g2, f"{f}^{n} is not the stated combination")
        return n, alpha, beta

    rad = data["radical"]
    first_in_second = (pw(rad["source_r"], A.r, B.r, B.s), pw(rad["source_s"], A.s, B.r, B.s))
    second_in_first = (pw(rad["target_r"], B.r, A.r, A.s), pw(rad["target_s"], B.s, A.r, A.s))
    radical = RadicalData((A.r, A.s), (B.r, B.s), second_in_first, first_in_second)
    _require(list(radical.exponents()) == data["exponents"], "exponent list is inconsistent")
    va, vb = data["extension_variables"]

    def images(d, ring, var):
        return {"U": _ext_parse(d["u"], ring, var), "V": _ext_parse(d["v"], ring, var),
                "T": _ext_parse(d["T"], ring, var)}

    sc = StableIsoCertificate(
        A, B, radical,
        tuple(_a_parse(t, A) for t in data["partition_source"]),
        tuple(_a_parse(t, B) for t in data["partition_target"]),
        images(data["theta"], B, vb),
        images(data["theta_inverse"], A, va),
    )
    checks = verify_stable_iso(sc)
    failed = [k for k, ok in checks.items() if not ok]
    _require(not failed, "failed checks: " + ", ".join(failed))
    _require(data["relations_verified"] and data["roundtrip_verified"], "flags must be true")


# -- the obstruction --


def _specialize_poly(p, values, ring):
    return ring.from_dict({e: c.evaluate(values) for e, c in p.terms.items()})


def _ongelijk_case(base, images, pair, pair2, order):
    imgs, _ = base_automorphism_check(base, images)

    def apply(x):
        return base(x.rep.substitute({g: imgs[g].rep for g in base.gens}))

    left = [apply(pair[0]).rep, apply(pair[1]).rep, base.F]
    right = [pair2[0].rep, pair2[1].rep, base.F]
    return left, right, _ideal_eq_data(left, right, order)


def _family_bases(cfg_a, family):
    params = tuple(family.get("params", ()))
    d = cfg_a.to_dict()
    if params:
        d["params"] = list(params)
    return ring_config_from_dict(d)


def ongelijk_certificate(cfg_a, cfg_b, family, order="grevlex"):
    """Ideal comparison under a (possibly parametric) base automorphism family.

    ``family`` has ``images`` (base variable -> expression), optional
    ``params`` and optional ``specializations`` (rational values for a
    single parameter).
    """
    o = _order(order)
    if cfg_a.r is None or cfg_b.r is None:
        raise InputError("both configurations need r and s")
    if "images" not in family:
        raise InputError("the automorphism family needs 'images'")
    gen_cfg = _family_bases(cfg_a, family)
    base = gen_cfg.base()
    images = {k.upper(): _r_parse(v, base) for k, v in family["images"].items()}
    pair = (_r_parse(cfg_a.r, base), _r_parse(cfg_a.s, base))
    pair2 = (_r_parse(cfg_b.r, base), _r_parse(cfg_b.s, base))
    _, _, generic = _ongelijk_case(base, images, pair, pair2, o)
    data = {"generic": generic, "specializations": {}}
    specs = family.get("specializations", [])
    params = gen_cfg.params
    if specs and len(params) != 1:
        raise InputError("specializations need exactly one parameter")
    qbase = cfg_a.base() if not cfg_a.params else None
    for value in specs:
        if qbase is None:
            raise InputError("specializations need rings over the rationals")
        vals = {params[0]: QQ.convert(value)}
        imgs = {g: qbase(_specialize_poly(im.rep, vals, qbase.poly_ring))
                for g, im in images.items()}
        qpair = (_r_parse(cfg_a.r, qbase), _r_parse(cfg_a.s, qbase))
        qpair2 = (_r_parse(cfg_b.r, qbase), _r_parse(cfg_b.s, qbase))
        _, _, d = _ongelijk_case(qbase, imgs, qpair, qpair2, o)
        data["specializations"][str(value)] = d
    equal = [generic["equal"]] + [d["equal"] for d in data["specializations"].values()]
    data["obstruction_everywhere"] = not any(equal)
    inputs = {"source": cfg_a.to_dict(), "target": cfg_b.to_dict(),
              "family": {"params": list(params),
                         "images": {k.lower(): str(v) for k, v in images.items()},
                         "specializations": [str(v) for v in specs]},
              "order": order}
    return _wrap("ongelijk", inputs, data, cfg_a.assumptions())


def _verify_ongelijk(cert):
    inp, data = cert["inputs"], cert["data"]
    o = _order(inp["order"])
    cfg_a, cfg_b = _config(inp["source"]), _config(inp["target"])
    fam = inp["family"]
    gen_cfg = _family_bases(cfg_a, fam)

    def check(base, images, d):
        try:
            imgs, _ = base_automorphism_check(base, images)
        except RejectionError as exc:
            raise CertificateError(str(exc)) from exc
        pair = (_r_parse(cfg_a.r, base), _r_parse(cfg_a.s, base))
        pair2 = (_r_parse(cfg_b.r, base), _r_parse(cfg_b.s, base))

        def apply(x):
            return base(x.rep.substitute({g: imgs[g].rep for g in base.gens}))

        left = [apply(pair[0]).rep, apply(pair[1]).rep, base.F]
        right = [pair2[0].rep, pair2[1].rep, base.F]
        return _check_ideal_eq_data(left, right, d, o, base.poly_ring)

    base = gen_cfg.base()
    images = {k.upper(): _r_parse(v, base) for k, v in fam["images"].items()}
    results = [check(base, images, data["generic"])]
    if fam["specializations"]:
        qbase = cfg_a.base()
        for value in fam["specializations"]:
            vals = {fam["params"][0]: QQ.convert(value)}
            imgs = {g: qbase(_specialize_poly(im.rep, vals, qbase.poly_ring))
                    for g, im in images.items()}
            results.append(check(qbase, imgs, data["specializations"][value]))
    _require(data["obstruction_everywhere"] == (not any(results)), "summary flag is wrong")


# -- the demos --

_GRID = [(m, n) for m in (1, 2, 3) for n in (1, 2, 3)]


def fm06_grid_certificate(order="grevlex"):
    """The 9x9 ideal comparison of (X^m, Y^n, F) plus the worked example pair."""
    o = _order(order)
    cfg = ring_config_from_dict(R0_CONFIG)
    P = cfg.base().poly_ring
    F = cfg.base().F
    table, cells = [], {}
    for m, n in _GRID:
        row = []
        for m2, n2 in _GRID:
            left = [parse_expr(f"X^{m}", P), parse_expr(f"Y^{n}", P), F]
            right = [parse_expr(f"X^{m2}", P), parse_expr(f"Y^{n2}", P), F]
            d = _ideal_eq_data(left, right, o)
            row.append(d["equal"])
            cells[f"{m},{n}|{m2},{n2}"] = d
        table.append(row)
    pair_a = cfg.with_pair("x*(x-1)", "y")
    pair_b = cfg.with_pair("x^2*(x-1)", "y")
    family = {"params": ["t"], "images": {"X": "t^21*X", "Y": "t^14*Y", "Z": "t^6*Z"},
              "specializations": [1, 2, 3, -1]}
    ong = ongelijk_certificate(pair_a, pair_b, family, order)
    iso = stable_iso_certificate(pair_a, pair_b)
    data = {
        "labels": [f"{m},{n}" for m, n in _GRID],
        "table": table,
        "cells": cells,
        "diagonal_only": all(table[i][j] == (i == j) for i in range(9) for j in range(9)),
        "pair": {"ongelijk": ong, "stable_iso": iso},
    }
    inputs = {"ring": cfg.to_dict(), "order": order}
    return _wrap("fm06-grid", inputs, data, cfg.assumptions())


def _verify_fm06_grid(cert):
    inp, data = cert["inputs"], cert["data"]
    o = _order(inp["order"])
    base = _config(inp["ring"]).base()
    P = base.poly_ring
    for i, (m, n) in enumerate(_GRID):
        for j, (m2, n2) in enumerate(_GRID):
            left = [parse_expr(f"X^{m}", P), parse_expr(f"Y^{n}", P), base.F]
            right = [parse_expr(f"X^{m2}", P), parse_expr(f"Y^{n2}", P), base.F]
            eq = _check_ideal_eq_data(left, right, data["cells"][f"{m},{n}|{m2},{n2}"], o, P)
            _require(data["table"][i][j] == eq, f"table entry {m},{n}|{m2},{n2} is wrong")
    diag = all(data["table"][i][j] == (i == j) for i in range(9) for j in range(9))
    _require(data["diagonal_only"] == diag, "diagonal flag is wrong")
    for sub in data["pair"].values():
        verify_certificate(sub)


def ss1_certificate(p, q, m, n):
    rep = ss1_map_check(p, q, m, n)
    if not rep.relations_ok:
        raise VerificationError("a relation does not map to 0")
    data = {
        "relation_images": rep.relation_images,
        "relations_ok": rep.relations_ok,
        "image_of_x": rep.image_of_x,
        "surjectivity_verified": rep.surjectivity_verified,
        "open_items": rep.open_items,
    }
    return _wrap("ss1", {"p": p, "q": q, "m": m, "n": n}, data, {})


def _verify_ss1(cert):
    inp, data = cert["inputs"], cert["data"]
    rep = ss1_map_check(inp["p"], inp["q"], inp["m"], inp["n"])
    _require(rep.relation_images == data["relation_images"], "relation images differ")
    _require(data["relations_ok"] == rep.relations_ok, "relations flag is wrong")
    _require(data["surjectivity_verified"] is False, "surjectivity is never verified")


_VERIFIERS = {
    "gb": _verify_gb,
    "member": _verify_member,
    "ideal-eq": _verify_ideal_eq,
    "radical-pow": _verify_radical_pow,
    "dim0": _verify_dim0,
    "height2": _verify_height2,
    "lnd-check": _verify_lnd_check,
    "lnd-exp": _verify_lnd_exp,
    "recognize-aut": _verify_recognize_aut,
    "lift-aut": _verify_lift_aut,
    "conjugate": _verify_conjugate,
    "stable-iso": _verify_stable_iso,
    "ongelijk": _verify_ongelijk,
    "fm06-grid": _verify_fm06_grid,
    "ss1": _verify_ss1,
}


def verify_certificate(cert):
    """Re-check a certificate dict; raises CertificateError on any failure."""
    if not isinstance(cert, dict):
        raise InputError("a certificate must be a JSON object")
    kind = cert.get("kind")
    if kind not in _VERIFIERS:
        raise InputError(f"unknown certificate kind {kind!r}")
    for key in ("inputs", "data"):
        if key not in cert:
            raise InputError(f"certificate is missing {key!r}")
    try:
        _VERIFIERS[kind](cert)
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed {kind} certificate: {exc!r}") from exc
    return True
