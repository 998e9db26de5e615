"""Command line interface.

Exit codes: 0 success, 1 mathematical rejection, 2 budget exhausted,
3 bad input, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from . import certificates as C
from .config import load_config, ring_config_from_dict
from .errors import BudgetError, InputError, RejectionError, VerificationError
from .groebner import DEFAULT_NMAX
from .equivariance import DEFAULT_MAX_ITER
from .parse import parse_expr

__all__ = ["main", "run_command", "build_parser"]

EXIT_OK, EXIT_REJECT, EXIT_BUDGET, EXIT_INPUT, EXIT_BUG = 0, 1, 2, 3, 4


def _pairs(items, what):
    """Parse NAME=EXPR items into a dict."""
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"{what} must look like NAME=EXPR, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _ring_arg(args, path):
    cfg = load_config(path)
    if args.params:
        d = cfg.to_dict()
        d["params"] = [p.strip() for p in args.params.split(",") if p.strip()]
        cfg = ring_config_from_dict(d)
    return cfg


def _derivation(args):
    spec = _pairs(args.image, "--image")
    return spec or None


def _emit(args, cert, out):
    C.emit_certificate(cert, path=args.out, stream=None if args.out else out)


# -- subcommands --


def cmd_nf(args, out):
    cfg = _ring_arg(args, args.ring)
    A = cfg.ring()
    if A is None:
        base = cfg.base()
        out.write(str(base(parse_expr(args.expr, base.poly_ring))) + "\n")
    else:
        out.write(str(A.from_ambient(parse_expr(args.expr, A.ambient))) + "\n")


def cmd_gb(args, out):
    _emit(args, C.gb_certificate(_ring_arg(args, args.ring), args.gens, args.order,
                                 not args.no_relation), out)


def cmd_member(args, out):
    _emit(args, C.member_certificate(_ring_arg(args, args.ring), args.f, args.gens,
                                     args.order, not args.no_relation), out)


def cmd_ideal_eq(args, out):
    _emit(args, C.ideal_eq_certificate(_ring_arg(args, args.ring), args.left, args.right,
                                       args.order, not args.no_relation), out)


def cmd_radical_pow(args, out):
    _emit(args, C.radical_pow_certificate(_ring_arg(args, args.ring), args.f, args.gens,
                                          args.nmax, args.order, not args.no_relation), out)


def cmd_dim0(args, out):
    _emit(args, C.dim0_certificate(_ring_arg(args, args.ring), args.gens, args.order,
                                   not args.no_relation), out)


def cmd_height2(args, out):
    _emit(args, C.height2_certificate(_ring_arg(args, args.ring), args.order), out)


def cmd_lnd_check(args, out):
    _emit(args, C.lnd_check_certificate(_ring_arg(args, args.ring), _derivation(args),
                                        args.max_iter), out)


def cmd_lnd_exp(args, out):
    _emit(args, C.lnd_exp_certificate(_ring_arg(args, args.ring), _derivation(args),
                                      args.max_iter), out)


def cmd_recognize_aut(args, out):
    inverse = _pairs(args.inverse, "--inverse") or None
    _emit(args, C.recognize_aut_certificate(_ring_arg(args, args.ring),
                                            _pairs(args.image, "--image"), inverse), out)


def cmd_lift_aut(args, out):
    inverse = _pairs(args.inverse, "--inverse") or None
    _emit(args, C.lift_aut_certificate(_ring_arg(args, args.ring),
                                       _pairs(args.image, "--image"), inverse), out)


def cmd_conjugate(args, out):
    base_map = _pairs(args.map, "--map") or None
    _emit(args, C.conjugate_certificate(_ring_arg(args, args.ring), base_map, args.t,
                                        _pairs(args.image, "--image") or None), out)


def cmd_stable_iso(args, out):
    _emit(args, C.stable_iso_certificate(_ring_arg(args, args.source),
                                         _ring_arg(args, args.target), args.nmax), out)


def cmd_ongelijk(args, out):
    family = _load_json(args.aut)
    if not isinstance(family, dict):
        raise InputError("the automorphism family must be a JSON object")
    cert = C.ongelijk_certificate(_ring_arg(args, args.source), _ring_arg(args, args.target),
                                  family, args.order)
    _emit(args, cert, out) if args.out else out.write(C.dumps(cert))


def _grid_table(data):
    labels = data["labels"]
    width = max(len(x) for x in labels)
    lines = [" " * width + " | " + " ".join(x.rjust(width) for x in labels)]
    for label, row in zip(labels, data["table"]):
        cells = " ".join(("T" if v else ".").rjust(width) for v in row)
        lines.append(label.rjust(width) + " | " + cells)
    return "\n".join(lines)


def cmd_demo(args, out):
    if args.demo == "fm06-grid":
        cert = C.fm06_grid_certificate(args.order)
        data = cert["data"]
        out.write("ideal (X^m, Y^n, F) == (X^m', Y^n', F):\n")
        out.write(_grid_table(data) + "\n")
        out.write(f"diagonal only: {str(data['diagonal_only']).lower()}\n")
        ong = data["pair"]["ongelijk"]["data"]
        out.write("pair (x*(x-1), y) vs (x^2*(x-1), y):\n")
        out.write(f"  ideals equal over QQ(t): {str(ong['generic']['equal']).lower()}\n")
        for value, d in sorted(ong["specializations"].items()):
            out.write(f"  ideals equal at t = {value}: {str(d['equal']).lower()}\n")
        iso = data["pair"]["stable_iso"]["data"]
        out.write(f"  radical exponents: {iso['exponents']}\n")
        out.write(f"  stable isomorphism relations_verified: "
                  f"{str(iso['relations_verified']).lower()}, roundtrip_verified: "
                  f"{str(iso['roundtrip_verified']).lower()}\n")
        if args.out:
            C.emit_certificate(cert, path=args.out)
    else:
        if len(args.numbers) != 4:
            raise InputError("demo ss1 takes four positive integers p q m n")
        cert = C.ss1_certificate(*args.numbers)
        if args.out:
            C.emit_certificate(cert, path=args.out)
        else:
            out.write(C.dumps(cert))


def cmd_verify(args, out):
    cert = _load_json(args.certificate)
    C.verify_certificate(cert)
    if cert.get("verified") is not True:
        raise InputError("certificate does not claim verified=true")
    out.write(f"{cert['kind']}: verified\n")


def cmd_selftest(args, out):
    """Randomized kernel and group-law checks on a ring."""
    from .equivariance import exp_tE, recognize_R_automorphism

    cfg = _ring_arg(args, args.ring)
    A = cfg.ring()
    if A is None:
        raise InputError("selftest needs r and s in the ring configuration")
    rng = random.Random(args.seed)
    base = A.base
    gens = base.gens_elements()

    def rand_base(deg):
        t = base.zero
        for _ in range(rng.randint(0, 3)):
            m = base.one
            for _ in range(rng.randint(0, deg)):
                m = m * rng.choice(gens)
            t = t + m * rng.randint(-3, 3)
        return t

    failures = 0
    for _ in range(args.samples):
        h = A.zero
        for _ in range(rng.randint(0, 3)):
            h = h + A(rand_base(2)) * A.u ** rng.randint(0, 2) * A.v ** rng.randint(0, 2)
        if A.kernel_test(h) != (h.is_in_R() is not None):
            failures += 1
        t1, t2 = rand_base(3), rand_base(3)
        comp = exp_tE(A, t1).compose(exp_tE(A, t2))
        if comp.images != exp_tE(A, t1 + t2).images:
            failures += 1
        if recognize_R_automorphism(exp_tE(A, t1)) != t1:
            failures += 1
    out.write(f"selftest: {args.samples} samples, {failures} failures (seed {args.seed})\n")
    if failures:
        raise VerificationError(f"{failures} randomized checks failed")


# -- argument parsing --


def build_parser():
    p = argparse.ArgumentParser(prog="danielewski",
                                description="Exact computations in Danielewski-type rings.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the certificate to this file")
    common.add_argument("--nmax", type=int, default=DEFAULT_NMAX, help="radical power budget")
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                        help="nilpotency iteration budget")
    common.add_argument("--order", default="grevlex", choices=sorted(C.ORDERS))
    common.add_argument("--params", help="comma-separated parameter symbols")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("nf", cmd_nf, "canonical form of an expression")
    sp.add_argument("ring")
    sp.add_argument("expr")

    def ideal_cmd(name, func, help_text, f=False):
        sp = add(name, func, help_text)
        sp.add_argument("ring")
        if f:
            sp.add_argument("f")
        sp.add_argument("gens", help="comma-separated generators")
        sp.add_argument("--no-relation", action="store_true",
                        help="do not adjoin the ring relation F")
        return sp

    ideal_cmd("gb", cmd_gb, "reduced Groebner basis with cofactors")
    ideal_cmd("member", cmd_member, "ideal membership certificate", f=True)
    ideal_cmd("radical-pow", cmd_radical_pow, "smallest power in the ideal", f=True)
    ideal_cmd("dim0", cmd_dim0, "properness and zero-dimensionality")
    sp = add("ideal-eq", cmd_ideal_eq, "compare two ideals")
    sp.add_argument("ring")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--no-relation", action="store_true")

    sp = add("height2", cmd_height2, "height-two check of (r, s)")
    sp.add_argument("ring")

    for name, func, help_text in (
        ("lnd-check", cmd_lnd_check, "certify local nilpotency of a derivation"),
        ("lnd-exp", cmd_lnd_exp, "exponential of a locally nilpotent derivation"),
    ):
        sp = add(name, func, help_text)
        sp.add_argument("ring")
        sp.add_argument("--image", action="append",
                        help="NAME=EXPR image of a generator (default: the canonical E)")

    sp = add("recognize-aut", cmd_recognize_aut, "recognize exp(tE)")
    sp.add_argument("ring")
    sp.add_argument("--image", action="append", required=True, help="NAME=EXPR")
    sp.add_argument("--inverse", action="append", help="NAME=EXPR image under the inverse")

    sp = add("lift-aut", cmd_lift_aut, "lift a base automorphism")
    sp.add_argument("ring")
    sp.add_argument("--image", action="append", required=True, help="NAME=EXPR for base vars")
    sp.add_argument("--inverse", action="append", help="NAME=EXPR for the inverse")

    sp = add("conjugate", cmd_conjugate, "conjugate a derivation by an automorphism")
    sp.add_argument("ring")
    sp.add_argument("--map", action="append", help="NAME=EXPR base map to lift")
    sp.add_argument("--t", help="conjugate by exp(tE) instead")
    sp.add_argument("--image", action="append", help="derivation images (default E)")

    sp = add("stable-iso", cmd_stable_iso, "stable isomorphism certificate")
    sp.add_argument("source")
    sp.add_argument("target")

    sp = add("ongelijk", cmd_ongelijk, "ideal obstruction under an automorphism family")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--aut", required=True, help="JSON file with the automorphism family")

    sp = add("demo", cmd_demo, "worked examples")
    sp.add_argument("demo", choices=["fm06-grid", "ss1"])
    sp.add_argument("numbers", nargs="*", type=int)

    sp = add("verify", cmd_verify, "re-check a certificate")
    sp.add_argument("certificate")

    sp = add("selftest", cmd_selftest, "randomized kernel and group-law checks")
    sp.add_argument("ring")
    sp.add_argument("--samples", type=int, default=50)
    return p


def run_command(argv, out=None, err=None):
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        args.func(args, out)
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except RejectionError as exc:
        err.write(f"rejected: {exc}\n")
        return EXIT_REJECT
    except BudgetError as exc:
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except VerificationError as exc:
        err.write(f"internal verification failure: {exc}\n")
        return EXIT_BUG
    return EXIT_OK


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
