"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 parse error, 3 enumeration budget
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import enumeration
from .errors import BudgetExceeded, LatticeError, ParseError
from .formats import (format_code, format_ideal, format_lattice, parse_code, parse_ideal,
                      parse_lattice, parse_matrix, parse_rational, read)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _lattice(path):
    return parse_lattice(read(path))


def _code(path):
    return parse_code(read(path))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _ints(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        q = parse_rational(tok)
        if q.denominator != 1:
            raise ParseError(f"expected an integer, got {tok!r}")
        out.append(int(q))
    if not out:
        raise ParseError("empty vector")
    return out


# lat ----------------------------------------------------------------------


def lattice_report(lat, want_min: bool = False, want_kissing: bool = False) -> str:
    from .lattice import classify

    c = classify(lat)
    lines = [f"dimension {lat.dim}", f"determinant {lat.det}",
             f"integral {_yes(c.integral)}", f"parity {c.parity}",
             f"unimodular {_yes(c.unimodular)}"]
    if c.integral:
        ep = ", ".join(str(p) for p in c.elementary_primes) or "none"
        lines.append(f"p-elementary {ep}")
        lines.append(f"discriminant group {c.discriminant}")
    if want_min or want_kissing:
        rep = enumeration.minimum(lat)
        lines.append(f"minimum {rep.minimum}")
        if want_kissing:
            lines.append(f"kissing {rep.count}")
    return "\n".join(lines) + "\n"


def cmd_lat_info(a):
    return lattice_report(_lattice(a.file), a.min, a.kissing)


def cmd_lat_dual(a):
    from .lattice import dual

    return format_lattice(dual(_lattice(a.file)))


def cmd_lat_lll(a):
    from .lattice import lll

    return format_lattice(lll(_lattice(a.file)))


def cmd_lat_disc(a):
    from .lattice import discriminant_group

    g = discriminant_group(_lattice(a.file))
    return f"{g}\norder {g.order}\n"


def cmd_lat_isom(a):
    from .formats import format_matrix
    from .isometry import is_isometric

    r = is_isometric(_lattice(a.file1), _lattice(a.file2), cap=a.cap)
    out = str(r) + "\n"
    if r.matrix is not None:
        out += format_matrix(r.matrix)
    return out


# code ---------------------------------------------------------------------


def code_report(code) -> str:
    from .codes import MAX_MIN_WEIGHT_DIM, is_self_dual, is_self_orthogonal, min_weight

    lines = [f"field F_{code.p}", f"length {code.n}", f"dimension {code.k}",
             f"self-orthogonal {_yes(is_self_orthogonal(code))}",
             f"self-dual {_yes(is_self_dual(code))}"]
    if code.k == 0:
        lines.append("minimum weight none (zero code)")
    elif code.k > MAX_MIN_WEIGHT_DIM:
        lines.append(f"minimum weight not computed (k > {MAX_MIN_WEIGHT_DIM})")
    else:
        lines.append(f"minimum weight {min_weight(code)}")
    return "\n".join(lines) + "\n"


def cmd_code_info(a):
    return code_report(_code(a.file))


def cmd_code_dual(a):
    from .codes import dual_code

    return format_code(dual_code(_code(a.file)))


# construct ----------------------------------------------------------------


def cmd_construct_a(a):
    from .codes import construction_a

    return format_lattice(construction_a(_code(a.file)))


def cmd_construct_neighbor(a):
    from .neighbor import two_neighbor

    return format_lattice(two_neighbor(_lattice(a.file), _ints(a.v)))


def cmd_construct_koch(a):
    from .neighbor import koch_lambda

    return format_lattice(koch_lambda(_code(a.file), literal=a.literal))


# aut ----------------------------------------------------------------------


def cmd_aut_type(a):
    from .auttype import split_fix_image, verify_type_laws

    lat = _lattice(a.file)
    sigma = parse_matrix(read(a.sigma))
    sp = split_fix_image(lat, sigma, a.p)
    lines = [f"type {sp.type}"]
    for name, part in (("fixed lattice L_K", sp.fixed), ("image lattice L_I", sp.image)):
        if part is None:
            lines.append(f"{name}: dim 0")
        else:
            lines.append(f"{name}: dim {part.dim}, det {part.det}")
    lines.append(f"index [L : L_K + L_I] = {a.p}^{sp.s}")
    out = "\n".join(lines) + "\n"
    if a.verify:
        rep = verify_type_laws(lat, sigma, a.p)
        out += "\n".join(f"{k}: {v}" for k, v in rep.laws.items()) + "\n"
        if not rep.ok:
            raise LatticeError("a type law failed")
    return out


def cmd_aut_cyclo(a):
    from .auttype import cyclo_factor

    return str(cyclo_factor(parse_matrix(read(a.file)))) + "\n"


# scan ---------------------------------------------------------------------


def cmd_scan(a):
    from .auttype import format_scan, scan_types

    rows = scan_types(a.dim, parse_rational(a.min), a.p)
    allowed = sum(r.status == "allowed" for r in rows)
    out = format_scan(rows, allowed_only=not a.all)
    return out + f"{allowed} allowed, {len(rows) - allowed} excluded\n"


# ideal --------------------------------------------------------------------


def _spec(a):
    from .cyclotomic import CycloField, FractionalIdeal, IdealLatticeSpec, parse_element

    field = CycloField(a.m)
    ideal = parse_ideal(read(a.ideal), a.m) if a.ideal else FractionalIdeal.unit(field)
    return IdealLatticeSpec(ideal, parse_element(field, a.alpha))


def cmd_ideal_lattice(a):
    from .cyclotomic import ideal_lattice

    return format_lattice(ideal_lattice(_spec(a)))


def cmd_ideal_dual(a):
    from .cyclotomic import ideal_dual

    return format_ideal(ideal_dual(_spec(a), cross_check=True))


def cmd_ideal_unimodular(a):
    from .cyclotomic import ideal_lattice, is_unimodular

    spec = _spec(a)
    lat = ideal_lattice(spec)
    return f"unimodular {_yes(is_unimodular(spec))}\ndeterminant {lat.det}\n"


def cmd_ideal_tp(a):
    from .cyclotomic import CycloField, is_totally_positive, parse_element

    alpha = parse_element(CycloField(a.m), a.alpha)
    return f"totally positive {_yes(is_totally_positive(alpha))}\n"


# bound --------------------------------------------------------------------


def cmd_bound_gamma(a):
    from .bounds import upper_gamma

    return str(upper_gamma(a.n)) + "\n"


def cmd_bound_extremal(a):
    from .bounds import extremal_min

    return f"{extremal_min(a.n)}\n"


def cmd_bound_exists(a):
    from .bounds import exists_possible

    ok = exists_possible(a.dim, parse_rational(a.min), parse_rational(a.det))
    return ("possible" if ok else "excluded by bound") + "\n"


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, metavar="NODES",
                        help="enumeration node budget")
    p = argparse.ArgumentParser(prog="unilat", parents=[common],
                                description="exact computations with integral lattices, codes and ideal lattices")
    sub = p.add_subparsers(dest="group", required=True)

    def group(name, help_):
        g = sub.add_parser(name, help=help_, parents=[common])
        return g.add_subparsers(dest="cmd", required=True)

    def leaf(parent, name, fn, help_):
        s = parent.add_parser(name, help=help_, parents=[common])
        s.set_defaults(fn=fn)
        return s

    lat = group("lat", "lattice invariants")
    s = leaf(lat, "info", cmd_lat_info, "determinant, parity, discriminant group")
    s.add_argument("file")
    s.add_argument("--min", action="store_true", help="also compute the minimum")
    s.add_argument("--kissing", action="store_true", help="also count minimal vectors")
    for name, fn, h in (("dual", cmd_lat_dual, "dual lattice"), ("lll", cmd_lat_lll, "LLL-reduced basis"),
                        ("disc", cmd_lat_disc, "discriminant group")):
        leaf(lat, name, fn, h).add_argument("file")
    s = leaf(lat, "isom", cmd_lat_isom, "isometry test")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--cap", type=int, default=12, metavar="DIM")

    code = group("code", "linear codes")
    leaf(code, "info", cmd_code_info, "self-duality and minimum weight").add_argument("file")
    leaf(code, "dual", cmd_code_dual, "dual code").add_argument("file")

    con = group("construct", "lattice constructions")
    leaf(con, "a", cmd_construct_a, "code lattice A_p(C)").add_argument("file")
    s = leaf(con, "neighbor", cmd_construct_neighbor, "2-neighbour along v")
    s.add_argument("file")
    s.add_argument("--v", required=True, help='coefficients in the lattice basis, e.g. "1 1 1 1"')
    s = leaf(con, "koch", cmd_construct_koch, "2-neighbour of A_3(C) along the all-ones vector")
    s.add_argument("file")
    s.add_argument("--literal", action="store_true", help="glue with v itself instead of v - 2 e_1")

    aut = group("aut", "automorphisms")
    s = leaf(aut, "type", cmd_aut_type, "type p-(z,d)-s of an order-p automorphism")
    s.add_argument("file")
    s.add_argument("--sigma", required=True, metavar="FILE_MATRIX")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="check the type laws")
    leaf(aut, "cyclo", cmd_aut_cyclo, "cyclotomic factorisation").add_argument("file")

    s = sub.add_parser("scan", help="bound and parity scan of automorphism types", parents=[common])
    s.set_defaults(fn=cmd_scan)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--min", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--all", action="store_true", help="also list excluded types")

    idl = group("ideal", "ideal lattices in Q[zeta_m]")
    for name, fn, h in (("lattice", cmd_ideal_lattice, "the lattice (J, b_alpha)"),
                        ("dual", cmd_ideal_dual, "dual ideal conj(J)^-1 Delta alpha^-1"),
                        ("unimodular", cmd_ideal_unimodular, "unimodularity criterion")):
        s = leaf(idl, name, fn, h)
        s.add_argument("--m", type=int, required=True)
        s.add_argument("--ideal", metavar="FILE", help="ideal file (default: the full ring)")
        s.add_argument("--alpha", required=True, help="power-basis coefficients")
    s = leaf(idl, "tp-test", cmd_ideal_tp, "total positivity test")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--alpha", required=True)

    bnd = group("bound", "Hermite constant bounds")
    leaf(bnd, "gamma", cmd_bound_gamma, "known bound on gamma_n").add_argument("--n", type=int, required=True)
    leaf(bnd, "extremal", cmd_bound_extremal, "extremal minimum").add_argument("--n", type=int, required=True)
    s = leaf(bnd, "exists", cmd_bound_exists, "can such a lattice exist?")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--min", required=True)
    s.add_argument("--det", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is not None:
        enumeration.DEFAULT_BUDGET = args.budget
    try:
        out = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LatticeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
