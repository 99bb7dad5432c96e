"""Command line front end.

    piflat check  SYSTEM [--param k=t]
    piflat flat   SYSTEM [--param k=t] [--json OUT]
    piflat smith  SYSTEM --matrix A|B|F [--param k=t] [--json OUT]
    piflat verify SYSTEM CERT.json [--param k=t]

Exit codes: 0 success, 2 not flat / not hyper-regular / failed verification
of a given certificate, 1 input or internal error.
"""
import argparse
import json
import sys

from .certificate import (
    certificate_doc,
    certificate_from_doc,
    dumps,
    flat_output_lines,
    matrix_doc,
)
from .errors import NotHyperRegular, PiflatError
from .flatness import compute_pi_flat, implicit_representation, verify_certificate
from .render import render_delta, render_matrix, render_ore
from .smith import is_hyper_regular, smith_jacobson
from .sysfile import load_system

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def _bindings(pairs):
    out = {}
    for p in pairs or ():
        name, sep, expr = p.partition("=")
        if not sep or not name.strip():
            raise PiflatError(f"--param expects name=expr, got {p!r}")
        out[name.strip()] = expr.strip()
    return out


def _header(sys_, path):
    ctx = sys_.ctx
    return (f"system: {path}  (n={sys_.n}, m={sys_.m}, delays: "
            f"{', '.join(ctx.delays) or '-'}; params: {', '.join(ctx.params) or '-'}; "
            f"mode: {ctx.mode.value})")


def _write_json(target, doc, out):
    text = dumps(doc)
    if target == "-":
        out.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _witness_lines(w):
    return [f"{w.source}: not hyper-regular, {w.describe()}",
            "the system module has torsion over K(δ)[D], so it is not π-flat for any π"]


def cmd_check(args, out):
    sys_ = load_system(args.system, _bindings(args.param))
    print(_header(sys_, args.system), file=out)
    sf = smith_jacobson(sys_.B)
    ok, w = is_hyper_regular(sys_.B, sf, source="B")
    if not ok:
        for line in _witness_lines(w):
            print(line, file=out)
        return EXIT_FAIL
    print("B: hyper-regular", file=out)
    F = implicit_representation(sys_)[0]
    if F.rows == 0:
        print("F: empty (m = n), hyper-regular", file=out)
        return EXIT_OK
    ok, w = is_hyper_regular(F, source="F")
    if not ok:
        for line in _witness_lines(w):
            print(line, file=out)
        return EXIT_FAIL
    print("F: hyper-regular", file=out)
    return EXIT_OK


def cmd_flat(args, out):
    bind = _bindings(args.param)
    sys_ = load_system(args.system, bind)
    print(_header(sys_, args.system), file=out)
    try:
        cert = compute_pi_flat(sys_)
    except NotHyperRegular as e:
        for line in _witness_lines(e.witness):
            print(line, file=out)
        return EXIT_FAIL
    report = verify_certificate(sys_, cert)
    print(f"pi = {render_delta(cert.pi)}", file=out)
    print(f"pi_bar = {render_delta(cert.pi_bar)}, pi_P = {render_delta(cert.pi_P)}, "
          f"pi_R = {render_delta(cert.pi_R)}", file=out)
    for name in ("P", "Q", "R"):
        print(f"{name} = {render_matrix(getattr(cert, name))}", file=out)
    for line in flat_output_lines(sys_, cert.P):
        print(line, file=out)
    for k, v in report.checks.items():
        print(f"check {k}: {'ok' if v else 'FAILED'}", file=out)
    if args.json:
        doc = certificate_doc(sys_, cert, report, bind, source=args.system)
        _write_json(args.json, doc, out)
    if not report.passed:
        print("internal error: the computed certificate does not verify", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_smith(args, out):
    sys_ = load_system(args.system, _bindings(args.param))
    if args.matrix == "F":
        try:
            M = implicit_representation(sys_)[0]
        except NotHyperRegular as e:
            for line in _witness_lines(e.witness):
                print(line, file=out)
            return EXIT_FAIL
    else:
        M = getattr(sys_, args.matrix)
    print(_header(sys_, args.system), file=out)
    print(f"{args.matrix} = {render_matrix(M)}", file=out)
    if M.rows == 0 or M.cols == 0:
        print(f"{args.matrix} is empty ({M.rows}x{M.cols}); nothing to decompose", file=out)
        return EXIT_OK
    sf = smith_jacobson(M)
    ok, w = is_hyper_regular(M, sf, source=args.matrix)
    print(f"diagonal = [{', '.join(render_ore(d) for d in sf.diag)}]", file=out)
    print(f"U = {render_matrix(sf.U.matrix)}", file=out)
    print(f"V = {render_matrix(sf.V.matrix)}", file=out)
    print(f"hyper-regular: {'yes' if ok else 'no, ' + w.describe()}", file=out)
    if args.json:
        doc = {
            "matrix": args.matrix,
            "input": matrix_doc(M),
            "diagonal": [render_ore(d) for d in sf.diag],
            "rank": sf.rank,
            "U": matrix_doc(sf.U.matrix),
            "U_inverse": matrix_doc(sf.U.inverse),
            "V": matrix_doc(sf.V.matrix),
            "V_inverse": matrix_doc(sf.V.inverse),
            "hyper_regular": ok,
        }
        _write_json(args.json, doc, out)
    return EXIT_OK


def cmd_verify(args, out):
    with open(args.certificate, encoding="utf-8") as fh:
        doc = json.load(fh)
    bind = _bindings(args.param) if args.param else dict(doc.get("meta", {}).get("bindings", {}))
    sys_ = load_system(args.system, bind)
    print(_header(sys_, args.system), file=out)
    cert = certificate_from_doc(doc, sys_)
    report = verify_certificate(sys_, cert)
    for k, v in report.checks.items():
        print(f"check {k}: {'ok' if v else 'FAILED'}", file=out)
    for k, v in report.details.items():
        print(f"  {k}: {v}", file=out)
    print("certificate verified" if report.passed else "certificate REJECTED", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="piflat", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("system", help="system file")
        sp.add_argument("--param", action="append", metavar="NAME=EXPR",
                        help="bind a declared parameter to an expression (repeatable)")

    sp = sub.add_parser("check", help="hyper-regularity of B and F")
    common(sp)
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("flat", help="compute and verify a π-flat output")
    common(sp)
    sp.add_argument("--json", metavar="OUT", help="write the certificate document ('-' = stdout)")
    sp.set_defaults(func=cmd_flat)
    sp = sub.add_parser("smith", help="Smith-Jacobson form of A, B or F")
    common(sp)
    sp.add_argument("--matrix", choices=("A", "B", "F"), default="B")
    sp.add_argument("--json", metavar="OUT", help="write the decomposition ('-' = stdout)")
    sp.set_defaults(func=cmd_smith)
    sp = sub.add_parser("verify", help="re-check a certificate document")
    common(sp)
    sp.add_argument("certificate", help="certificate JSON written by 'flat --json'")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (PiflatError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"piflat: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
