"""JSON documents for certificates: canonical strings, explicit dimensions.

No timestamps or host data go into a document, so the same system always
serializes to the same bytes.
"""
import json

from .errors import DimensionMismatch, PiflatError
from .flatness import FlatCertificate
from .parser import Evaluator, parse_ast, parse_delta_poly
from .render import render_delta, render_ore
from .smith import OreMatrix

FORMAT = 1
MATRICES = ("P", "Q", "R")
INTERMEDIATE_MATRICES = ("M", "N", "F", "Qtilde")
INTERMEDIATE_POLYS = ("pi_bar", "pi_P", "pi_R")


def matrix_doc(M):
    return {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[render_ore(e) for e in r] for r in M.entries],
    }


def matrix_from_doc(doc, ctx):
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = doc["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise DimensionMismatch(f"matrix entries do not match {rows}x{cols}")
    ev = Evaluator(ctx)
    return OreMatrix(ctx, [[ev(parse_ast(e)) for e in r] for r in entries], rows, cols)


def flat_output_lines(sys, P):
    """'y1 = x1'-style lines for y = P·x."""
    out = []
    for i, row in enumerate(P.entries):
        terms = []
        for e, name in zip(row, sys.state):
            if e.is_zero():
                continue
            if e.is_one():
                terms.append(name)
            elif e == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"({render_ore(e)})*{name}")
        rhs = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        out.append(f"y{i + 1} = {rhs}")
    return out


def certificate_doc(sys, cert, report=None, bindings=None, source=""):
    ctx = sys.ctx
    doc = {
        "meta": {
            "tool": "piflat",
            "version": _version(),
            "format": FORMAT,
            "source": source,
            "delays": list(ctx.delays),
            "params": list(ctx.params),
            "bindings": dict(bindings or {}),
            "mode": ctx.mode.value,
            "state": list(sys.state),
            "inputs": list(sys.inputs),
        },
        "pi": render_delta(cert.pi),
        "flat_output": flat_output_lines(sys, cert.P),
    }
    for name in MATRICES:
        doc[name] = matrix_doc(getattr(cert, name))
    inter = {name: render_delta(getattr(cert, name)) for name in INTERMEDIATE_POLYS}
    for name in INTERMEDIATE_MATRICES:
        inter[name] = matrix_doc(getattr(cert, name))
    doc["intermediates"] = inter
    if report is not None:
        doc["report"] = {"passed": report.passed, "checks": dict(report.checks),
                         "details": dict(report.details)}
    return doc


def certificate_from_doc(doc, sys):
    """Rebuild a FlatCertificate in the ring of ``sys``."""
    ctx = sys.ctx
    meta = doc.get("meta", {})
    if meta.get("delays", list(ctx.delays)) != list(ctx.delays):
        raise PiflatError("certificate and system declare different delays")
    if meta.get("mode", ctx.mode.value) != ctx.mode.value:
        raise PiflatError(
            f"certificate was made in {meta['mode']} mode, system is {ctx.mode.value} "
            "(check the --param bindings)"
        )
    mats = {name: matrix_from_doc(doc[name], ctx) for name in MATRICES}
    inter = doc.get("intermediates", {})
    im = {name: matrix_from_doc(inter[name], ctx) if name in inter else None
          for name in INTERMEDIATE_MATRICES}
    # F is rebuilt from the system during verification, never trusted
    im["F"] = None
    one = parse_delta_poly("1", ctx)
    ip = {name: parse_delta_poly(inter[name], ctx) if name in inter else one
          for name in INTERMEDIATE_POLYS}
    return FlatCertificate(pi=parse_delta_poly(doc["pi"], ctx), **mats, **im, **ip)


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _version():
    from . import __version__

    return __version__


__all__ = ["certificate_doc", "certificate_from_doc", "dumps", "matrix_doc",
           "matrix_from_doc", "flat_output_lines"]
