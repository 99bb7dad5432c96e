"""System files: a small header plus the matrices A and B.

    # comment
    delays: d
    params: k
    state: x1, x2
    inputs: u
    A = [[Dt, -k*(d - d^2)],
         [0, Dt]]
    B = [[0], [d]]

Headers are optional except that every identifier must be declared.  A
matrix may span several lines; it ends when its brackets balance.
"""
from dataclasses import dataclass, field
from pathlib import Path

from .context import RESERVED, delay_length_name
from .errors import DimensionMismatch, ParseError, UndeclaredIdentifier
from .flatness import LinearDelaySystem
from .parser import (
    Evaluator,
    identifiers,
    make_context,
    parse_bindings,
    parse_matrix_ast,
    substitute,
)
from .smith import OreMatrix

HEADERS = ("delays", "params", "state", "inputs")


@dataclass
class SystemSource:
    delays: tuple = ()
    params: tuple = ()
    state: tuple = ()
    inputs: tuple = ()
    blocks: dict = field(default_factory=dict)
    path: str = ""


def _names(value, line_no, text):
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    for n in names:
        if not n.isidentifier():
            raise ParseError(f"line {line_no}: bad name {n!r}", text, 0)
    return names


def read_source(text, path=""):
    """Split a system file into header fields and matrix source strings."""
    src = SystemSource(path=path)
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        raw = lines[k].split("#", 1)[0]
        k += 1
        line = raw.strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in HEADERS and "=" not in head:
            setattr(src, head.strip(), _names(rest, k, text))
            continue
        name, sep, rest = line.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise ParseError(f"line {k}: expected 'header: ...' or 'NAME = [...]'", text, 0)
        if name in src.blocks:
            raise ParseError(f"line {k}: matrix {name} defined twice", text, 0)
        body = rest
        while body.count("[") > body.count("]") and k < len(lines):
            body += "\n" + lines[k].split("#", 1)[0]
            k += 1
        src.blocks[name] = body.strip()
    declared = list(src.delays + src.params + src.state + src.inputs)
    declared += [delay_length_name(d) for d in src.delays]
    dup = {n for n in declared if declared.count(n) > 1} | (set(declared) & set(RESERVED))
    if dup:
        raise ParseError(f"names declared twice or reserved: {', '.join(sorted(dup))}", text, 0)
    return src


def build_system(src, bindings=None):
    """LinearDelaySystem from a SystemSource; bindings: ['k=t', ...] or dict."""
    for name in ("A", "B"):
        if name not in src.blocks:
            raise ParseError(f"missing matrix {name}", src.path, 0)
    bind = parse_bindings(bindings or {})
    unknown = set(bind) - set(src.params)
    if unknown:
        raise UndeclaredIdentifier(sorted(unknown)[0])
    asts = {k: [[substitute(a, bind) for a in r] for r in parse_matrix_ast(v)]
            for k, v in src.blocks.items()}
    flat = [a for rows in asts.values() for r in rows for a in r]
    ctx = make_context(src.delays, src.params, flat, bind)
    ev = Evaluator(ctx, src.path)
    known = {"t", "Dt"} | set(ctx.delays) | set(ctx.taus) | set(ctx.params)
    mats = {}
    for name, rows in asts.items():
        for r in rows:
            for a in r:
                bad = identifiers(a) - known
                if bad:
                    raise UndeclaredIdentifier(sorted(bad)[0])
        if rows:
            mats[name] = OreMatrix(ctx, [[ev(a) for a in r] for r in rows])
        else:
            mats[name] = OreMatrix(ctx, [], 0, 0)
    A, B = mats["A"], mats["B"]
    n = A.rows
    if B.rows == 0 and n:
        B = OreMatrix(ctx, [[] for _ in range(n)], n, 0)
    state = src.state or tuple(f"x{i + 1}" for i in range(n))
    inputs = src.inputs or tuple(f"u{i + 1}" for i in range(B.cols))
    if len(state) != n or len(inputs) != B.cols:
        raise DimensionMismatch(
            f"declared {len(state)} states and {len(inputs)} inputs, "
            f"matrices are {A.rows}x{A.cols} and {B.rows}x{B.cols}"
        )
    return LinearDelaySystem(A, B, tuple(state), tuple(inputs))


def parse_system(text, bindings=None, path=""):
    return build_system(read_source(text, path), bindings)


def load_system(path, bindings=None):
    path = Path(path)
    return parse_system(path.read_text(encoding="utf-8"), bindings, str(path))
