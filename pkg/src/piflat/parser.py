"""Expression grammar for operators over K(δ)[D].

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | IDENT | '(' expr ')'
    matrix := '[' ']' | '[' row (',' row)* ']'
    row    := '[' [expr (',' expr)*] ']'

`*` is ring multiplication in written order.  `/` and negative powers are
only allowed on D-free divisors (elements of K(δ)).  Identifiers are t,
Dt, the declared delays, their lengths (d -> tau, d2 -> tau2) and the
declared parameters; parameters may be bound to expressions.

Parsing is two-stage: text to a small tuple AST, then evaluation in a ring
context.  The AST pass decides whether anything depends on t, which picks
the ring mode before any arithmetic happens.
"""
import re

from .context import OreContext, delay_length_name
from .errors import DivisionByZero, ParseError, UndeclaredIdentifier
from .ore import OrePoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_DELAY = re.compile(r"d\d*$")


def tokenize(text):
    """List of (kind, value, pos) with kinds 'int', 'id', 'op', 'end'."""
    out = []
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            out.append(("end", None, n))
            return out
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("id", m.group(2), start))
        else:
            c = m.group(3)
            if c not in "+-*/^(),[]":
                raise ParseError(f"unexpected character {c!r}", text, start)
            out.append(("op", c, start))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def fail(self, expected):
        kind, val, pos = self.peek()
        what = "end of input" if kind == "end" else repr(str(val))
        raise ParseError(f"unexpected {what}", self.text, pos, expected)

    def expect(self, op):
        kind, val, _ = self.peek()
        if kind != "op" or val != op:
            self.fail([repr(op)])
        self.take()

    def at(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def done(self):
        if self.peek()[0] != "end":
            self.fail(["operator", "end of input"])

    # grammar
    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*", "/"):
            _, op, pos = self.take()
            node = ("mul" if op == "*" else "div", node, self.unary(), pos)
        return node

    def unary(self):
        if self.at("-"):
            self.take()
            return ("neg", self.unary())
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.at("^"):
            _, _, pos = self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            kind, val, _ = self.peek()
            if kind != "int":
                self.fail(["integer exponent"])
            self.take()
            node = ("pow", node, sign * val, pos)
        return node

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return ("int", val)
        if kind == "id":
            self.take()
            return ("id", val, pos)
        if self.at("("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(["integer", "identifier", "'('"])

    def matrix(self):
        self.expect("[")
        rows = []
        if self.at("]"):
            self.take()
            return rows
        while True:
            self.expect("[")
            row = []
            if not self.at("]"):
                row.append(self.expr())
                while self.at(","):
                    self.take()
                    row.append(self.expr())
            self.expect("]")
            rows.append(row)
            if self.at(","):
                self.take()
                continue
            self.expect("]")
            return rows


def parse_ast(text):
    p = _Parser(text)
    node = p.expr()
    p.done()
    return node


def parse_matrix_ast(text):
    p = _Parser(text)
    rows = p.matrix()
    p.done()
    if len({len(r) for r in rows}) > 1:
        raise ParseError("rows of different lengths", text, 0)
    return rows


def identifiers(node, acc=None):
    """Set of identifier names used in an AST."""
    acc = set() if acc is None else acc
    if node[0] == "id":
        acc.add(node[1])
    elif node[0] != "int":
        for child in node[1:]:
            if isinstance(child, tuple):
                identifiers(child, acc)
    return acc


def substitute(node, bindings):
    """Replace bound identifiers by their ASTs (bindings: name -> AST)."""
    if node[0] == "id":
        return bindings.get(node[1], node)
    if node[0] == "int":
        return node
    return (node[0],) + tuple(
        substitute(c, bindings) if isinstance(c, tuple) else c for c in node[1:]
    )


class Evaluator:
    """Evaluates ASTs to OrePoly in a fixed context."""

    def __init__(self, ctx, text=""):
        self.ctx = ctx
        self.text = text
        env = {"t": lambda: ctx.ground.gen("t"), "Dt": lambda: OrePoly.D(ctx)}
        for i, d in enumerate(ctx.delays):
            env[d] = lambda i=i: ctx.delta(i)
        for name in ctx.taus + ctx.params:
            env[name] = lambda name=name: ctx.ground.gen(name)
        self.env = env
        self.cache = {}

    def lookup(self, name, pos):
        if name not in self.cache:
            if name not in self.env:
                raise UndeclaredIdentifier(name, pos)
            v = self.env[name]()
            self.cache[name] = v if isinstance(v, OrePoly) else OrePoly.scalar(self.ctx, v)
        return self.cache[name]

    def _inverse(self, x, pos):
        if x.degree() is None:
            raise DivisionByZero(f"division by zero at position {pos}")
        if x.degree() > 0:
            raise ParseError("cannot invert an expression containing Dt", self.text, pos)
        return OrePoly(self.ctx, (x.coeffs[0].inverse(),))

    def __call__(self, node):
        tag = node[0]
        if tag == "int":
            return OrePoly.scalar(self.ctx, node[1])
        if tag == "id":
            return self.lookup(node[1], node[2])
        if tag == "neg":
            return -self(node[1])
        if tag == "add":
            return self(node[1]) + self(node[2])
        if tag == "sub":
            return self(node[1]) - self(node[2])
        if tag == "mul":
            return self(node[1]) * self(node[2])
        if tag == "div":
            return self(node[1]) * self._inverse(self(node[2]), node[3])
        if tag == "pow":
            base, k = self(node[1]), node[2]
            if k < 0:
                base, k = self._inverse(base, node[3]), -k
            return base ** k
        raise AssertionError(tag)


def delays_of(names):
    """Delay names among identifiers (d, d1, d2, ...) in sorted order."""
    return sorted((n for n in names if _DELAY.match(n)), key=lambda s: (len(s), s))


def make_context(delays, params, asts, bindings=None):
    """Context for expressions: time-varying iff t occurs after binding."""
    bindings = dict(bindings or {})
    used = set()
    for a in asts:
        identifiers(substitute(a, bindings), used)
    free = tuple(p for p in params if p not in bindings)
    return OreContext(delays, free, time_varying="t" in used)


def parse_bindings(pairs):
    """['k=t', ...] or {'k': 't'} -> {name: AST}."""
    items = pairs.items() if isinstance(pairs, dict) else (p.split("=", 1) for p in pairs)
    out = {}
    for item in items:
        if len(item) != 2:
            raise ParseError("parameter binding must look like name=expr", str(item), 0)
        name, src = item[0].strip(), item[1]
        out[name] = parse_ast(src)
    for name, node in out.items():
        loops = identifiers(node) & set(out)
        if loops:
            raise ParseError(f"binding of {name} refers to bound parameter(s) "
                             f"{', '.join(sorted(loops))}", str(node), 0)
    return out


def parse_expression(text, ctx=None, params=(), bindings=None):
    """Parse one operator expression.

    Without ``ctx`` the delays are read off the identifiers (d, d1, ...)
    and the mode is chosen from whether t occurs.
    """
    bind = parse_bindings(bindings or {})
    ast = substitute(parse_ast(text), bind)
    if ctx is None:
        names = identifiers(ast)
        delays = delays_of(names)
        taus = {delay_length_name(d) for d in delays}
        known = {"t", "Dt"} | set(delays) | taus | set(params)
        for name in sorted(names - known):
            raise UndeclaredIdentifier(name, text.find(name))
        ctx = make_context(delays, params, [ast])
    return Evaluator(ctx, text)(ast)


def parse_matrix(text, ctx):
    """Parse a matrix literal in a given context."""
    from .smith import OreMatrix

    rows = parse_matrix_ast(text)
    ev = Evaluator(ctx, text)
    if not rows:
        return OreMatrix(ctx, [], 0, 0)
    return OreMatrix(ctx, [[ev(a) for a in r] for r in rows])


def parse_delta_poly(text, ctx):
    """Parse a D-free, denominator-free expression as a DeltaPoly."""
    x = Evaluator(ctx, text)(parse_ast(text))
    if x.degree() is None:
        from .delta import DeltaPoly

        return DeltaPoly.zero(ctx)
    if x.degree() > 0 or not x.coeffs[0].is_poly():
        raise ParseError("expected a polynomial in the delays", text, 0)
    return x.coeffs[0].num
