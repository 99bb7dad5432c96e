"""Random objects and small utilities shared by the tests."""
import random

from piflat.context import OreContext
from piflat.delta import DeltaPoly, frac
from piflat.ore import OrePoly
from piflat.smith import ElementaryAction, OreMatrix

SKEW = OreContext(["d"], [], time_varying=True)
COMM = OreContext(["d"], [])
COMM2 = OreContext(["d1", "d2"], ["eta"])
PLAIN = OreContext([], [], time_varying=True)


def rand_ground(rng, ctx, deg=1, terms=2, t_free=False, rational=True):
    """Small rational function (or polynomial) of the ground generators."""
    G = ctx.ground
    gens = [n for n in G.names if not (t_free and n == "t")]

    def poly():
        p = G.const(0)
        for _ in range(rng.randint(1, terms)):
            m = G.const(rng.randint(-3, 3))
            for _ in range(rng.randint(0, deg)):
                m = m * G.gen(rng.choice(gens))
            p = p + m
        return p

    num = poly()
    if rational and rng.random() < 0.3:
        den = poly()
        if den:
            return num / den
    return num


def rand_delta_poly(rng, ctx, deg=2, t_free=None, coeff_deg=1, rational=True):
    t_free = (not ctx.time_varying) if t_free is None else t_free
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, deg) for _ in range(ctx.s))
        c = rand_ground(rng, ctx, coeff_deg, 2, t_free, rational)
        if c:
            terms[e] = terms.get(e, ctx.ground.zero) + c
    return DeltaPoly(ctx, {e: c for e, c in terms.items() if c})


def rand_fraction(rng, ctx, deg=1, t_free=None):
    """num / den; skew denominators are kept t-free, since reduced fractions
    with t-dependent denominators grow too fast for quick tests."""
    num = rand_delta_poly(rng, ctx, deg, t_free)
    if rng.random() < 0.4:
        den = rand_delta_poly(rng, ctx, deg, True if ctx.skew else t_free, rational=False)
        if den:
            return frac(ctx, num) / frac(ctx, den)
    return frac(ctx, num)


def rand_ore(rng, ctx, deg=2, coeff=None):
    coeff = coeff or (lambda: rand_fraction(rng, ctx))
    return OrePoly(ctx, [coeff() for _ in range(rng.randint(0, deg) + 1)])


def rand_int_delta(rng, ctx, deg=1):
    """Integer combination of δ-monomials (constant coefficients)."""
    p = DeltaPoly.zero(ctx)
    for _ in range(rng.randint(1, 2)):
        e = tuple(rng.randint(0, deg) for _ in range(ctx.s))
        p = p + DeltaPoly.monomial(ctx, e, rng.randint(-2, 2))
    return frac(ctx, p)


def rand_matrix(rng, ctx, p, q, deg=2, density=0.7, coeff=None):
    z = OrePoly.zero(ctx)
    coeff = coeff or (lambda: rand_int_delta(rng, ctx))
    return OreMatrix(ctx, [[rand_ore(rng, ctx, deg, coeff) if rng.random() < density else z
                            for _ in range(q)] for _ in range(p)], p, q)


def rand_actions(rng, ctx, n, side, count=6, deg=1, coeff=None):
    coeff = coeff or (lambda: rand_int_delta(rng, ctx))
    out = []
    for _ in range(count):
        kind = rng.choice(("permute", "scale", "addmul")) if n > 1 else "scale"
        i = rng.randrange(n)
        j = rng.choice([k for k in range(n) if k != i]) if n > 1 else None
        if kind == "permute":
            out.append(ElementaryAction("permute", side, i, j))
        elif kind == "scale":
            c = frac(ctx, rng.choice((1, -1, 2, -3)))
            if rng.random() < 0.5:
                c = c * frac(ctx, DeltaPoly.gen(ctx, 0)) if ctx.s else c
            out.append(ElementaryAction("scale", side, i, None, c))
        else:
            out.append(ElementaryAction("addmul", side, i, j, rand_ore(rng, ctx, deg, coeff)))
    return out


def unimodular(ctx, actions, n):
    """Explicit matrix of a product of actions (applied to the identity)."""
    from piflat.smith import apply_action

    M = OreMatrix.identity(ctx, n)
    for a in actions:
        M = apply_action(M, a)
    return M


def D(ctx, k=1):
    return OrePoly.D(ctx, k)


def sc(ctx, x):
    return OrePoly.scalar(ctx, x)


def point_value(text, point):
    """Exact value of a rendered expression at a point {name: Fraction}."""
    import sympy

    expr = sympy.sympify(text.replace("^", "**"))
    subs = {sympy.Symbol(k): sympy.Rational(v.numerator, v.denominator) for k, v in point.items()}
    return expr.xreplace(subs)


def rand_point(rng, names):
    from fractions import Fraction

    return {n: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for n in names}


def skew_poly_coeff(rng, ctx=None):
    """δ-polynomial coefficient with polynomial t-dependence (skew mode)."""
    ctx = ctx or SKEW
    return frac(ctx, rand_delta_poly(rng, ctx, 2, rational=False))


def rand_divisor(rng, ctx, deg=2, coeff=None):
    """Nonzero operator for division tests.

    In skew mode the leading coefficient is taken from K: a δ-dependent
    leading coefficient has a t-dependent skew inverse, and the exact
    quotient then carries its derivatives, which grow far beyond test
    size.
    """
    b = rand_ore(rng, ctx, deg, coeff)
    while not b:
        b = rand_ore(rng, ctx, deg, coeff)
    if ctx.skew:
        lc = frac(ctx, rand_ground(rng, ctx, 1, 2) or 1)
        b = OrePoly(ctx, b.coeffs[:-1] + (lc,))
    return b


def data_path(name):
    from importlib.resources import files

    return str(files("piflat") / "data" / name)


def example(name, bindings=None):
    from piflat.sysfile import load_system

    return load_system(data_path(name), bindings)


_INT = __import__("re").compile(r"(?<![A-Za-z_0-9])\d+")


def fraction_value(text, point):
    """Exact value of a rendered expression with Python's Fraction arithmetic.

    Integer literals are wrapped so that '/' stays exact; '^' becomes '**'.
    This shares no code with piflat, which makes it a cheap oracle.
    """
    from fractions import Fraction

    src = _INT.sub(lambda m: f"F({m.group()})", text.replace("^", "**"))
    src = src.replace("**F(", "**int(")
    return eval(src, {"F": Fraction, "int": int}, dict(point))
