"""Canonical text for field elements, δ-polynomials, fractions, operators.

Output is accepted back by ``piflat.parser``.  Terms come in descending
graded-lex order (D-degree first for operators), coefficients sit left of
their monomial, and `*` is written in ring order.
"""


def _rat(q):
    return str(q)


def _monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _join(terms):
    if not terms:
        return "0"
    out = terms[0]
    for s in terms[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def _scaled(coef, mono):
    """c*mono for a rational c, with the usual 1 / -1 shortcuts."""
    if not mono:
        return _rat(coef)
    if coef == 1:
        return mono
    if coef == -1:
        return "-" + mono
    return f"{_rat(coef)}*{mono}"


def render_mpoly(p, names):
    return _join([_scaled(c, _monomial(names, e)) for e, c in p.items()])


def _is_power(p):
    """A single monic monomial in one variable (safe as a bare divisor)."""
    if len(p.terms) != 1 or p.lc() != 1:
        return False
    (e, _), = p.items()
    return sum(1 for x in e if x) == 1


def _integral(num, den):
    """Scale num/den by one rational so both have coprime integer coefficients."""
    from math import gcd, lcm

    coeffs = list(num.terms.values()) + list(den.terms.values())
    L = lcm(*(int(c.denominator) for c in coeffs))
    G = gcd(*(int(c.numerator * L // c.denominator) for c in coeffs))
    f = den.terms[max(den.terms)]
    k = L // G if f > 0 else -(L // G)
    return num.scale(k), den.scale(k)


def render_field(x):
    names = x.field.names
    if x.den.is_one():
        return render_mpoly(x.num, names)
    numer, denom = _integral(x.num, x.den)
    num = render_mpoly(numer, names)
    if len(numer.terms) > 1:
        num = f"({num})"
    den = render_mpoly(denom, names)
    if not _is_power(denom):
        den = f"({den})"
    return f"{num}/{den}"


def _coef_times(c, mono):
    """Ground-field coefficient c times a monomial string (may be empty)."""
    if c.is_const():
        return _scaled(c.const_value(), mono)
    s = render_field(c)
    if not mono:
        return s
    if c.den.is_one() and len(c.num.terms) == 1:
        return f"{s}*{mono}"
    return f"({s})*{mono}"


def render_delta(p):
    names = p.ctx.delays
    return _join([_coef_times(c, _monomial(names, e)) for e, c in p.items()])


def _is_single(p):
    """True if the DeltaPoly renders as one product (no top-level + or -)."""
    if len(p.terms) != 1:
        return False
    c = next(iter(p.terms.values()))
    return c.den.is_one() and len(c.num.terms) == 1 and not (
        c.is_const() and c.const_value().denominator != 1
    )


def render_fraction(x, mono=""):
    """den^-1*num, optionally followed by ``*mono``."""
    den, num = x.den, x.num
    if den.is_one():
        if not mono:
            return render_delta(num)
        if len(num.terms) == 1:
            (e, c), = num.items()
            m = _monomial(num.ctx.delays, e)
            return _coef_times(c, "*".join(s for s in (m, mono) if s))
        return f"({render_delta(num)})*{mono}"
    dtxt = render_delta(den)
    if len(den.terms) == 1 and not any(
        sum(1 for k in e if k) > 1 for e in den.terms
    ):
        (e, _), = den.items()
        i = next(j for j, k in enumerate(e) if k)
        head = f"{den.ctx.delays[i]}^-{e[i]}"
    else:
        head = f"({dtxt})^-1"
    parts = [head]
    if not num.is_one():
        ntxt = render_delta(num)
        parts.append(ntxt if _is_single(num) and not ntxt.startswith("-") else f"({ntxt})")
    if mono:
        parts.append(mono)
    return "*".join(parts)


def _dmono(k):
    return "" if k == 0 else ("Dt" if k == 1 else f"Dt^{k}")


def render_ore(p):
    terms = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        terms.append(render_fraction(c, _dmono(k)))
    return _join(terms)


def render_matrix(m):
    if m.rows == 0 or m.cols == 0:
        return "[]"
    rows = [", ".join(render_ore(e) for e in row) for row in m.entries]
    return "[" + ", ".join(f"[{r}]" for r in rows) + "]"


def render(x):
    """Dispatch on the value type."""
    from .delta import DeltaFraction, DeltaPoly
    from .groundfield import FieldElem
    from .ore import OrePoly
    from .smith import OreMatrix

    if isinstance(x, OrePoly):
        return render_ore(x)
    if isinstance(x, OreMatrix):
        return render_matrix(x)
    if isinstance(x, DeltaFraction):
        return render_fraction(x)
    if isinstance(x, DeltaPoly):
        return render_delta(x)
    if isinstance(x, FieldElem):
        return render_field(x)
    raise TypeError(f"cannot render {type(x).__name__}")
