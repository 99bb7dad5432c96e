"""The δ-ring K[δ_1..δ_s] and its fraction field K(δ).

``DeltaPoly`` keeps coefficients on the left of δ-monomials, so that
δ·a = σ(a)·δ is applied on every product in skew mode.  Fractions are left
fractions den^-1·num.  In commutative mode (t-free coefficients, or no
delay) a fraction is simply an element of the rational function field in
the δ's and the ground generators; in skew mode (one delay, t-dependent
coefficients) it is a reduced pair of skew polynomials.
"""
from .errors import DivisionByZero, ModeError, ModeMismatch, UnsupportedMode
from .groundfield import FieldElem
from .mpoly import _PRIME, MPoly, det_mod, gcd as mgcd, lcm as mlcm, residue


def _key(e):
    return (sum(e), e)


def _same_ctx(a, b):
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ModeMismatch(f"{a.ctx!r} vs {b.ctx!r}")


class DeltaPoly:
    """Σ c_e·δ^e with ground-field coefficients c_e written on the left."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    # construction
    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {(0,) * ctx.s: ctx.ground.one})

    @classmethod
    def const(cls, ctx, c):
        return cls.monomial(ctx, (0,) * ctx.s, c)

    @classmethod
    def gen(cls, ctx, i, k=1):
        if not 0 <= i < ctx.s:
            raise IndexError(f"delay index {i} out of range")
        e = [0] * ctx.s
        e[i] = k
        return cls(ctx, {tuple(e): ctx.ground.one})

    @classmethod
    def monomial(cls, ctx, exps, c):
        c = _ground(ctx, c)
        return cls(ctx, {tuple(exps): c} if c else {})

    # queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        t = self.terms
        return len(t) == 1 and not any(next(iter(t))) and next(iter(t.values())).is_one()

    def is_const(self):
        t = self.terms
        return not t or (len(t) == 1 and not any(next(iter(t))))

    def const_coeff(self):
        return self.terms.get((0,) * self.ctx.s, self.ctx.ground.zero)

    def degree(self):
        """Total δ-degree; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def lead(self):
        return max(self.terms, key=_key)

    def lc(self):
        return self.terms[self.lead()]

    def items(self):
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_key, reverse=True)]

    def is_t_free(self):
        return all(c.is_t_free() for c in self.terms.values())

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, DeltaPoly):
            _same_ctx(self, other)
            return other
        return DeltaPoly.const(self.ctx, other)

    def __add__(self, other):
        b = self._coerce(other)
        out = dict(self.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return DeltaPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        skew = self.ctx.skew
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in b.terms.items():
                if skew and ea[0]:
                    cb = cb.shift(0, ea[0])
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                acc = out.get(e)
                out[e] = v if acc is None else acc + v
        return DeltaPoly(self.ctx, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self._coerce(other) * self

    def lscale(self, c):
        """c·self for a ground-field element c."""
        if not c:
            return DeltaPoly.zero(self.ctx)
        if c.is_one():
            return self
        return DeltaPoly(self.ctx, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k):
        r = DeltaPoly.one(self.ctx)
        for _ in range(k):
            r = r * self
        return r

    def monic(self):
        if not self.terms:
            return self
        return self.lscale(self.lc().inverse())

    def rmonic(self):
        """self·u with leading coefficient 1 (the normal form of a left divisor)."""
        if not self.terms:
            return self
        e = self.lead()
        c = self.terms[e]
        if c.is_one():
            return self
        u = c.inverse()
        if self.ctx.skew and e[0]:
            u = u.shift(0, -e[0])
        return self * DeltaPoly(self.ctx, {(0,) * self.ctx.s: u})

    def derive(self):
        """Coefficient-wise d/dt (commutes with every δ)."""
        out = {}
        for e, c in self.terms.items():
            d = c.derive()
            if d:
                out[e] = d
        return DeltaPoly(self.ctx, out)

    def divide(self, b, side="right"):
        return dp_divide(self, b, side)

    # comparison
    def __eq__(self, other):
        if isinstance(other, DeltaPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int):
            return self == DeltaPoly.const(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        from .render import render_delta

        return f"DeltaPoly({render_delta(self)})"


def _ground(ctx, c):
    if isinstance(c, FieldElem):
        if c.field != ctx.ground:
            raise ModeMismatch("coefficient from a different ground field")
        if ctx.s and not ctx.skew and not c.is_t_free():
            raise ModeError("t-dependent coefficient in a time-invariant delay ring")
        return c
    return ctx.ground.const(c)


# Euclidean division (one delay)
def _check_univariate(a, b):
    _same_ctx(a, b)
    if not b.terms:
        raise DivisionByZero("division by the zero δ-polynomial")
    if a.ctx.s > 1:
        raise UnsupportedMode("Euclidean division needs a single delay")


def dp_divide(a, b, side="right"):
    """side="right": a = q·b + r;  side="left": a = b·q + r;  deg r < deg b."""
    _check_univariate(a, b)
    ctx = a.ctx
    if ctx.s == 0:
        q = DeltaPoly.const(ctx, a.const_coeff() / b.const_coeff())
        return q, DeltaPoly.zero(ctx)
    m = b.degree()
    bm = b.terms[(m,)]
    q = {}
    r = a
    while r.terms and r.degree() >= m:
        n = r.degree()
        rn = r.terms[(n,)]
        if side == "right":
            c = rn / bm.shift(0, n - m)
            term = DeltaPoly(ctx, {(n - m,): c})
            r = r - term * b
        elif side == "left":
            c = (bm.inverse() * rn).shift(0, -m)
            term = DeltaPoly(ctx, {(n - m,): c})
            r = r - b * term
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        q[(n - m,)] = c
    return DeltaPoly(ctx, q), r


def dp_gcd_lclm(a, b):
    """(g, m, u, v): g common right divisor, m = u·a = v·b least common left multiple.

    In commutative mode these are the ordinary monic gcd and lcm, for any
    number of delays.
    """
    _same_ctx(a, b)
    if not a.terms or not b.terms:
        raise DivisionByZero("gcd/lcm of the zero δ-polynomial")
    ctx = a.ctx
    if not ctx.skew:
        return _comm_gcd_lclm(a, b)
    _check_univariate(a, b)
    one, zero = DeltaPoly.one(ctx), DeltaPoly.zero(ctx)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1.terms:
        q, r = dp_divide(r0, r1, "right")
        s, t = s0 - q * s1, t0 - q * t1
        if r.terms:
            # u·r keeps the left ideal; scale the cofactors along with it
            u = r.lc().inverse()
            r, s, t = r.lscale(u), s.lscale(u), t.lscale(u)
        r0, r1 = r1, r
        s0, s1 = s1, s
        t0, t1 = t1, t
    # s1·a + t1·b = 0 and r0 is the gcrd
    m = s1 * a
    c = m.lc().inverse()
    return r0.monic(), m.lscale(c), s1.lscale(c), (-t1).lscale(c)


_SKEW_POINTS = ((100003, 7919, 613), (7213, -40009, 97), (-31337, 1009, 2003))


def _skew_coprime(a, b):
    """True only if gcld(a, b) = 1, certified by a modular Sylvester determinant.

    Writing u = Σ δ^i·u_i and v = Σ δ^j·v_j with coefficients on the right
    makes a·u + b·v linear over K; the square system has a nonzero
    determinant exactly when a and b have no common left factor.  The entry
    for a_k·δ^k·δ^i is σ^-(k+i)(a_k), i.e. a_k at t + (k+i)·τ.  A nonzero
    image of the determinant proves coprimality; anything else is
    inconclusive.
    """
    ctx = a.ctx
    G = ctx.ground
    na, nb = a.degree(), b.degree()
    n = na + nb
    ti, ui = G.t_index, G.tau_indices[0]
    for base in _SKEW_POINTS:
        point = [base[k % len(base)] + 17 * k for k in range(G.nvars)]
        rows = [[0] * n for _ in range(n)]
        ok = True
        for poly, width, off in ((a, nb, 0), (b, na, nb)):
            for (k,), c in poly.terms.items():
                for i in range(width):
                    pt = list(point)
                    pt[ti] = point[ti] + (k + i) * point[ui]
                    num, den = residue(c.num, pt), residue(c.den, pt)
                    if num is None or not den:
                        ok = False
                        break
                    rows[k + i][off + i] = num * pow(den, -1, _PRIME)
                if not ok:
                    break
            if not ok:
                break
        if ok and det_mod(rows):
            return True
    return False


def gcld(a, b):
    """Greatest common left divisor (a = g·a', b = g·b'), right-scaled monic."""
    _same_ctx(a, b)
    if not a.ctx.skew:
        if not a.terms:
            return b.monic()
        if not b.terms:
            return a.monic()
        return _comm_gcd_lclm(a, b)[0]
    if a.terms and b.terms and a.degree() and b.degree() and _skew_coprime(a, b):
        return DeltaPoly.one(a.ctx)
    while b.terms:
        _, r = dp_divide(a, b, "left")
        # r·u spans the same right ideal; normalizing keeps coefficients small
        a, b = b, r.rmonic()
    return a.rmonic()


def lclm_many(polys, ctx=None):
    """Monic least common left multiple of nonzero δ-polynomials (1 if empty)."""
    polys = list(polys)
    if not polys:
        return DeltaPoly.one(ctx)
    ctx = polys[0].ctx
    if not ctx.skew:
        E = ctx.ext
        acc = None
        for p in polys:
            n = _to_ext(p).num
            acc = n if acc is None else mlcm(acc, n)
        return _from_ext(ctx, E.poly(acc)).monic()
    m = polys[0].monic()
    for p in polys[1:]:
        if m.is_one():
            m = p.monic()
        elif not p.is_one():
            m = dp_gcd_lclm(m, p)[1]
    return m


# commutative helpers: K[δ] embedded in Q(δ, ground)
def _to_ext(p):
    """DeltaPoly -> element of the extended field (exact, reduced)."""
    ctx = p.ctx
    E, s = ctx.ext, ctx.s
    n = E.nvars
    if not p.terms:
        return E.zero
    den = None
    for c in p.terms.values():
        if not c.den.is_one():
            den = c.den if den is None else mlcm(den, c.den)
    num = MPoly.zero(n)
    pad = (0,) * (n - s)
    for e, c in p.terms.items():
        k = c.num if den is None else c.num * den.divexact(c.den)
        mono = MPoly.from_exponents(n, [(e + pad, 1)])
        num = num + k.embed(n, s) * mono
    if den is None:
        return FieldElem(E, num, MPoly.one(n))
    return FieldElem(E, num, den.embed(n, s))


def _from_ext(ctx, x):
    """Inverse of _to_ext for elements whose denominator is δ-free."""
    s = ctx.s
    G = ctx.ground
    if x.den.varset() & set(range(s)):
        raise ArithmeticError("not a δ-polynomial")
    den = x.den.restrict(G.nvars, s)
    terms = {}
    for e, part in x.num.split_leading(s).items():
        terms[e] = G.frac(part, den)
    return DeltaPoly(ctx, terms)


def _comm_gcd_lclm(a, b):
    ctx = a.ctx
    E = ctx.ext
    A, B = _to_ext(a), _to_ext(b)
    g = _from_ext(ctx, E.poly(mgcd(A.num, B.num))).monic()
    m = _from_ext(ctx, E.poly(mlcm(A.num, B.num))).monic()
    M = _to_ext(m)
    u = _from_ext(ctx, M / A)
    v = _from_ext(ctx, M / B)
    return g, m, u, v


# fractions
class DeltaFraction:
    """An element den^-1·num of K(δ); see ``frac`` and ``fraction``."""

    __slots__ = ()

    def __bool__(self):
        return not self.is_zero()

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __radd__(self, other):
        return self._coerce(other) + self

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = frac(self.ctx, 1)
        for _ in range(k):
            r = r * self
        return r

    def _coerce(self, other):
        return frac(self.ctx, other)

    def is_poly(self):
        return self.den.is_one()

    def delta_degree(self):
        """δ-degree of the numerator once the denominator is cleared."""
        return self.num.degree()

    def ground_value(self):
        """The ground-field element if this fraction is δ-free, else None."""
        if self.den.is_one() and self.num.is_const():
            return self.num.const_coeff()
        return None

    def __repr__(self):
        from .render import render_fraction

        return f"DeltaFraction({render_fraction(self)})"


class CommFraction(DeltaFraction):
    """Commutative fraction: an element of Q(δ, t, τ, params)."""

    __slots__ = ("ctx", "value", "_parts")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value
        self._parts = None

    def _split(self):
        if self._parts is None:
            ctx, v = self.ctx, self.value
            G, s = ctx.ground, ctx.s
            num = DeltaPoly(ctx, {e: G.poly(p) for e, p in v.num.split_leading(s).items()})
            den = DeltaPoly(ctx, {e: G.poly(p) for e, p in v.den.split_leading(s).items()})
            c = den.lc().inverse()
            self._parts = (den.lscale(c), num.lscale(c))
        return self._parts

    @property
    def den(self):
        return self._split()[0]

    @property
    def num(self):
        return self._split()[1]

    def is_zero(self):
        return not self.value.num.terms

    def is_one(self):
        return self.value.is_one()

    def is_t_free(self):
        return self.value.is_t_free()

    def _coerce(self, other):
        if isinstance(other, CommFraction):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ModeMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        return frac(self.ctx, other)

    def __add__(self, other):
        return CommFraction(self.ctx, self.value + self._coerce(other).value)

    def __neg__(self):
        return CommFraction(self.ctx, -self.value)

    def __mul__(self, other):
        return CommFraction(self.ctx, self.value * self._coerce(other).value)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in K(δ)")
        return CommFraction(self.ctx, self.value.inverse())

    def derive(self):
        return CommFraction(self.ctx, self.value.derive())

    def __eq__(self, other):
        if isinstance(other, CommFraction):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)


class SkewFraction(DeltaFraction):
    """den^-1·num over the skew ring, reduced by the gcld, den monic."""

    __slots__ = ("ctx", "den", "num", "_hash", "_deriv")

    def __init__(self, ctx, den, num):
        self.ctx = ctx
        self.den = den
        self.num = num
        self._hash = None
        self._deriv = None

    def is_zero(self):
        return not self.num.terms

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_t_free(self):
        return self.den.is_t_free() and self.num.is_t_free()

    def _coerce(self, other):
        if isinstance(other, SkewFraction):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ModeMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        return frac(self.ctx, other)

    def __add__(self, other):
        y = self._coerce(other)
        if not y.num.terms:
            return self
        if not self.num.terms:
            return y
        if self.den == y.den:
            return _skew_reduced(self.ctx, self.den, self.num + y.num)
        _, m, u, v = dp_gcd_lclm(self.den, y.den)
        return _skew_reduced(self.ctx, m, u * self.num + v * y.num)

    def __neg__(self):
        return SkewFraction(self.ctx, self.den, -self.num)

    def __mul__(self, other):
        y = self._coerce(other)
        ctx = self.ctx
        if not self.num.terms or not y.num.terms:
            return frac(ctx, 0)
        a, b, c, d = self.den, self.num, y.den, y.num
        if c.is_one():
            return _skew_reduced(ctx, a, b * d)
        # b·c^-1 = v^-1·w where w·c = v·b (lclm of b and c)
        _, _, v, w = dp_gcd_lclm(b, c)
        return _skew_reduced(ctx, v * a, w * d)

    def inverse(self):
        if not self.num.terms:
            raise DivisionByZero("inverse of zero in K(δ)")
        return _skew_reduced(self.ctx, self.num, self.den)

    def derive(self):
        # den·x = num gives ∂den·x + den·∂x = ∂num
        if self._deriv is None:
            ctx = self.ctx
            dn, dd = self.num.derive(), self.den.derive()
            if not dd.terms:
                r = _skew_reduced(ctx, self.den, dn)
            else:
                inner = frac(ctx, dn) - frac(ctx, dd) * self
                r = _skew_reduced(ctx, self.den, DeltaPoly.one(ctx)) * inner
            self._deriv = r
        return self._deriv

    def __eq__(self, other):
        if isinstance(other, SkewFraction):
            return self.den == other.den and self.num == other.num
        if isinstance(other, int):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, self.num))
        return self._hash


def _skew_reduced(ctx, den, num):
    if not den.terms:
        raise DivisionByZero("zero denominator in K(δ)")
    if not num.terms:
        return SkewFraction(ctx, DeltaPoly.one(ctx), num)
    if den.degree() > 0 and num.degree() > 0:
        g = gcld(den, num)
        if g.degree() > 0:
            den, r1 = dp_divide(den, g, "left")
            num, r2 = dp_divide(num, g, "left")
            if r1 or r2:
                raise ArithmeticError("gcld does not divide")
    c = den.lc()
    if not c.is_one():
        c = c.inverse()
        den, num = den.lscale(c), num.lscale(c)
    return SkewFraction(ctx, den, num)


def frac(ctx, x):
    """Embed an int, rational, ground-field element, or DeltaPoly in K(δ)."""
    if isinstance(x, DeltaFraction):
        if x.ctx is not ctx and x.ctx != ctx:
            raise ModeMismatch(f"{ctx!r} vs {x.ctx!r}")
        return x
    if isinstance(x, DeltaPoly):
        _same_ctx(x, DeltaPoly.zero(ctx))
        p = x
    else:
        p = DeltaPoly.const(ctx, x)
    if ctx.skew:
        return SkewFraction(ctx, DeltaPoly.one(ctx), p)
    if ctx.s and not p.is_t_free():
        raise ModeError("t-dependent coefficient in a time-invariant delay ring")
    return CommFraction(ctx, _to_ext(p))


def fraction(den, num):
    """den^-1·num for two DeltaPoly."""
    _same_ctx(den, num)
    ctx = den.ctx
    if ctx.skew:
        return _skew_reduced(ctx, den, num)
    if not den.terms:
        raise DivisionByZero("zero denominator in K(δ)")
    return frac(ctx, num) / frac(ctx, den)
