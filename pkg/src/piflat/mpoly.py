"""Sparse multivariate polynomials over Q with packed monomials.

A monomial x_0^e_0 ... x_{n-1}^e_{n-1} is packed into one int made of
16-bit fields: the total degree in the top field, then e_0, e_1, ... down
to e_{n-1} in the lowest field.  Integer comparison of packed monomials is
then graded-lex order with x_0 > x_1 > ..., multiplication of monomials is
integer addition, and the top bit of each field is kept clear as a guard so
that divisibility is a single subtraction.
"""
from functools import lru_cache, reduce
from math import comb, gcd as igcd, isqrt

from . import kernels as K
from ._rational import QQ, ONE, to_qq

FIELD = 16
EXP_MASK = (1 << (FIELD - 1)) - 1


class Layout:
    __slots__ = ("n", "shifts", "degshift", "guard", "units")

    def __init__(self, n):
        self.n = n
        self.shifts = tuple((n - 1 - i) * FIELD for i in range(n))
        self.degshift = n * FIELD
        self.guard = sum(1 << (s + FIELD - 1) for s in self.shifts + (self.degshift,))
        self.units = tuple((1 << s) | (1 << self.degshift) for s in self.shifts)

    def pack(self, exps):
        m = sum(exps) << self.degshift
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > EXP_MASK:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << s
        return m

    def unpack(self, m):
        return tuple((m >> s) & EXP_MASK for s in self.shifts)

    def exp(self, m, i):
        return (m >> self.shifts[i]) & EXP_MASK


@lru_cache(maxsize=None)
def layout(n):
    return Layout(n)


class MPoly:
    """Immutable polynomial in ``n`` variables with rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms):
        self.n = n
        self.terms = terms
        self._hash = None

    # construction
    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def const(cls, n, c):
        c = to_qq(c)
        return cls(n, {0: c} if c else {})

    @classmethod
    def one(cls, n):
        return cls(n, {0: ONE})

    @classmethod
    def gen(cls, n, i):
        return cls(n, {layout(n).units[i]: ONE})

    @classmethod
    def from_exponents(cls, n, items):
        lay = layout(n)
        terms = {}
        for exps, c in items:
            c = to_qq(c)
            if c:
                m = lay.pack(exps)
                v = terms.get(m, 0) + c
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return cls(n, terms)

    # predicates and queries
    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        t = self.terms
        return not t or (len(t) == 1 and 0 in t)

    def const_value(self):
        return self.terms.get(0, QQ(0))

    def is_one(self):
        t = self.terms
        return len(t) == 1 and t.get(0) == 1

    def lm(self):
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(self.terms) >> layout(self.n).degshift

    def degree_in(self, i):
        if not self.terms:
            return -1
        s = layout(self.n).shifts[i]
        return max((m >> s) & EXP_MASK for m in self.terms)

    def varset(self):
        acc = 0
        for m in self.terms:
            acc |= m
        lay = layout(self.n)
        return frozenset(i for i, s in enumerate(lay.shifts) if (acc >> s) & EXP_MASK)

    def coeffs_in(self, i):
        """Map j -> coefficient of x_i^j, as polynomials free of x_i."""
        lay = layout(self.n)
        s, unit = lay.shifts[i], lay.units[i]
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & EXP_MASK
            out.setdefault(e, {})[m - e * unit] = c
        return {e: MPoly(self.n, t) for e, t in out.items()}

    def items(self):
        """(exponent tuple, coefficient) pairs in descending graded-lex order."""
        lay = layout(self.n)
        return [(lay.unpack(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError("polynomials over different variable sets")
            return other
        return MPoly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        return MPoly(self.n, K.add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        return MPoly(self.n, K.sub(self.terms, other.terms))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MPoly(self.n, K.neg(self.terms))

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("polynomials over different variable sets")
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly(self.n, {})
        if len(b) == 1 and 0 in b:
            return MPoly(self.n, K.scale(a, b[0]))
        if len(a) == 1 and 0 in a:
            return MPoly(self.n, K.scale(b, a[0]))
        return MPoly(self.n, K.mul(a, b))

    __rmul__ = __mul__

    def scale(self, c):
        c = to_qq(c)
        if c == 1:
            return self
        return MPoly(self.n, K.scale(self.terms, c))

    def mul_mono(self, mono, c=ONE):
        return MPoly(self.n, K.mul_term(self.terms, mono, c))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divexact(self, other):
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return self
        b = other.terms
        if len(b) == 1 and 0 in b:
            return MPoly(self.n, K.scale(self.terms, 1 / b[0]))
        q = K.divexact(self.terms, b, layout(self.n).guard)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return MPoly(self.n, q)

    def divides(self, other):
        """True if self divides other."""
        if not self.terms:
            return not other.terms
        if not other.terms:
            return True
        return K.divexact(other.terms, self.terms, layout(self.n).guard) is not None

    def monic(self):
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return MPoly(self.n, K.scale(self.terms, 1 / lc))

    def primitive(self):
        """Scale to coprime integer coefficients with positive leading one."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            d = int(c.denominator)
            den = den * d // igcd(den, d)
        g = 0
        for c in self.terms.values():
            g = igcd(g, int(c.numerator * den // c.denominator))
        f = QQ(den, g)
        if self.lc() < 0:
            f = -f
        return self.scale(f)

    # calculus and substitution
    def derive(self, i):
        lay = layout(self.n)
        s, unit = lay.shifts[i], lay.units[i]
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & EXP_MASK
            if e:
                out[m - unit] = c * e
        return MPoly(self.n, out)

    def shift(self, i, j, k):
        """Substitute x_i -> x_i + k*x_j (k an integer or rational)."""
        if not k or not self.terms:
            return self
        lay = layout(self.n)
        s = lay.shifts[i]
        step = (1 << lay.shifts[j]) - (1 << s)
        k = to_qq(k)
        if not any((m >> s) & EXP_MASK for m in self.terms):
            return self
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & EXP_MASK
            kp = ONE
            for r in range(e + 1):
                mono = m + r * step
                v = out.get(mono, 0) + c * comb(e, r) * kp
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
                kp = kp * k
        return MPoly(self.n, out)

    def embed(self, n, offset):
        """The same polynomial in ``n`` variables, variable i moved to offset+i."""
        src, dst = layout(self.n), layout(n)
        out = {}
        for m, c in self.terms.items():
            exps = (0,) * offset + src.unpack(m) + (0,) * (n - offset - self.n)
            out[dst.pack(exps)] = c
        return MPoly(n, out)

    def restrict(self, n, offset):
        """Inverse of embed; the dropped variables must not occur."""
        src, dst = layout(self.n), layout(n)
        out = {}
        for m, c in self.terms.items():
            exps = src.unpack(m)
            if any(exps[:offset]) or any(exps[offset + n:]):
                raise ValueError("polynomial uses variables outside the target ring")
            out[dst.pack(exps[offset:offset + n])] = c
        return MPoly(n, out)

    def split_leading(self, s):
        """Group by the exponents of the first ``s`` variables.

        Returns a dict exponent-tuple -> polynomial in the remaining n - s
        variables.
        """
        src, dst = layout(self.n), layout(self.n - s)
        out = {}
        for m, c in self.terms.items():
            exps = src.unpack(m)
            out.setdefault(exps[:s], {})[dst.pack(exps[s:])] = c
        return {k: MPoly(self.n - s, t) for k, t in out.items()}

    # comparison
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, int):
            return self == MPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({self.n}, {dict(self.items())})"


# gcd over Q[x_0..x_{n-1}], computed on primitive integer representatives
def gcd(f, g):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    if f.is_const() or g.is_const():
        return MPoly.one(f.n)
    if f == g:
        return f.monic()
    if _coprime(f, g):
        return MPoly.one(f.n)
    return _gcd(f.primitive(), g.primitive()).monic()


# Exact coprimality filter.  For every shared variable x, evaluate the other
# variables at small integers and reduce modulo a large prime p, keeping the
# leading coefficients in x nonzero mod p.  If each such image pair is
# coprime, gcd(f, g) has degree 0 in every variable: a common factor of
# positive degree in x would survive the specialization with its degree.
# A nontrivial image gcd proves nothing, so the caller falls back to a
# real gcd computation.
_POINTS = (3, -2, 5, 7, -4, 11, 13, -6, 17, 19, -9, 23)
_PRIME = (1 << 61) - 1


def _image(f, v, point):
    """Univariate image of f in x_v mod _PRIME as {degree: residue}, or None."""
    lay = layout(f.n)
    out = {}
    p = _PRIME
    for m, c in f.terms.items():
        e = lay.unpack(m)
        den = int(c.denominator) % p
        if not den:
            return None
        val = int(c.numerator) * pow(den, -1, p)
        for i, ei in enumerate(e):
            if ei and i != v:
                val = val * pow(point[i], ei, p)
        out[e[v]] = (out.get(e[v], 0) + val) % p
    return {k: c for k, c in out.items() if c}


def residue(f, point):
    """f(point) mod _PRIME for an integer point, or None if a coefficient
    denominator vanishes there."""
    lay = layout(f.n)
    p = _PRIME
    acc = 0
    for m, c in f.terms.items():
        den = int(c.denominator) % p
        if not den:
            return None
        val = int(c.numerator) * pow(den, -1, p)
        for x, e in zip(point, lay.unpack(m)):
            if e:
                val = val * pow(x, e, p)
        acc += val
    return acc % p


def det_mod(rows):
    """Determinant of a square integer matrix modulo _PRIME."""
    p = _PRIME
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def _urem(a, b):
    """Remainder of dense univariate residue dicts modulo _PRIME."""
    p = _PRIME
    a = dict(a)
    db = max(b)
    inv = pow(b[db], -1, p)
    while a:
        da = max(a)
        if da < db:
            break
        c = a.pop(da) * inv % p
        for k, x in b.items():
            if k != db:
                kk = k + da - db
                w = (a.get(kk, 0) - c * x) % p
                if w:
                    a[kk] = w
                else:
                    a.pop(kk, None)
    return a


def _coprime(f, g):
    common = f.varset() & g.varset()
    if not common:
        return True
    npts = len(_POINTS)
    for k, v in enumerate(sorted(common)):
        df, dg = f.degree_in(v), g.degree_in(v)
        for attempt in range(3):
            point = tuple(_POINTS[(i + k + 5 * attempt) % npts] for i in range(f.n))
            fi, gi = _image(f, v, point), _image(g, v, point)
            if fi and gi and max(fi) == df and max(gi) == dg:
                break
        else:
            return False
        a, b = fi, gi
        while b:
            a, b = b, _urem(a, b)
        if max(a) > 0:
            return False
    return True


def lcm(f, g):
    if not f.terms or not g.terms:
        return MPoly.zero(f.n)
    return (f * g.divexact(gcd(f, g))).monic()


def _content(f, i):
    h = None
    for c in sorted(f.coeffs_in(i).values(), key=lambda p: len(p.terms)):
        if c.is_const():
            return MPoly.one(f.n)
        h = c.primitive() if h is None else _gcd(h, c.primitive())
        if h.is_const():
            return MPoly.one(f.n)
    return h


def _prem(f, g, i):
    """Sparse pseudo-remainder of f by g as polynomials in x_i."""
    lay = layout(f.n)
    unit = lay.units[i]
    gc = g.coeffs_in(i)
    dg = max(gc)
    lcg = gc[dg]
    r = f
    while r.terms:
        dr = r.degree_in(i)
        if dr < dg:
            break
        lcr = r.coeffs_in(i)[dr]
        r = r * lcg - (g * lcr).mul_mono((dr - dg) * unit)
    return r


def _gcd_prs(f, g):
    n = f.n
    one = MPoly.one(n)
    while True:
        vf, vg = f.varset(), g.varset()
        if not vf or not vg:
            return one
        if vf == vg:
            break
        for i in sorted(vf - vg):
            f = _content(f, i)
            if f.is_const():
                return one
        for i in sorted(vg - vf):
            g = _content(g, i)
            if g.is_const():
                return one
    x = min(sorted(vf), key=lambda i: max(f.degree_in(i), g.degree_in(i)))
    cf, cg = _content(f, x), _content(g, x)
    c = _gcd(cf, cg) if not (cf.is_const() or cg.is_const()) else one
    f = f.divexact(cf).primitive() if not cf.is_const() else f
    g = g.divexact(cg).primitive() if not cg.is_const() else g
    if f.degree_in(x) < g.degree_in(x):
        f, g = g, f
    while True:
        r = _prem(f, g, x)
        if not r.terms:
            break
        if r.degree_in(x) == 0:
            g = one
            break
        rc = _content(r, x)
        r = (r.divexact(rc) if not rc.is_const() else r).primitive()
        f, g = g, r
    return (c * g).primitive()


def _gcd(f, g):
    """gcd of primitive integer polynomials: heuristic first, PRS as fallback."""
    h = _heugcd(f, g, sorted(f.varset() | g.varset()))
    if h is not None:
        return h
    return _gcd_prs(f, g)


# Heuristic gcd (evaluate one variable at a large integer, recurse, and
# rebuild the gcd from its xi-adic digits).  The candidate is accepted only
# if it divides both inputs, which together with the size of xi makes it
# the gcd; otherwise None is returned and the caller uses the PRS.
def _icontent(f):
    g = 0
    for c in f.terms.values():
        g = igcd(g, int(c))
        if g == 1:
            break
    return g


def _norm(f):
    return max(abs(int(c)) for c in f.terms.values())


def _evaluate(f, v, xi):
    lay = layout(f.n)
    s, unit = lay.shifts[v], lay.units[v]
    out = {}
    for m, c in f.terms.items():
        e = (m >> s) & EXP_MASK
        k = m - e * unit
        out[k] = out.get(k, 0) + c * xi ** e
    return MPoly(f.n, {k: c for k, c in out.items() if c})


def _interpolate(h, v, xi):
    unit = layout(h.n).units[v]
    half = xi // 2
    out = {}
    e = 0
    terms = {m: int(c) for m, c in h.terms.items()}
    while terms:
        nxt = {}
        for m, c in terms.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[m + e * unit] = QQ(r)
            q = (c - r) // xi
            if q:
                nxt[m] = q
        terms = nxt
        e += 1
    return MPoly(h.n, out)


def _heugcd(f, g, variables):
    """gcd of integer polynomials f, g (positive leading coefficient) or None."""
    if not variables:
        return MPoly.const(f.n, igcd(int(f.const_value()), int(g.const_value())))
    cf, cg = _icontent(f), _icontent(g)
    c = igcd(cf, cg)
    if cf != 1:
        f = f.scale(QQ(1, cf))
    if cg != 1:
        g = g.scale(QQ(1, cg))
    v, rest = variables[0], variables[1:]
    xi = 2 * min(_norm(f), _norm(g)) + 29
    for _ in range(6):
        ff, gg = _evaluate(f, v, xi), _evaluate(g, v, xi)
        if ff.terms and gg.terms:
            h = _heugcd(ff, gg, [w for w in rest if w in ff.varset() | gg.varset()])
            if h is None:
                return None
            G = _interpolate(h, v, xi)
            if G.terms:
                k = _icontent(G)
                if G.lc() < 0:
                    k = -k
                G = G.scale(QQ(1, k))
                if G.divides(f) and G.divides(g):
                    return G.scale(c)
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


def gcd_many(polys):
    return reduce(gcd, polys)
