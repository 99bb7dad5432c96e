"""The computable ground field Q(tau_1..tau_s, params)(t).

Elements are reduced fractions of ``MPoly`` over the field's generators.
The field also carries the delay shifts (t -> t - tau_i) and the time
derivation, which is all the operator layers above need from it.
"""
from .errors import DivisionByZero
from .mpoly import MPoly, gcd
from ._rational import to_qq


class RationalFunctionField:
    """Q(names) with a distinguished time variable and delay lengths.

    ``t_index`` is the position of ``t`` among ``names`` (None if the field
    has no time variable) and ``tau_indices[i]`` the position of the i-th
    delay length.
    """

    def __init__(self, names, t_index=None, tau_indices=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.names = names
        self.nvars = len(names)
        self.t_index = t_index
        self.tau_indices = tuple(tau_indices)
        self.zero = FieldElem(self, MPoly.zero(self.nvars), MPoly.one(self.nvars))
        self.one = FieldElem(self, MPoly.one(self.nvars), MPoly.one(self.nvars))

    def __repr__(self):
        return f"RationalFunctionField({', '.join(self.names)})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and self.names == other.names
            and self.t_index == other.t_index
            and self.tau_indices == other.tau_indices
        )

    def __hash__(self):
        return hash((self.names, self.t_index, self.tau_indices))

    def const(self, c):
        c = to_qq(c)
        if not c:
            return self.zero
        return FieldElem(self, MPoly.const(self.nvars, c), MPoly.one(self.nvars))

    def gen(self, name):
        i = self.names.index(name)
        return FieldElem(self, MPoly.gen(self.nvars, i), MPoly.one(self.nvars))

    def poly(self, p):
        return FieldElem(self, p, MPoly.one(self.nvars))

    def frac(self, num, den):
        """Reduced num/den of two MPoly."""
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.zero
        if den.is_const():
            return FieldElem(self, num.scale(1 / den.const_value()), MPoly.one(self.nvars))
        g = gcd(num, den)
        if not g.is_one():
            num = num.divexact(g)
            den = den.divexact(g)
        lc = den.lc()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return FieldElem(self, num, den)

    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        return self.const(x)


class FieldElem:
    """Reduced fraction num/den; den is monic (leading coefficient 1)."""

    __slots__ = ("field", "num", "den", "_hash", "_shifts", "_deriv")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        self._shifts = None
        self._deriv = None

    # predicates
    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    def is_const(self):
        return self.den.is_one() and self.num.is_const()

    def const_value(self):
        return self.num.const_value()

    def is_t_free(self):
        i = self.field.t_index
        if i is None:
            return True
        return self.num.degree_in(i) <= 0 and self.den.degree_in(i) <= 0

    def varset(self):
        return self.num.varset() | self.den.varset()

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            return other
        return self.field.const(other)

    def __add__(self, other):
        b = self._coerce(other)
        if not b.num.terms:
            return self
        if not self.num.terms:
            return b
        F = self.field
        d1, d2 = self.den, b.den
        if d1.is_one() and d2.is_one():
            return FieldElem(F, self.num + b.num, d1)
        if d2.is_one():
            # gcd(n1 + n2 d1, d1) = gcd(n1, d1) = 1
            return FieldElem(F, self.num + b.num * d1, d1)
        if d1.is_one():
            return FieldElem(F, self.num * d2 + b.num, d2)
        if d1 == d2:
            return F.frac(self.num + b.num, d1)
        return F.frac(self.num * d2 + b.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        F = self.field
        if not self.num.terms or not b.num.terms:
            return F.zero
        n1, d1, n2, d2 = self.num, self.den, b.num, b.den
        if d1.is_one() and d2.is_one():
            return FieldElem(F, n1 * n2, d1)
        if n2.is_const() and d2.is_one():
            return FieldElem(F, n1.scale(n2.const_value()), d1)
        if n1.is_const() and d1.is_one():
            return FieldElem(F, n2.scale(n1.const_value()), d2)
        g1 = gcd(n1, d2)
        g2 = gcd(n2, d1)
        if not g1.is_one():
            n1, d2 = n1.divexact(g1), d2.divexact(g1)
        if not g2.is_one():
            n2, d1 = n2.divexact(g2), d1.divexact(g2)
        num, den = n1 * n2, d1 * d2
        lc = den.lc()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return FieldElem(F, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise DivisionByZero("inverse of zero in the ground field")
        num, den = self.den, self.num
        lc = den.lc()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return FieldElem(self.field, num, den)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem(self.field, self.num ** k, self.den ** k)

    # shift and derivation
    def shift(self, i, k=1):
        """sigma_i^k: substitute t -> t - k*tau_i (k may be negative)."""
        F = self.field
        if not k or F.t_index is None or self.is_t_free():
            return self
        key = (i, k)
        if self._shifts is None:
            self._shifts = {}
        r = self._shifts.get(key)
        if r is None:
            t, tau = F.t_index, F.tau_indices[i]
            num = self.num.shift(t, tau, -k)
            den = self.den.shift(t, tau, -k)
            # an automorphism keeps num/den coprime
            lc = den.lc()
            if lc != 1:
                num, den = num.scale(1 / lc), den.scale(1 / lc)
            r = FieldElem(F, num, den)
            self._shifts[key] = r
        return r

    def derive(self):
        """Exact d/dt."""
        if self._deriv is None:
            F = self.field
            t = F.t_index
            if t is None or self.is_t_free():
                self._deriv = F.zero
            elif self.den.is_one():
                self._deriv = FieldElem(F, self.num.derive(t), self.den)
            else:
                n, d = self.num, self.den
                self._deriv = F.frac(n.derive(t) * d - n * d.derive(t), d * d)
        return self._deriv

    # comparison
    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        from .render import render_field

        return f"FieldElem({render_field(self)})"
