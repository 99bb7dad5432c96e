"""The Ore ring K(δ)[D] with D·a = a·D + ∂a and D·δ = δ·D."""
from math import comb

from .delta import frac
from .errors import DivisionByZero, ModeMismatch


class OrePoly:
    """Σ a_k·D^k with K(δ) coefficients on the left; ``coeffs[k]`` is a_k."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (frac(ctx, 1),))

    @classmethod
    def D(cls, ctx, k=1):
        z = frac(ctx, 0)
        return cls(ctx, (z,) * k + (frac(ctx, 1),))

    @classmethod
    def scalar(cls, ctx, x):
        return cls(ctx, (frac(ctx, x),))

    # queries
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def degree(self):
        """D-degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def lc(self):
        return self.coeffs[-1] if self.coeffs else None

    def degree_lc(self):
        return self.degree(), self.lc()

    def is_scalar(self):
        return len(self.coeffs) <= 1

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return frac(self.ctx, 0)

    def is_delta_poly(self):
        """All coefficients have denominator 1 (an element of K[δ, D])."""
        return all(c.is_poly() for c in self.coeffs)

    def denominators(self):
        return [c.den for c in self.coeffs if not c.is_zero() and not c.den.is_one()]

    def delta_weight(self):
        """Largest δ-degree among the coefficient numerators (pivot tie-break)."""
        return max((c.delta_degree() for c in self.coeffs), default=-1)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, OrePoly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ModeMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        return OrePoly.scalar(self.ctx, other)

    def __add__(self, other):
        b = self._coerce(other)
        a, c = self.coeffs, b.coeffs
        if len(a) < len(c):
            a, c = c, a
        out = list(a)
        for k, x in enumerate(c):
            out[k] = out[k] + x
        return OrePoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if not self.coeffs or not b.coeffs:
            return OrePoly.zero(self.ctx)
        zero = frac(self.ctx, 0)
        out = [zero] * (len(self.coeffs) + len(b.coeffs) - 1)
        # derivs[k][j] = ∂^k b_j, built on demand
        derivs = [list(b.coeffs)]
        for i, ai in enumerate(self.coeffs):
            if ai.is_zero():
                continue
            # D^i·b_j = Σ_k C(i, k) ∂^k(b_j) D^(i-k)
            for k in range(i + 1):
                if k == len(derivs):
                    derivs.append([c.derive() for c in derivs[-1]])
                row = derivs[k]
                ck = comb(i, k)
                for j, bj in enumerate(row):
                    if bj.is_zero():
                        continue
                    term = ai * bj
                    if ck != 1:
                        term = term * ck
                    out[i - k + j] = out[i - k + j] + term
        return OrePoly(self.ctx, out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k):
        r = OrePoly.one(self.ctx)
        for _ in range(k):
            r = r * self
        return r

    def lscale(self, c):
        """c·self for a K(δ) element c."""
        return OrePoly(self.ctx, [c * x for x in self.coeffs])

    def shift_D(self, k):
        """self·D^k (exact: D commutes with itself)."""
        if not self.coeffs:
            return self
        return OrePoly(self.ctx, (frac(self.ctx, 0),) * k + self.coeffs)

    def divide(self, b, side="right"):
        return op_divide(self, b, side)

    def derive_coeffs(self):
        return OrePoly(self.ctx, [c.derive() for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == OrePoly.scalar(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        from .render import render_ore

        return f"OrePoly({render_ore(self)})"


def op_divide(a, b, side="right"):
    """side="right": a = q·b + r;  side="left": a = b·q + r;  deg r < deg b."""
    if not isinstance(b, OrePoly):
        b = OrePoly.scalar(a.ctx, b)
    if b.is_zero():
        raise DivisionByZero("division by the zero operator")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    ctx = a.ctx
    m = b.degree()
    bm_inv = b.lc().inverse()
    zero = frac(ctx, 0)
    q = [zero] * max(0, a.degree() - m + 1) if a.coeffs else []
    r = a
    while r.coeffs and r.degree() >= m:
        n = r.degree()
        # the D-layer has no twist, so leading coefficients simply divide
        c = r.lc() * bm_inv if side == "right" else bm_inv * r.lc()
        term = OrePoly(ctx, (zero,) * (n - m) + (c,))
        r = r - (term * b if side == "right" else b * term)
        if r.coeffs and r.degree() >= n:
            raise ArithmeticError("leading term did not cancel")
        q[n - m] = c
    return OrePoly(ctx, q), r

