"""Matrices over K(δ)[D], elementary actions and the Smith-Jacobson form."""
from dataclasses import dataclass, field
from typing import Optional

from .delta import frac
from .errors import DimensionMismatch, IndexOutOfRange, ZeroScale
from .ore import OrePoly, op_divide


class OreMatrix:
    """Dense p×q matrix of OrePoly (p or q may be 0 for degenerate blocks)."""

    __slots__ = ("ctx", "rows", "cols", "entries", "_hash")

    def __init__(self, ctx, entries, rows=None, cols=None):
        entries = tuple(tuple(r) for r in entries)
        self.ctx = ctx
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionMismatch("ragged matrix")
        self.entries = entries
        self._hash = None

    @classmethod
    def zeros(cls, ctx, p, q):
        z = OrePoly.zero(ctx)
        return cls(ctx, [[z] * q for _ in range(p)], p, q)

    @classmethod
    def identity(cls, ctx, n):
        z, o = OrePoly.zero(ctx), OrePoly.one(ctx)
        return cls(ctx, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_rows(cls, ctx, rows):
        rows = [[e if isinstance(e, OrePoly) else OrePoly.scalar(ctx, e) for e in r] for r in rows]
        return cls(ctx, rows)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return OreMatrix(
            self.ctx, [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def is_zero(self):
        return all(e.is_zero() for r in self.entries for e in r)

    def is_identity(self):
        return self.rows == self.cols and all(
            (e.is_one() if i == j else e.is_zero())
            for i, r in enumerate(self.entries)
            for j, e in enumerate(r)
        )

    def is_delta_poly(self):
        return all(e.is_delta_poly() for r in self.entries for e in r)

    def max_degree(self):
        return max((e.degree() for r in self.entries for e in r if e), default=-1)

    def __mul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return OreMatrix(
            self.ctx,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return OreMatrix(self.ctx, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def lscale(self, c):
        """c·self for a K(δ) element c."""
        c = frac(self.ctx, c)
        return OreMatrix(
            self.ctx, [[a.lscale(c) for a in r] for r in self.entries], self.rows, self.cols
        )

    def __eq__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.entries))
        return self._hash

    def __repr__(self):
        from .render import render_matrix

        return f"OreMatrix({self.rows}x{self.cols}, {render_matrix(self)})"


def mat_mul(A, B):
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    z = OrePoly.zero(A.ctx)
    out = []
    for r in A.entries:
        row = []
        for j in range(B.cols):
            acc = z
            for k, a in enumerate(r):
                if a:
                    b = B.entries[k][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return OreMatrix(A.ctx, out, A.rows, B.cols)


def hstack(*ms):
    ctx, p = ms[0].ctx, ms[0].rows
    return OreMatrix(ctx, [sum((m.entries[i] for m in ms), ()) for i in range(p)], p,
                     sum(m.cols for m in ms))


def vstack(*ms):
    ctx, q = ms[0].ctx, ms[0].cols
    return OreMatrix(ctx, sum((m.entries for m in ms), ()), sum(m.rows for m in ms), q)


# elementary actions
@dataclass(frozen=True)
class ElementaryAction:
    """One generator of the unimodular group.

    kind "permute": swap lines (or columns) i and j.
    kind "scale":   line i := u·line i   (right: column i := column i·u).
    kind "addmul":  left  T_ij(p)·M, i.e. line i += p·line j;
                    right M·T_ij(p), i.e. column j += column i·p.
    """

    kind: str
    side: str
    i: int
    j: Optional[int] = None
    p: object = None

    def __post_init__(self):
        if self.kind not in ("permute", "scale", "addmul"):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.side not in ("left", "right"):
            raise ValueError(f"unknown side {self.side!r}")
        if self.kind == "scale" and (self.p is None or self.p.is_zero()):
            raise ZeroScale("scaling by zero is not unimodular")
        if self.kind != "scale" and self.i == self.j:
            raise IndexOutOfRange("permute/addmul need two distinct indices")

    def inverse(self):
        if self.kind == "permute":
            return self
        if self.kind == "scale":
            return ElementaryAction("scale", self.side, self.i, None, self.p.inverse())
        return ElementaryAction("addmul", self.side, self.i, self.j, -self.p)

    def flipped(self):
        """The same elementary matrix acting from the other side."""
        return ElementaryAction(self.kind, "right" if self.side == "left" else "left",
                                self.i, self.j, self.p)


def _apply(W, a, ctx):
    """Apply an action in place to a list-of-lists matrix."""
    n = len(W) if a.side == "left" else (len(W[0]) if W else 0)
    for k in (a.i, a.j):
        if k is not None and not 0 <= k < n:
            raise IndexOutOfRange(f"index {k} out of range for dimension {n}")
    i, j = a.i, a.j
    if a.side == "left":
        if a.kind == "permute":
            W[i], W[j] = W[j], W[i]
        elif a.kind == "scale":
            W[i] = [x.lscale(a.p) for x in W[i]]
        else:
            W[i] = [x + a.p * y if y else x for x, y in zip(W[i], W[j])]
    else:
        if a.kind == "permute":
            for r in W:
                r[i], r[j] = r[j], r[i]
        elif a.kind == "scale":
            u = OrePoly(ctx, (a.p,))
            for r in W:
                r[i] = r[i] * u
        else:
            for r in W:
                if r[i]:
                    r[j] = r[j] + r[i] * a.p


def apply_action(M, a):
    W = [list(r) for r in M.entries]
    _apply(W, a, M.ctx)
    return OreMatrix(M.ctx, W, M.rows, M.cols)


@dataclass
class Unimodular:
    """Product of elementary actions with its explicit matrix and inverse."""

    actions: list
    matrix: OreMatrix
    inverse: OreMatrix

    @property
    def size(self):
        return self.matrix.rows

    def check(self):
        n = self.size
        return (mat_mul(self.matrix, self.inverse).is_identity()
                and mat_mul(self.inverse, self.matrix).is_identity()) if n else True


class _Tracker:
    def __init__(self, ctx, n):
        I = OreMatrix.identity(ctx, n)
        self.ctx = ctx
        self.mat = [list(r) for r in I.entries]
        self.inv = [list(r) for r in I.entries]
        self.actions = []

    def push(self, a):
        _apply(self.mat, a, self.ctx)
        _apply(self.inv, a.inverse().flipped(), self.ctx)
        self.actions.append(a)

    def freeze(self):
        n = len(self.mat)
        return Unimodular(
            list(self.actions),
            OreMatrix(self.ctx, self.mat, n, n),
            OreMatrix(self.ctx, self.inv, n, n),
        )


@dataclass
class SmithForm:
    """U·M·V = (Δ | 0) if wide, (Δ ; 0) if tall; ``diag`` has min(p, q) entries."""

    U: Unimodular
    V: Unimodular
    diag: list
    shape: str
    form: OreMatrix
    rank: int

    def block_form(self):
        return self.form


@dataclass
class TorsionWitness:
    """A non-unit invariant factor (or missing rank) of a Smith form."""

    source: str
    diagonal_entry: Optional[OrePoly] = None
    index: Optional[int] = None
    rank_defect: int = 0
    expected_rank: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def degree(self):
        return self.diagonal_entry.degree() if self.diagonal_entry is not None else None

    def describe(self):
        from .render import render_ore

        if self.diagonal_entry is not None:
            return (f"diagonal entry {self.index + 1} = {render_ore(self.diagonal_entry)} "
                    f"has D-degree {self.degree}")
        return f"rank defect {self.rank_defect} (rank {self.expected_rank - self.rank_defect} "\
               f"< {self.expected_rank})"


def _key(e, i, j):
    return (e.degree(), e.delta_weight(), i, j)


def smith_jacobson(M):
    """Smith-Jacobson decomposition with tracked unimodular factors.

    Pivot: lowest D-degree, then lowest δ-degree of the coefficient
    numerators, then row, then column.  Wide matrices clean the pivot row
    first, tall ones the pivot column.  The diagonal is then fixed up so
    that each entry right-divides the next, and entries are made monic
    (degree 0 entries become exactly 1).
    """
    ctx = M.ctx
    p, q = M.rows, M.cols
    W = [list(r) for r in M.entries]
    U, V = _Tracker(ctx, p), _Tracker(ctx, q)
    r = min(p, q)
    wide = p <= q

    def act(a):
        _apply(W, a, ctx)
        (U if a.side == "left" else V).push(a)

    def reduce_row(k):
        piv = W[k][k]
        for j in range(k + 1, q):
            if W[k][j]:
                qt, _ = op_divide(W[k][j], piv, "left")
                if qt:
                    act(ElementaryAction("addmul", "right", k, j, -qt))
        rest = [(j, W[k][j]) for j in range(k + 1, q) if W[k][j]]
        if rest:
            j = min(rest, key=lambda t: _key(t[1], k, t[0]))[0]
            act(ElementaryAction("permute", "right", k, j))
            return True
        return False

    def reduce_col(k):
        piv = W[k][k]
        for i in range(k + 1, p):
            if W[i][k]:
                qt, _ = op_divide(W[i][k], piv, "right")
                if qt:
                    act(ElementaryAction("addmul", "left", i, k, -qt))
        rest = [(i, W[i][k]) for i in range(k + 1, p) if W[i][k]]
        if rest:
            i = min(rest, key=lambda t: _key(t[1], t[0], k))[0]
            act(ElementaryAction("permute", "left", k, i))
            return True
        return False

    def diagonalize(start):
        for k in range(start, r):
            cands = [
                (_key(W[i][j], i, j), i, j)
                for i in range(k, p) for j in range(k, q) if W[i][j]
            ]
            if not cands:
                return
            _, i, j = min(cands, key=lambda c: c[0])
            if i != k:
                act(ElementaryAction("permute", "left", k, i))
            if j != k:
                act(ElementaryAction("permute", "right", k, j))
            # each extra round strictly lowers the pivot's D-degree
            bound = W[k][k].degree() + 1
            rounds = 0
            phases = (reduce_row, reduce_col) if wide else (reduce_col, reduce_row)
            while any(ph(k) for ph in phases):
                rounds += 1
                assert rounds <= bound, "pivot degree failed to decrease"

    diagonalize(0)
    rank = sum(1 for k in range(r) if W[k][k])

    # divisibility chain d_i right-divides d_(i+1)
    fixed = True
    while fixed:
        fixed = False
        for i in range(rank - 1):
            _, rem = op_divide(W[i + 1][i + 1], W[i][i], "right")
            if rem:
                act(ElementaryAction("addmul", "right", i + 1, i, OrePoly.one(ctx)))
                diagonalize(i)
                fixed = True
                break

    for k in range(rank):
        lc = W[k][k].lc()
        if not lc.is_one():
            act(ElementaryAction("scale", "left", k, None, lc.inverse()))

    form = OreMatrix(ctx, W, p, q)
    diag = [W[k][k] for k in range(r)]
    return SmithForm(U.freeze(), V.freeze(), diag, "wide" if wide else "tall", form, rank)


def is_hyper_regular(M, form=None, source="M"):
    """(True, None) if the Smith diagonal is min(p, q) ones, else (False, witness)."""
    sf = form if form is not None else smith_jacobson(M)
    r = min(M.rows, M.cols)
    for k, d in enumerate(sf.diag[: sf.rank]):
        if d.degree() >= 1:
            return False, TorsionWitness(source, d, k, 0, r)
    if sf.rank < r:
        return False, TorsionWitness(source, None, None, r - sf.rank, r)
    return True, None
