"""π-flatness of A(δ, D)·x = B(δ, D)·u: implicit form, Algorithm, checks.

Notation follows the usual presentation of the method:

* M·B·N = (I_m ; 0) is a Smith-Jacobson decomposition of B,
* F = (0, I_{n-m})·M·A is the implicit representation (F·x = 0),
* V·F·Q̃ = (I_{n-m}, 0) is one of F, and Q = Q̃·(0 ; I_m),
* R = N·(I_m, 0)·M·A·Q,
* P̃·Q·W = (I_m ; 0) gives P = W·(I_m, 0)·P̃,
* π = lclm(π̄, π_P, π_R) where π̄ clears M, N and Q̃.
"""
from dataclasses import dataclass, field

from .delta import DeltaPoly, frac, lclm_many
from .errors import DimensionMismatch, NotHyperRegular, UnsupportedMode
from .ore import OrePoly
from .smith import (
    OreMatrix,
    SmithForm,
    TorsionWitness,
    is_hyper_regular,
    mat_mul,
    smith_jacobson,
)


@dataclass
class LinearDelaySystem:
    """A·x = B·u with A n×n and B n×m over K[δ, D]."""

    A: OreMatrix
    B: OreMatrix
    state: tuple = ()
    inputs: tuple = ()

    def __post_init__(self):
        A, B = self.A, self.B
        if A.ctx != B.ctx:
            raise DimensionMismatch("A and B live in different rings")
        if A.rows != A.cols:
            raise DimensionMismatch(f"A must be square, got {A.rows}x{A.cols}")
        if B.rows != A.rows:
            raise DimensionMismatch(f"B has {B.rows} rows, A has {A.rows}")
        if B.cols > B.rows:
            raise DimensionMismatch(f"more inputs ({B.cols}) than states ({B.rows})")
        if not (A.is_delta_poly() and B.is_delta_poly()):
            raise ValueError("system matrices must have polynomial entries (no δ-inverses)")
        if not self.state:
            self.state = tuple(f"x{i + 1}" for i in range(self.n))
        if not self.inputs:
            self.inputs = tuple(f"u{i + 1}" for i in range(self.m))
        if len(self.state) != self.n or len(self.inputs) != self.m:
            raise DimensionMismatch("variable names do not match the matrix sizes")

    @property
    def ctx(self):
        return self.A.ctx

    @property
    def n(self):
        return self.A.rows

    @property
    def m(self):
        return self.B.cols

    @property
    def delays(self):
        return self.ctx.delays

    @property
    def params(self):
        return self.ctx.params


@dataclass
class FlatCertificate:
    pi: DeltaPoly
    P: OreMatrix
    Q: OreMatrix
    R: OreMatrix
    M: OreMatrix
    N: OreMatrix
    F: OreMatrix
    Qtilde: OreMatrix
    pi_bar: DeltaPoly
    pi_P: DeltaPoly
    pi_R: DeltaPoly
    extra: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    checks: dict
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def failed(self):
        return [k for k, v in self.checks.items() if not v]


def _selector(ctx, rows, cols, pairs):
    one, zero = OrePoly.one(ctx), OrePoly.zero(ctx)
    ones = set(pairs)
    return OreMatrix(
        ctx, [[one if (i, j) in ones else zero for j in range(cols)] for i in range(rows)],
        rows, cols,
    )


def top_rows(ctx, m, n):
    """(I_m, 0_{m,n-m})."""
    return _selector(ctx, m, n, [(k, k) for k in range(m)])


def bottom_rows(ctx, m, n):
    """(0_{n-m,m}, I_{n-m})."""
    return _selector(ctx, n - m, n, [(k, m + k) for k in range(n - m)])


def bottom_cols(ctx, m, n):
    """(0_{n-m,m} ; I_m)."""
    return _selector(ctx, n, m, [(n - m + k, k) for k in range(m)])


def clearing_polynomial(M):
    """Monic π ∈ K[δ] of least degree with π·M free of δ-denominators.

    A left fraction den^-1·num is cleared by π exactly when den is a right
    factor of π, so π is the least common left multiple of the entry
    denominators (computed per row, then across rows).
    """
    ctx = M.ctx
    if ctx.s > 1 and ctx.skew:
        raise UnsupportedMode("clearing needs one delay or t-free coefficients")
    rows = []
    for r in M.entries:
        dens = [d for e in r for d in e.denominators()]
        rows.append(lclm_many(dens, ctx))
    return lclm_many([p for p in rows if not p.is_one()], ctx)


def _clears(pi, M):
    return M.lscale(frac(M.ctx, pi)).is_delta_poly()


def implicit_representation(sys):
    """(F, M, N, SmithForm of B); raises NotHyperRegular(B)."""
    sf = smith_jacobson(sys.B)
    ok, w = is_hyper_regular(sys.B, sf, source="B")
    if not ok:
        raise NotHyperRegular(w)
    M, N = sf.U.matrix, sf.V.matrix
    F = mat_mul(bottom_rows(sys.ctx, sys.m, sys.n), mat_mul(M, sys.A))
    return F, sf.U, sf.V, sf


def input_operator(sys, M, N):
    """N·(I_m, 0)·M·A, so that u = (N·(I_m, 0)·M·A)·x on solutions."""
    return mat_mul(N, mat_mul(top_rows(sys.ctx, sys.m, sys.n), mat_mul(M, sys.A)))


def torsion_diagnostics(sys):
    """First hyper-regularity failure (B, then F) or None."""
    sf = smith_jacobson(sys.B)
    ok, w = is_hyper_regular(sys.B, sf, source="B")
    if not ok:
        return w
    F = mat_mul(bottom_rows(sys.ctx, sys.m, sys.n), mat_mul(sf.U.matrix, sys.A))
    if F.rows == 0:
        return None
    ok, w = is_hyper_regular(F, source="F")
    return None if ok else w


def compute_pi_flat(sys):
    """Run the π-flat output procedure; raises NotHyperRegular on failure."""
    ctx, n, m = sys.ctx, sys.n, sys.m
    F, Mu, Nu, _ = implicit_representation(sys)
    M, N = Mu.matrix, Nu.matrix

    sfF = smith_jacobson(F)
    ok, w = is_hyper_regular(F, sfF, source="F")
    if not ok:
        raise NotHyperRegular(w)
    Qt = sfF.V.matrix
    pi_bar = lclm_many(
        [p for p in (clearing_polynomial(X) for X in (M, N, Qt)) if not p.is_one()], ctx
    )

    Q = mat_mul(Qt, bottom_cols(ctx, m, n))
    R = mat_mul(input_operator(sys, M, N), Q)
    pi_R = clearing_polynomial(R)

    sfQ = smith_jacobson(Q)
    ok, w = is_hyper_regular(Q, sfQ, source="Q")
    if not ok:  # cannot happen: Q is a block of a unimodular matrix
        raise NotHyperRegular(w)
    Pt, W = sfQ.U.matrix, sfQ.V.matrix
    P = mat_mul(W, mat_mul(top_rows(ctx, m, n), Pt))
    pi_P = clearing_polynomial(P)

    pi = lclm_many([p for p in (pi_bar, pi_P, pi_R) if not p.is_one()], ctx)
    return FlatCertificate(
        pi=pi, P=P, Q=Q, R=R, M=M, N=N, F=F, Qtilde=Qt,
        pi_bar=pi_bar, pi_P=pi_P, pi_R=pi_R,
        extra={"V": sfF.U.matrix, "Ptilde": Pt, "W": W},
    )


CHECKS = ("PQ_identity", "FQ_zero", "AQ_equals_BR", "pi_clears_P", "pi_clears_Q", "pi_clears_R")


def verify_certificate(sys, cert):
    """Recheck every identity of a certificate from scratch."""
    n, m = sys.n, sys.m
    shapes = {"P": (m, n), "Q": (n, m), "R": (m, m)}
    for name, shape in shapes.items():
        got = getattr(cert, name).shape
        if got != shape:
            raise DimensionMismatch(f"{name} is {got[0]}x{got[1]}, expected {shape[0]}x{shape[1]}")
    F = cert.F
    if F is None:
        F = implicit_representation(sys)[0]
    if F.cols != n or F.rows != n - m:
        raise DimensionMismatch(f"F is {F.rows}x{F.cols}, expected {n - m}x{n}")
    ctx = sys.ctx
    P, Q, R = cert.P, cert.Q, cert.R
    checks, details = {}, {}

    PQ = mat_mul(P, Q)
    checks["PQ_identity"] = PQ.is_identity()
    FQ = mat_mul(F, Q)
    checks["FQ_zero"] = FQ.is_zero()
    diff = mat_mul(sys.A, Q) - mat_mul(sys.B, R)
    checks["AQ_equals_BR"] = diff.is_zero()
    pi_ok = not cert.pi.is_zero() and cert.pi.ctx == ctx
    for name, X in (("P", P), ("Q", Q), ("R", R)):
        checks[f"pi_clears_{name}"] = pi_ok and _clears(cert.pi, X)

    from .render import render_matrix

    if not checks["PQ_identity"]:
        details["PQ_identity"] = render_matrix(PQ)
    if not checks["FQ_zero"]:
        details["FQ_zero"] = render_matrix(FQ)
    if not checks["AQ_equals_BR"]:
        details["AQ_equals_BR"] = render_matrix(diff)
    return VerificationReport(checks, details)


__all__ = [
    "LinearDelaySystem",
    "FlatCertificate",
    "VerificationReport",
    "TorsionWitness",
    "SmithForm",
    "clearing_polynomial",
    "implicit_representation",
    "input_operator",
    "compute_pi_flat",
    "verify_certificate",
    "torsion_diagnostics",
]
