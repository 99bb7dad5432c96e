"""Exact π-flatness certificates for linear time-varying time-delay systems.

The operator ring is K(δ)[D]: D = d/dt, δ shifts time by a delay, and K
is the field of rational functions of t, the delay lengths and constant
parameters.  The usual entry points are ``load_system``,
``compute_pi_flat`` and ``verify_certificate``.
"""
from .context import OreContext, RingMode
from .delta import DeltaFraction, DeltaPoly, dp_divide, dp_gcd_lclm, frac
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    IndexOutOfRange,
    ModeError,
    ModeMismatch,
    NotHyperRegular,
    ParseError,
    PiflatError,
    UndeclaredIdentifier,
    UnsupportedMode,
    ZeroScale,
)
from .flatness import (
    FlatCertificate,
    LinearDelaySystem,
    VerificationReport,
    clearing_polynomial,
    compute_pi_flat,
    implicit_representation,
    torsion_diagnostics,
    verify_certificate,
)
from .groundfield import FieldElem, RationalFunctionField
from .kernels import BACKEND
from .ore import OrePoly, op_divide
from .parser import parse_expression, parse_matrix
from .render import render
from .smith import (
    ElementaryAction,
    OreMatrix,
    SmithForm,
    TorsionWitness,
    Unimodular,
    apply_action,
    is_hyper_regular,
    mat_mul,
    smith_jacobson,
)
from .sysfile import load_system, parse_system

__version__ = "0.1.0"
