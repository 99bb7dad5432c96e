"""The compiled and pure Python kernels agree term for term."""
import pytest
from hypothesis import given, strategies as st

from piflat import kernels
from piflat._rational import QQ
from piflat.mpoly import layout

py = kernels.load("python")
try:
    cy = kernels.load("cython")
except ImportError:  # pragma: no cover - extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")
L = layout(3)

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=7).map(
    lambda f: QQ(f.numerator, f.denominator))
mono = st.tuples(*[st.integers(0, 4)] * 3).map(L.pack)
poly = st.dictionaries(mono, coeff, max_size=8).map(lambda d: {m: c for m, c in d.items() if c})


@needs_ext
@given(poly, poly, coeff, mono)
def test_ring_kernels_agree(a, b, c, m):
    for name in ("add", "sub", "mul"):
        assert getattr(cy, name)(a, b) == getattr(py, name)(a, b)
    assert cy.neg(a) == py.neg(a)
    assert cy.scale(a, c) == py.scale(a, c)
    assert cy.mul_term(a, m, c) == py.mul_term(a, m, c)


@needs_ext
@given(poly, poly)
def test_divexact_agrees(a, b):
    if not b:
        return
    prod = py.mul(a, b)
    assert cy.divexact(prod, b, L.guard) == py.divexact(prod, b, L.guard) == a
    plus = py.add(prod, {L.pack((0, 0, 0)): QQ(1)})
    assert (cy.divexact(plus, b, L.guard) is None) == (py.divexact(plus, b, L.guard) is None)


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.mul is (py.mul if kernels.BACKEND == "python" else cy.mul)


def test_pure_python_fallback_same_output():
    import os
    import subprocess
    import sys

    from helpers import data_path

    outs = {}
    for flag in ("0", "1"):
        env = dict(os.environ, PIFLAT_PURE_PYTHON=flag)
        code = ("import sys, piflat.kernels as k; from piflat.cli import main; "
                "print(k.BACKEND); main(sys.argv[1:])")
        res = subprocess.run([sys.executable, "-c", code, "flat", data_path("string.sys")],
                             env=env, capture_output=True, text=True, check=True)
        backend, _, text = res.stdout.partition("\n")
        outs[backend] = text
    assert "python" in outs
    assert len(set(outs.values())) == 1
