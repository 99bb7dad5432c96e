"""Matrices over K(δ)[D], elementary actions and the Smith-Jacobson form."""
import random

import pytest
import sympy

from helpers import COMM, SKEW, D, example, rand_actions, rand_int_delta, rand_matrix, sc, unimodular
from piflat.delta import DeltaPoly, frac
from piflat.errors import DimensionMismatch, IndexOutOfRange, ZeroScale
from piflat.ore import OrePoly
from piflat.render import render_matrix, render_ore
from piflat.smith import (
    ElementaryAction,
    OreMatrix,
    apply_action,
    is_hyper_regular,
    mat_mul,
    smith_jacobson,
)

EX1 = example("example1.sys", {"k": "t"})
CTX1 = EX1.ctx
t = CTX1.ground.gen("t")
d1 = DeltaPoly.gen(CTX1, 0)


def check_form(M, sf):
    assert mat_mul(mat_mul(sf.U.matrix, M), sf.V.matrix) == sf.form
    assert sf.U.check() and sf.V.check()
    p, q = M.shape
    for i in range(p):
        for j in range(q):
            if i != j:
                assert sf.form[i, j].is_zero()
    for k in range(sf.rank):
        assert sf.diag[k].lc().is_one()
    for k in range(sf.rank, min(p, q)):
        assert sf.diag[k].is_zero()


def test_action_inverse_restores():
    rng = random.Random(1)
    M = rand_matrix(rng, COMM, 3, 3)
    for side in ("left", "right"):
        for a in rand_actions(rng, COMM, 3, side, 8):
            assert apply_action(apply_action(M, a), a.inverse()) == M


def test_actions_on_example1_B():
    B = EX1.B
    swapped = apply_action(B, ElementaryAction("permute", "left", 0, 1))
    assert swapped[0, 0] == sc(CTX1, d1) and swapped[1, 0].is_zero()
    inv_d = frac(CTX1, d1).inverse()
    scaled = apply_action(swapped, ElementaryAction("scale", "left", 0, None, inv_d))
    assert scaled[0, 0].is_one()
    assert is_hyper_regular(B)[0]


def test_action_errors():
    with pytest.raises(ZeroScale):
        ElementaryAction("scale", "left", 0, None, frac(COMM, 0))
    with pytest.raises(IndexOutOfRange):
        ElementaryAction("permute", "left", 1, 1)
    with pytest.raises(IndexOutOfRange):
        apply_action(OreMatrix.identity(COMM, 2), ElementaryAction("permute", "left", 0, 5))


def test_smith_example1_B():
    sf = smith_jacobson(EX1.B)
    check_form(EX1.B, sf)
    assert [p.is_one() for p in sf.diag] == [True]
    # the left factor needs δ^-1
    assert not sf.U.matrix.is_delta_poly()
    # M·B·N = (1 ; 0)
    assert mat_mul(mat_mul(sf.U.matrix, EX1.B), sf.V.matrix) == OreMatrix(
        CTX1, [[OrePoly.one(CTX1)], [OrePoly.zero(CTX1)]])


def test_smith_example1_F():
    from piflat.flatness import implicit_representation

    F = implicit_representation(EX1)[0]
    sf = smith_jacobson(F)
    check_form(F, sf)
    assert sf.form == OreMatrix(CTX1, [[OrePoly.one(CTX1), OrePoly.zero(CTX1)]])


def test_smith_example1_A_not_hyper_regular():
    sf = smith_jacobson(EX1.A)
    check_form(EX1.A, sf)
    Dt = D(CTX1)
    # (−k̇/k + D)·D with k = t
    assert sf.diag[0].is_one()
    assert sf.diag[1] == (Dt - sc(CTX1, 1 / t)) * Dt
    ok, w = is_hyper_regular(EX1.A, sf)
    assert not ok and w.degree == 2 and w.index == 1


def test_hyper_regular_identity_and_zero():
    assert is_hyper_regular(OreMatrix.identity(COMM, 3)) == (True, None)
    ok, w = is_hyper_regular(OreMatrix.zeros(COMM, 2, 1))
    assert not ok and w.rank_defect == 1 and w.diagonal_entry is None


def test_mat_mul_against_commutative_oracle():
    rng = random.Random(3)
    Dsym, dsym = sympy.symbols("Dt d")
    for _ in range(20):
        A = rand_matrix(rng, COMM, 2, 2, 2, 1.0)
        B = rand_matrix(rng, COMM, 2, 2, 2, 1.0)
        # t-free coefficients: K(δ)[D] is commutative
        to = lambda M: sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.sympify(
            render_ore(M[i, j]).replace("^", "**") or "0"))
        assert sympy.expand(to(mat_mul(A, B)) - to(A) * to(B)) == sympy.zeros(2, 2)


def test_mat_mul_dimension_check():
    with pytest.raises(DimensionMismatch):
        mat_mul(OreMatrix.identity(COMM, 2), OreMatrix.identity(COMM, 3))


def test_random_smith_skew():
    rng = random.Random(5)
    for _ in range(12):
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        M = rand_matrix(rng, SKEW, p, q, 1, 0.6)
        check_form(M, smith_jacobson(M))


def test_random_smith_commutative():
    rng = random.Random(6)
    for _ in range(25):
        p, q = rng.randint(1, 4), rng.randint(1, 4)
        M = rand_matrix(rng, COMM, p, q, 2, 0.4)
        check_form(M, smith_jacobson(M))


def test_unimodular_scramble_keeps_hyper_regularity():
    rng = random.Random(8)
    for _ in range(10):
        L = unimodular(COMM, rand_actions(rng, COMM, 2, "left", 5), 2)
        R = unimodular(COMM, rand_actions(rng, COMM, 3, "right", 5), 3)
        M = OreMatrix(COMM, [[OrePoly.one(COMM), OrePoly.zero(COMM), D(COMM)],
                             [OrePoly.zero(COMM), OrePoly.one(COMM), sc(COMM, rand_int_delta(rng, COMM))]])
        assert is_hyper_regular(mat_mul(mat_mul(L, M), R))[0]


def test_render_matrix_empty():
    assert render_matrix(OreMatrix(COMM, [], 0, 2)) == "[]"
