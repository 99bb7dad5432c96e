"""Sparse polynomial kernels, pure Python reference.

A polynomial is a dict mapping a packed monomial (a non-negative int, see
``piflat.mpoly``) to a nonzero rational coefficient.  Packed monomials add
under multiplication and compare in graded-lex order as plain ints.  Every
function returns a fresh dict and never stores zero coefficients.

``piflat._ckernels`` is a compiled twin with the same signatures.
"""


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for m, c in b.items():
        v = r.get(m)
        if v is None:
            r[m] = c
        else:
            v = v + c
            if v:
                r[m] = v
            else:
                del r[m]
    return r


def sub(a, b):
    r = dict(a)
    for m, c in b.items():
        v = r.get(m)
        if v is None:
            r[m] = -c
        else:
            v = v - c
            if v:
                r[m] = v
            else:
                del r[m]
    return r


def neg(a):
    return {m: -c for m, c in a.items()}


def scale(a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def mul_term(a, mono, c):
    if not c:
        return {}
    return {m + mono: v * c for m, v in a.items()}


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    r = {}
    get = r.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            v = get(m)
            if v is None:
                r[m] = ca * cb
            else:
                r[m] = v + ca * cb
    return {m: c for m, c in r.items() if c}


def divexact(a, b, guard):
    """Quotient of ``a`` by ``b`` if the division is exact, else None.

    ``guard`` holds the guard bit of every exponent field; it turns the
    monomial divisibility test into one subtraction.
    """
    lm = max(b)
    lc = b[lm]
    rest = [(m, c) for m, c in b.items() if m != lm]
    rem = dict(a)
    q = {}
    while rem:
        m = max(rem)
        if ((m | guard) - lm) & guard != guard:
            return None
        qm = m - lm
        qc = rem.pop(m) / lc
        q[qm] = qc
        for mb, cb in rest:
            k = mb + qm
            v = rem.get(k)
            if v is None:
                rem[k] = -qc * cb
            else:
                v = v - qc * cb
                if v:
                    rem[k] = v
                else:
                    del rem[k]
    return q
