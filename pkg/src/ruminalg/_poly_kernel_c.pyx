# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel; behaviourally identical to _poly_kernel.py.

Coefficients stay exact (Fraction objects); the win is C-level loop and
dict traffic in poly_mul / wedge_terms, which dominate the verification
suites' runtime.
"""

from fractions import Fraction

KERNEL_NAME = "cython"

_ZERO = Fraction(0)


def poly_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for ex, c in b.items():
        s = out.get(ex, _ZERO) + c
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    for ex, c in b.items():
        s = out.get(ex, _ZERO) - c
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_neg(dict a):
    cdef dict out = {}
    for ex, c in a.items():
        out[ex] = -c
    return out


def poly_scale(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    for ex, v in a.items():
        out[ex] = c * v
    return out


cdef tuple _exp_add(tuple ea, tuple eb):
    cdef Py_ssize_t i, k = len(ea)
    cdef list res = [0] * k
    for i in range(k):
        res[i] = ea[i] + eb[i]
    return tuple(res)


def poly_mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef dict out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            ex = _exp_add(<tuple> ea, <tuple> eb)
            s = out.get(ex, _ZERO) + ca * cb
            if s:
                out[ex] = s
            elif ex in out:
                del out[ex]
    return out


def poly_add_scaled(dict a, dict b, c):
    """a + c*b without an intermediate scaled copy."""
    if not c or not b:
        return dict(a)
    cdef dict out = dict(a)
    for ex, v in b.items():
        s = out.get(ex, _ZERO) + c * v
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_deriv(dict a, Py_ssize_t var):
    cdef dict out = {}
    for ex, c in a.items():
        e = (<tuple> ex)[var]
        if e:
            nex = (<tuple> ex)[:var] + (e - 1,) + (<tuple> ex)[var + 1:]
            s = out.get(nex, _ZERO) + c * e
            if s:
                out[nex] = s
            elif nex in out:
                del out[nex]
    return out


def merge_indices(tuple i, tuple j):
    """Sign and sorted concatenation of two increasing index tuples;
    (0, ()) when an index repeats."""
    cdef Py_ssize_t inversions = 0
    cdef Py_ssize_t na = len(i), nb = len(j)
    cdef Py_ssize_t p, q
    cdef long a, b
    for q in range(nb):
        b = j[q]
        for p in range(na):
            a = i[p]
            if a == b:
                return 0, ()
            if a > b:
                inversions += 1
    merged = tuple(sorted(i + j))
    return (-1 if inversions & 1 else 1), merged


def wedge_terms(dict ta, dict tb):
    """Wedge two form-term dicts: merge index tuples with signs, multiply
    coefficient polynomials, accumulate."""
    cdef dict out = {}
    cdef int sign
    for ia, pa in ta.items():
        for ib, pb in tb.items():
            sign_merged = merge_indices(<tuple> ia, <tuple> ib)
            sign = sign_merged[0]
            if sign == 0:
                continue
            merged = sign_merged[1]
            prod = poly_mul(<dict> pa, <dict> pb)
            if not prod:
                continue
            if sign < 0:
                prod = poly_neg(<dict> prod)
            cur = out.get(merged)
            acc = poly_add(<dict> cur, <dict> prod) if cur else prod
            if acc:
                out[merged] = acc
            elif merged in out:
                del out[merged]
    return out
