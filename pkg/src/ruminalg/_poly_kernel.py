"""Pure-Python arithmetic kernel.

Hot-loop operations on raw term dictionaries; `poly.py` selects between this
module and the compiled `_poly_kernel_c` at import time.  Both must stay
behaviourally identical (tests/test_kernel.py cross-checks them).

Representations:
  polynomial: dict mapping exponent tuple -> nonzero Fraction
  form terms: dict mapping strictly increasing index tuple -> polynomial dict
Zero is the empty dict in both cases; no zero values are ever stored.
"""

from fractions import Fraction

KERNEL_NAME = "pure-python"

_ZERO = Fraction(0)


def poly_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for ex, c in b.items():
        s = out.get(ex, _ZERO) + c
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_sub(a, b):
    out = dict(a)
    for ex, c in b.items():
        s = out.get(ex, _ZERO) - c
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_neg(a):
    return {ex: -c for ex, c in a.items()}


def poly_scale(a, c):
    if not c:
        return {}
    return {ex: c * v for ex, v in a.items()}


def poly_mul(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            ex = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(ex, _ZERO) + ca * cb
            if s:
                out[ex] = s
            elif ex in out:
                del out[ex]
    return out


def poly_add_scaled(a, b, c):
    """a + c*b without an intermediate scaled copy."""
    if not c or not b:
        return dict(a)
    out = dict(a)
    for ex, v in b.items():
        s = out.get(ex, _ZERO) + c * v
        if s:
            out[ex] = s
        elif ex in out:
            del out[ex]
    return out


def poly_deriv(a, var):
    out = {}
    for ex, c in a.items():
        e = ex[var]
        if e:
            nex = ex[:var] + (e - 1,) + ex[var + 1 :]
            s = out.get(nex, _ZERO) + c * e
            if s:
                out[nex] = s
            elif nex in out:
                del out[nex]
    return out


def merge_indices(i, j):
    """Concatenate two strictly increasing index tuples and sort.

    Returns (sign, merged) with sign in {+1, -1}, or (0, ()) when the tuples
    share an index (the wedge of repeated generators vanishes).  The sign is
    the parity of the merge permutation: the number of pairs (a in i, b in j)
    with a > b.
    """
    inversions = 0
    for b in j:
        for a in i:
            if a == b:
                return 0, ()
            if a > b:
                inversions += 1
    merged = tuple(sorted(i + j))
    return (-1 if inversions & 1 else 1), merged


def wedge_terms(ta, tb):
    """Wedge two form-term dicts: merge index tuples with signs, multiply
    coefficient polynomials, accumulate."""
    out = {}
    for ia, pa in ta.items():
        for ib, pb in tb.items():
            sign, merged = merge_indices(ia, ib)
            if sign == 0:
                continue
            prod = poly_mul(pa, pb)
            if not prod:
                continue
            if sign < 0:
                prod = poly_neg(prod)
            cur = out.get(merged)
            acc = poly_add(cur, prod) if cur else prod
            if acc:
                out[merged] = acc
            elif merged in out:
                del out[merged]
    return out
