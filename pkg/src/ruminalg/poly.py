"""Exact multivariate polynomials over the rationals.

These are the coefficient functions of all differential forms in the package:
polynomials in the coordinates x_1..x_n, y_1..y_n, z of the Heisenberg group
H^{2n+1}, with arbitrary-precision `fractions.Fraction` coefficients.  All
identities checked downstream are exact ring identities, so no floating point
appears anywhere.

A polynomial is canonically a map from exponent tuples (length 2n+1, entries
>= 0, coordinate order x_1..x_n, y_1..y_n, z) to nonzero rationals; the zero
polynomial is the empty map.  Values are immutable after construction and all
operations are pure, so sharing across threads is safe.

The arithmetic inner loops live in a swappable kernel: the compiled
`_poly_kernel_c` when available, else the pure-Python `_poly_kernel`.
Set RUMINALG_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import DimensionError

if os.environ.get("RUMINALG_PURE_PYTHON"):
    from . import _poly_kernel as _kernel
else:
    try:
        from . import _poly_kernel_c as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _poly_kernel as _kernel  # type: ignore[no-redef]


def kernel_name() -> str:
    """Name of the arithmetic kernel in use ('cython' or 'pure-python')."""
    return _kernel.KERNEL_NAME


def set_kernel(module) -> None:
    """Swap the arithmetic kernel (benchmarking/testing hook)."""
    global _kernel
    _kernel = module


def get_kernel():
    return _kernel


def var_name(nvars: int, index: int) -> str:
    """Coordinate name for variable `index`: x1..xn, y1..yn, z."""
    n = (nvars - 1) // 2
    if index < n:
        return f"x{index + 1}"
    if index < 2 * n:
        return f"y{index - n + 1}"
    return "z"


class Poly:
    """Immutable exact polynomial in ``nvars`` coordinates."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None, _canonical=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = terms
        else:
            clean = {}
            for ex, c in terms.items():
                ex = tuple(int(e) for e in ex)
                if len(ex) != nvars or any(e < 0 for e in ex):
                    raise DimensionError(f"bad exponent tuple {ex} for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[ex] = clean.get(ex, Fraction(0)) + c
            self.terms = {ex: c for ex, c in clean.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {}, _canonical=True)

    @classmethod
    def constant(cls, nvars: int, value) -> "Poly":
        c = Fraction(value)
        if not c:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, _canonical=True)

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise DimensionError(f"variable index {index} out of range for {nvars} variables")
        ex = [0] * nvars
        ex[index] = 1
        return cls(nvars, {tuple(ex): Fraction(1)}, _canonical=True)

    def _wrap(self, terms) -> "Poly":
        return Poly(self.nvars, terms, _canonical=True)

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise DimensionError(f"mixed coordinate counts: {self.nvars} vs {other.nvars}")

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[(0,) * self.nvars]

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(ex) for ex in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return self._wrap(_kernel.poly_add(self.terms, other.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return self._wrap(_kernel.poly_sub(self.terms, other.terms))

    def __neg__(self) -> "Poly":
        return self._wrap(_kernel.poly_neg(self.terms))

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        return self._wrap(_kernel.poly_mul(self.terms, other.terms))

    def scale(self, c) -> "Poly":
        return self._wrap(_kernel.poly_scale(self.terms, Fraction(c)))

    def add_scaled(self, other: "Poly", c) -> "Poly":
        """self + c*other."""
        self._check(other)
        return self._wrap(_kernel.poly_add_scaled(self.terms, other.terms, Fraction(c)))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def deriv(self, index: int) -> "Poly":
        """Exact partial derivative with respect to coordinate `index`."""
        if not 0 <= index < self.nvars:
            raise DimensionError(f"derivative index {index} out of range for {self.nvars} variables")
        return self._wrap(_kernel.poly_deriv(self.terms, index))

    # -- equality / display ------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def to_text(self) -> str:
        """Canonical text: monomials in descending lexicographic exponent
        order, `**` for powers, `*` between factors, e.g. ``3/2*x1**2*y1``."""
        if not self.terms:
            return "0"
        pieces = []
        for ex in sorted(self.terms, reverse=True):
            c = self.terms[ex]
            factors = []
            for i, e in enumerate(ex):
                if e == 1:
                    factors.append(var_name(self.nvars, i))
                elif e > 1:
                    factors.append(f"{var_name(self.nvars, i)}**{e}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            pieces.append((c < 0, body))
        out = []
        for i, (negative, body) in enumerate(pieces):
            if i == 0:
                out.append(("-" if negative else "") + body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.to_text()!r})"
