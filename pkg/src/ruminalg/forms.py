"""Polynomial differential forms on the Heisenberg group H^{2n+1}.

Coordinates are x_1..x_n, y_1..y_n, z and the contact form is
theta = dz - sum_i y_i dx_i, so theta ^ (dtheta)^n never vanishes.  Every
form is expressed in the adapted coframe

    e^0 = theta,   e^i = dx_i,   e^{n+i} = dy_i        (i = 1..n),

in which dtheta = sum_i e^i ^ e^{n+i} has constant integer coefficients.
Dually, the frame vector fields are the Reeb field T = d/dz and the
horizontal fields X_i = d/dx_i + y_i d/dz, Y_i = d/dy_i, which is what the
exterior derivative uses below.  User input written in coordinate
differentials is normalized through dz = e^0 + sum_i y_i e^i.

Forms are homogeneous: a Form stores a single degree and a map from strictly
increasing coframe index tuples to nonzero polynomial coefficients.  The zero
form of any degree is the empty map (degrees above the manifold dimension are
allowed for zero only, so wedges may annotate their honest target degree).
All values are immutable and all operations pure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DimensionError, DomainError
from .poly import Poly, get_kernel
from .prng import SplitMix64


class ContactModel:
    """The Heisenberg model H^{2n+1} with its adapted coframe."""

    def __init__(self, n: int):
        if n < 1:
            raise DimensionError(f"n must be positive, got {n}")
        self.n = n
        self.dim = 2 * n + 1          # manifold dimension, also top form degree
        self.nvars = 2 * n + 1        # polynomial coordinates x_1..x_n, y_1..y_n, z
        self._dtheta_powers: dict = {}
        self._monomial_cache: dict = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, ContactModel) and self.n == other.n

    def __hash__(self):
        return hash(("ContactModel", self.n))

    def __repr__(self) -> str:
        return f"ContactModel(n={self.n})"

    def coframe_label(self, i: int) -> str:
        if i == 0:
            return "theta"
        if 1 <= i <= self.n:
            return f"dx{i}"
        if self.n < i <= 2 * self.n:
            return f"dy{i - self.n}"
        raise DimensionError(f"coframe index {i} out of range for n={self.n}")

    def generator(self, i: int) -> "Form":
        """The coframe one-form e^i."""
        self.coframe_label(i)  # range check
        return Form(self, 1, {(i,): Poly.one(self.nvars)})

    def theta(self) -> "Form":
        return self.generator(0)

    def dtheta(self) -> "Form":
        terms = {
            (i, self.n + i): Poly.one(self.nvars)
            for i in range(1, self.n + 1)
        }
        return Form(self, 2, terms)

    def dtheta_power(self, k: int) -> "Form":
        """(dtheta)^k, cached; (dtheta)^0 is the constant 1."""
        if k < 0:
            raise DomainError(f"negative dtheta power {k}")
        if k not in self._dtheta_powers:
            if k == 0:
                val = Form.constant(self, Poly.one(self.nvars))
            else:
                val = wedge(self.dtheta_power(k - 1), self.dtheta())
            self._dtheta_powers[k] = val
        return self._dtheta_powers[k]

    def volume(self) -> "Form":
        """theta ^ (dtheta)^n -- nonzero by the contact condition."""
        return wedge(self.theta(), self.dtheta_power(self.n))

    def coframe_monomials(self, degree: int):
        """All strictly increasing index tuples of the given cardinality,
        in lexicographic order."""
        key = ("all", degree)
        if key not in self._monomial_cache:
            if 0 <= degree <= self.dim:
                self._monomial_cache[key] = list(combinations(range(self.dim), degree))
            else:
                self._monomial_cache[key] = []
        return self._monomial_cache[key]

    def vertical_monomials(self, degree: int):
        """Index tuples containing 0, i.e. the coframe basis of forms
        divisible by theta."""
        key = ("vert", degree)
        if key not in self._monomial_cache:
            if 1 <= degree <= self.dim:
                self._monomial_cache[key] = [
                    (0,) + rest for rest in combinations(range(1, self.dim), degree - 1)
                ]
            else:
                self._monomial_cache[key] = []
        return self._monomial_cache[key]


class Form:
    """Homogeneous differential form with polynomial coefficients."""

    __slots__ = ("model", "degree", "terms")

    def __init__(self, model: ContactModel, degree: int, terms=None, _canonical=False):
        self.model = model
        self.degree = degree
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = terms
        else:
            clean = {}
            for idx, p in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise DimensionError(f"index {idx} has wrong cardinality for degree {degree}")
                if any(not 0 <= i < model.dim for i in idx) or list(idx) != sorted(set(idx)):
                    raise DimensionError(f"bad coframe index tuple {idx}")
                if not isinstance(p, Poly):
                    p = Poly.constant(model.nvars, p)
                if p.nvars != model.nvars:
                    raise DimensionError("coefficient over wrong coordinate count")
                if not p.is_zero():
                    clean[idx] = p
            self.terms = clean
        if self.terms and not 0 <= degree <= model.dim:
            raise DimensionError(f"nonzero form of impossible degree {degree}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, model: ContactModel, degree: int) -> "Form":
        return cls(model, degree, {}, _canonical=True)

    @classmethod
    def constant(cls, model: ContactModel, coefficient: Poly) -> "Form":
        """Degree-zero form with the given polynomial coefficient."""
        if coefficient.is_zero():
            return cls.zero(model, 0)
        return cls(model, 0, {(): coefficient}, _canonical=True)

    @classmethod
    def monomial(cls, model: ContactModel, idx, coefficient: Poly) -> "Form":
        return cls(model, len(tuple(idx)), {tuple(idx): coefficient})

    def zero_of_degree(self, degree: int) -> "Form":
        return Form.zero(self.model, degree)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx) -> Poly:
        return self.terms.get(tuple(idx), Poly.zero(self.model.nvars))

    def _check(self, other: "Form") -> None:
        if self.model != other.model:
            raise DimensionError("forms over different models")

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DimensionError(f"adding degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for idx, p in other.terms.items():
            s = out[idx] + p if idx in out else p
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return Form(self.model, self.degree, out, _canonical=True)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def scale(self, c) -> "Form":
        c = Fraction(c)
        if not c:
            return Form.zero(self.model, self.degree)
        return Form(
            self.model,
            self.degree,
            {idx: p.scale(c) for idx, p in self.terms.items()},
            _canonical=True,
        )

    def scale_poly(self, f: Poly) -> "Form":
        if f.is_zero():
            return Form.zero(self.model, self.degree)
        out = {}
        for idx, p in self.terms.items():
            q = p * f
            if not q.is_zero():
                out[idx] = q
        return Form(self.model, self.degree, out, _canonical=True)

    def __eq__(self, other) -> bool:
        # Mathematical equality in the graded algebra: all zero forms agree
        # regardless of their degree annotation.
        if not isinstance(other, Form):
            return NotImplemented
        if self.model != other.model:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    # -- display -------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text, reparseable by the expression grammar: terms sorted
        by coframe index tuple; constant coefficients bare, polynomial ones
        parenthesized; '0' for the zero form."""
        if not self.terms:
            return "0"
        rendered = []
        for idx in sorted(self.terms):
            p = self.terms[idx]
            word = "^".join(self.model.coframe_label(i) for i in idx)
            if p.is_constant():
                c = p.constant_value()
                if not word:
                    rendered.append((c < 0, str(abs(c))))
                elif abs(c) == 1:
                    rendered.append((c < 0, word))
                else:
                    rendered.append((c < 0, f"{abs(c)} {word}"))
            else:
                body = f"({p.to_text()})"
                rendered.append((False, f"{body} {word}" if word else body))
        out = []
        for i, (negative, body) in enumerate(rendered):
            if i == 0:
                out.append(("-" if negative else "") + body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Form(n={self.model.n}, deg={self.degree}, {self.to_text()!r})"


# -- algebra operations ------------------------------------------------------


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; graded commutative and associative."""
    a._check(b)
    degree = a.degree + b.degree
    if a.is_zero() or b.is_zero() or degree > a.model.dim:
        return Form.zero(a.model, degree)
    ta = {idx: p.terms for idx, p in a.terms.items()}
    tb = {idx: p.terms for idx, p in b.terms.items()}
    raw = get_kernel().wedge_terms(ta, tb)
    nvars = a.model.nvars
    out = {idx: Poly(nvars, t, _canonical=True) for idx, t in raw.items()}
    return Form(a.model, degree, out, _canonical=True)


def wedge_all(forms) -> Form:
    it = iter(forms)
    out = next(it)
    for f in it:
        out = wedge(out, f)
    return out


def _differential_of_function(f: Poly, model: ContactModel) -> Form:
    """df in the adapted coframe: (Tf) e^0 + sum (X_i f) e^i + (Y_i f) e^{n+i}
    with T = d/dz, X_i = d/dx_i + y_i d/dz, Y_i = d/dy_i."""
    n = model.n
    z_index = 2 * n
    tf = f.deriv(z_index)
    terms = {}
    if not tf.is_zero():
        terms[(0,)] = tf
    for i in range(1, n + 1):
        xi = f.deriv(i - 1) + tf * Poly.variable(model.nvars, n + i - 1)
        if not xi.is_zero():
            terms[(i,)] = xi
        yi = f.deriv(n + i - 1)
        if not yi.is_zero():
            terms[(n + i,)] = yi
    return Form(model, 1, terms, _canonical=True)


def exterior_d(w: Form) -> Form:
    """Exterior derivative.  On a term f e^I this is df ^ e^I plus, when e^0
    divides e^I, f dtheta ^ e^{I minus 0}; d(e^j) = 0 for j >= 1 and
    d(e^0) = dtheta since theta = dz - sum y_i dx_i."""
    model = w.model
    out = Form.zero(model, w.degree + 1)
    for idx, f in w.terms.items():
        df = _differential_of_function(f, model)
        mono = Form(model, len(idx), {idx: Poly.one(model.nvars)}, _canonical=True)
        out = out + wedge(df, mono)
        if idx and idx[0] == 0:
            tail = Form(model, len(idx) - 1, {idx[1:]: f}, _canonical=True)
            out = out + wedge(model.dtheta(), tail)
    return out


def is_vertical(w: Form) -> bool:
    """True when every stored coframe monomial contains e^0, i.e. when
    theta ^ w = 0.  The zero form is vertical."""
    return all(idx and idx[0] == 0 for idx in w.terms)


def lefschetz(w: Form, power: int) -> Form:
    """w ^ (dtheta)^power for vertical w.

    The symplectic-type isomorphism statements that downstream solvers rely
    on hold on vertical forms only, so non-vertical input is rejected; use
    `wedge_dtheta_power` for the unrestricted wedge.
    """
    if not is_vertical(w):
        raise DomainError("lefschetz requires a vertical form")
    return wedge_dtheta_power(w, power)


def wedge_dtheta_power(w: Form, power: int, dtheta_form: Form | None = None) -> Form:
    """w ^ (dtheta)^power with no verticality restriction; an explicit
    `dtheta_form` substitutes a rescaled contact structure."""
    if power < 0:
        raise DomainError(f"negative power {power}")
    if dtheta_form is None:
        return wedge(w, w.model.dtheta_power(power))
    out = w
    for _ in range(power):
        out = wedge(out, dtheta_form)
    return out


def lefschetz_power_matrix(model: ContactModel, k: int, dtheta_form: Form | None = None):
    """Matrix of wedging with (dtheta)^k from vertical coframe monomials of
    degree n-k+1 to those of degree n+k+1, both in lexicographic order.

    Entries are integral rationals and the matrix is square and invertible
    for 1 <= k <= n (the vertical Lefschetz isomorphism).
    """
    n = model.n
    if not 1 <= k <= n:
        raise DomainError(f"lefschetz power {k} outside 1..{n}")
    src = model.vertical_monomials(n - k + 1)
    tgt = model.vertical_monomials(n + k + 1)
    tgt_pos = {idx: i for i, idx in enumerate(tgt)}
    matrix = [[Fraction(0)] * len(src) for _ in tgt]
    for j, idx in enumerate(src):
        mono = Form(model, len(idx), {idx: Poly.one(model.nvars)}, _canonical=True)
        image = wedge_dtheta_power(mono, k, dtheta_form)
        for out_idx, p in image.terms.items():
            matrix[tgt_pos[out_idx]][j] = p.constant_value()
    return matrix


# -- random generation (seeded, for the verification suites) -----------------


def random_poly(rng: SplitMix64, nvars: int, max_degree: int) -> Poly:
    """Nonzero polynomial with 1..3 monomials, total degree <= max_degree,
    integer coefficients in [-9, 9] minus {0}."""
    terms = {}
    for _ in range(rng.randint(1, 3)):
        total = rng.randint(0, max_degree)
        ex = [0] * nvars
        for _ in range(total):
            ex[rng.randint(0, nvars - 1)] += 1
        c = rng.randint(1, 9) * (1 if rng.chance(1, 2) else -1)
        terms[tuple(ex)] = terms.get(tuple(ex), 0) + c
    p = Poly(nvars, {ex: Fraction(c) for ex, c in terms.items() if c})
    if p.is_zero():
        return Poly.one(nvars)
    return p


def random_form(
    model: ContactModel,
    rng: SplitMix64,
    degree: int,
    max_poly_degree: int = 2,
    density=(1, 2),
    vertical: bool = False,
) -> Form:
    """Random homogeneous form: each coframe monomial of the degree is kept
    independently with probability `density`, with a random_poly coefficient.
    May be zero."""
    monos = model.vertical_monomials(degree) if vertical else model.coframe_monomials(degree)
    terms = {}
    for idx in monos:
        if rng.chance(*density):
            terms[idx] = random_poly(rng, model.nvars, max_poly_degree)
    return Form(model, degree, terms, _canonical=True)
