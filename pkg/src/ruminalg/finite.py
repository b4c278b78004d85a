"""Finite-dimensional graded algebras and exact cohomology rings.

This is the desk-scale side of the package: a `FiniteGradedAlgebra` stores a
basis per degree, the differential as exact matrices, and the product as
structure constants, all over the rationals, with the algebra axioms (d^2 = 0,
graded commutativity, associativity, the Leibniz rule) checked at
construction.  `cohomology` computes ker d / im d with representative
cocycles and the induced product; `check_ring_isomorphism` compares two
cohomology rings through a cochain map.

The built-in model is the exterior algebra on three degree-one generators
a, b, c with da = db = 0 and dc = a^b -- the left-invariant forms of the
three-dimensional Heisenberg group.  Identifying a, b, c with the constant-
coefficient coframe forms dx1, dy1, theta of `ruminalg.forms` (n = 1), the
operators gamma and pi of `ruminalg.rumin` preserve constant coefficients and
restrict to this eight-dimensional algebra; `heisenberg_ce_retract` packages
that restriction as a deformation retract onto the six-dimensional
subcomplex spanned by 1; a, b; c^a, c^b; c^a^b, ready for the generic
homotopy transfer.

File format (consumed by the CLI `cohomology` subcommand), line oriented,
`#` starts a comment:

    algebra NAME            optional header
    basis LABEL DEGREE      one line per basis element
    d SRC DST COEFF         entry of the differential: d(SRC) += COEFF * DST
    mu A B C COEFF          structure constant: A * B += COEFF * C

COEFF is an integer or `p/q` rational.  Omitted entries are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, rumin
from .cinfty import GradedOpSet, RetractData
from .errors import ConstructionError, DimensionError, DomainError
from .forms import ContactModel, Form, wedge
from .poly import Poly

_ZERO = Fraction(0)


class FiniteVector:
    """Homogeneous element of a FiniteGradedAlgebra (immutable, hashable)."""

    __slots__ = ("algebra", "degree", "coeffs", "_hash")

    def __init__(self, algebra: "FiniteGradedAlgebra", degree: int, coeffs):
        self.algebra = algebra
        self.degree = degree
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._hash = None
        if len(self.coeffs) != algebra.dim(degree):
            raise DimensionError(
                f"vector of length {len(self.coeffs)} in degree {degree} "
                f"(dimension {algebra.dim(degree)})"
            )

    @classmethod
    def _make(cls, algebra, degree, coeffs) -> "FiniteVector":
        """Internal fast path: `coeffs` must already be a tuple of Fractions
        of the right length."""
        v = object.__new__(cls)
        v.algebra = algebra
        v.degree = degree
        v.coeffs = coeffs
        v._hash = None
        return v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def zero_of_degree(self, degree: int) -> "FiniteVector":
        return self.algebra.zero(degree)

    def scale(self, c) -> "FiniteVector":
        c = Fraction(c)
        return FiniteVector._make(self.algebra, self.degree, tuple(c * x for x in self.coeffs))

    def __add__(self, other: "FiniteVector") -> "FiniteVector":
        if not isinstance(other, FiniteVector):
            return NotImplemented
        if self.algebra is not other.algebra:
            raise DimensionError("vectors from different algebras")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DimensionError(f"adding degrees {self.degree} and {other.degree}")
        return FiniteVector._make(
            self.algebra, self.degree, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FiniteVector") -> "FiniteVector":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteVector):
            return NotImplemented
        if self.algebra is not other.algebra:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.algebra), self.degree, self.coeffs))
        return self._hash

    def __str__(self) -> str:
        labels = self.algebra.labels(self.degree)
        parts = []
        for c, label in zip(self.coeffs, labels):
            if not c:
                continue
            if c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{c}*{label}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self) -> str:
        return f"FiniteVector({self.degree}, {self})"


class FiniteGradedAlgebra:
    """Graded commutative differential algebra with explicit basis, exact
    differential matrices and product structure constants."""

    def __init__(self, basis, d, mu, name: str = ""):
        self.name = name
        self.basis = {deg: list(labels) for deg, labels in sorted(basis.items()) if labels}
        self.degrees = sorted(self.basis)
        self._pos: dict = {}
        for deg, labels in self.basis.items():
            for i, label in enumerate(labels):
                if label in self._pos:
                    raise ConstructionError(f"duplicate basis label {label!r}")
                self._pos[label] = (deg, i)
        self.d = {src: {dst: Fraction(c) for dst, c in row.items() if Fraction(c)} for src, row in d.items()}
        self.mu = {
            pair: {dst: Fraction(c) for dst, c in row.items() if Fraction(c)}
            for pair, row in mu.items()
        }
        self._validate()

    # -- basic structure -----------------------------------------------------

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    def labels(self, degree: int):
        return self.basis.get(degree, [])

    def degree_of(self, label: str) -> int:
        return self._pos[label][0]

    def zero(self, degree: int) -> FiniteVector:
        return FiniteVector._make(self, degree, (_ZERO,) * self.dim(degree))

    def element(self, label: str) -> FiniteVector:
        deg, i = self._pos[label]
        coeffs = [_ZERO] * self.dim(deg)
        coeffs[i] = Fraction(1)
        return FiniteVector(self, deg, coeffs)

    def vector(self, degree: int, coeffs) -> FiniteVector:
        return FiniteVector(self, degree, coeffs)

    def basis_vectors(self, degree: int):
        return [self.element(label) for label in self.labels(degree)]

    def all_basis_vectors(self):
        return [self.element(label) for deg in self.degrees for label in self.labels(deg)]

    def d_matrix(self, degree: int):
        """Matrix of d from degree to degree+1 (rows indexed by the target)."""
        rows, cols = self.dim(degree + 1), self.dim(degree)
        m = linalg.zeros(rows, cols)
        for j, label in enumerate(self.labels(degree)):
            for dst, c in self.d.get(label, {}).items():
                m[self._pos[dst][1]][j] = c
        return m

    def apply_d(self, v: FiniteVector) -> FiniteVector:
        out = [_ZERO] * self.dim(v.degree + 1)
        for j, c in enumerate(v.coeffs):
            if not c:
                continue
            label = self.labels(v.degree)[j]
            for dst, w in self.d.get(label, {}).items():
                out[self._pos[dst][1]] += c * w
        return FiniteVector._make(self, v.degree + 1, tuple(out))

    def mu_vec(self, u: FiniteVector, v: FiniteVector) -> FiniteVector:
        degree = u.degree + v.degree
        out = [_ZERO] * self.dim(degree)
        lu, lv = self.labels(u.degree), self.labels(v.degree)
        for iu, cu in enumerate(u.coeffs):
            if not cu:
                continue
            for iv, cv in enumerate(v.coeffs):
                if not cv:
                    continue
                for dst, w in self.mu.get((lu[iu], lv[iv]), {}).items():
                    out[self._pos[dst][1]] += cu * cv * w
        return FiniteVector._make(self, degree, tuple(out))

    def op_set(self) -> GradedOpSet:
        """The algebra as an operator family: d in arity 1, the product in
        arity 2, zero above."""
        ops = {
            1: lambda block: self.apply_d(block[0]),
            2: lambda block: self.mu_vec(block[0], block[1]),
        }
        return GradedOpSet(
            ops,
            degree_fn=lambda k: 2 - k,
            zero_maker=lambda target, elements: self.zero(target),
            name=self.name or "finite algebra",
        )

    # -- construction checks ---------------------------------------------------

    def _validate(self):
        for src, row in self.d.items():
            if src not in self._pos:
                raise ConstructionError(f"differential from unknown label {src!r}")
            for dst in row:
                if dst not in self._pos:
                    raise ConstructionError(f"differential into unknown label {dst!r}")
                if self.degree_of(dst) != self.degree_of(src) + 1:
                    raise ConstructionError(f"d {src} -> {dst} does not raise degree by one")
        for (a, b), row in self.mu.items():
            if a not in self._pos or b not in self._pos:
                raise ConstructionError(f"product on unknown labels ({a!r}, {b!r})")
            for dst in row:
                if self.degree_of(dst) != self.degree_of(a) + self.degree_of(b):
                    raise ConstructionError(f"mu {a} {b} -> {dst} violates degree additivity")
        for v in self.all_basis_vectors():
            if not self.apply_d(self.apply_d(v)).is_zero():
                raise ConstructionError(f"d^2 != 0 on {v}")
        vectors = self.all_basis_vectors()
        for u in vectors:
            for v in vectors:
                sign = -1 if (u.degree & 1) and (v.degree & 1) else 1
                if self.mu_vec(u, v) != self.mu_vec(v, u).scale(sign):
                    raise ConstructionError(f"product not graded commutative on ({u}, {v})")
                left = self.apply_d(self.mu_vec(u, v))
                right = self.mu_vec(self.apply_d(u), v) + self.mu_vec(
                    u, self.apply_d(v)
                ).scale(-1 if u.degree & 1 else 1)
                if left != right:
                    raise ConstructionError(f"Leibniz rule fails on ({u}, {v})")
        for u in vectors:
            for v in vectors:
                for w in vectors:
                    if self.mu_vec(self.mu_vec(u, v), w) != self.mu_vec(u, self.mu_vec(v, w)):
                        raise ConstructionError(f"product not associative on ({u}, {v}, {w})")

    # -- plain-text serialization ----------------------------------------------

    def dumps(self) -> str:
        lines = []
        if self.name:
            lines.append(f"algebra {self.name}")
        for deg in self.degrees:
            for label in self.labels(deg):
                lines.append(f"basis {label} {deg}")
        for deg in self.degrees:
            for label in self.labels(deg):
                for dst in self.labels(deg + 1):
                    c = self.d.get(label, {}).get(dst)
                    if c:
                        lines.append(f"d {label} {dst} {c}")
        ordered = [label for deg in self.degrees for label in self.labels(deg)]
        for a in ordered:
            for b in ordered:
                row = self.mu.get((a, b))
                if not row:
                    continue
                for dst in ordered:
                    c = row.get(dst)
                    if c:
                        lines.append(f"mu {a} {b} {dst} {c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FiniteGradedAlgebra":
        name = ""
        basis: dict = {}
        d: dict = {}
        mu: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            kind = fields[0]
            try:
                if kind == "algebra" and len(fields) == 2:
                    name = fields[1]
                elif kind == "basis" and len(fields) == 3:
                    basis.setdefault(int(fields[2]), []).append(fields[1])
                elif kind == "d" and len(fields) == 4:
                    d.setdefault(fields[1], {})[fields[2]] = Fraction(fields[3])
                elif kind == "mu" and len(fields) == 5:
                    mu.setdefault((fields[1], fields[2]), {})[fields[3]] = Fraction(fields[4])
                else:
                    raise ValueError(f"unrecognized record {kind!r}")
            except (ValueError, ZeroDivisionError) as exc:
                raise ConstructionError(f"line {lineno}: {exc}") from exc
        return cls(basis, d, mu, name=name)


# -- exact cohomology ----------------------------------------------------------


class Cohomology:
    """Per-degree basis of ker d / im d with representative cocycles."""

    def __init__(self, algebra: FiniteGradedAlgebra):
        self.algebra = algebra
        self._reps: dict = {}
        self._im_cols: dict = {}
        for k in algebra.degrees:
            dim_k = algebra.dim(k)
            dk = algebra.d_matrix(k)
            kernel = linalg.nullspace(dk, dim_k) if dim_k else []
            dprev = algebra.d_matrix(k - 1)
            if algebra.dim(k - 1):
                _, pivots = linalg.rref(dprev)
                im_cols = [[dprev[r][c] for r in range(dim_k)] for c in pivots]
            else:
                im_cols = []
            stacked = linalg.from_columns(im_cols + kernel, dim_k)
            _, pivots = linalg.rref(stacked) if dim_k else ([], [])
            reps = [kernel[p - len(im_cols)] for p in pivots if p >= len(im_cols)]
            self._im_cols[k] = im_cols
            self._reps[k] = [FiniteVector(algebra, k, v) for v in reps]

    def betti(self, degree: int) -> int:
        return len(self._reps.get(degree, ()))

    def betti_numbers(self):
        return tuple(self.betti(k) for k in self.algebra.degrees)

    def representatives(self, degree: int):
        return list(self._reps.get(degree, ()))

    def reduce(self, v: FiniteVector):
        """Coordinates of the class [v] in the representative basis of its
        degree; v must be a cocycle."""
        if not self.algebra.apply_d(v).is_zero():
            raise DomainError(f"not a cocycle: {v}")
        im_cols = self._im_cols.get(v.degree, [])
        reps = self._reps.get(v.degree, [])
        if not reps:
            return ()
        matrix = linalg.from_columns(im_cols + [list(r.coeffs) for r in reps], len(v.coeffs))
        x = linalg.solve_exact(matrix, list(v.coeffs))
        if x is None:
            raise DomainError(f"cocycle outside ker/im decomposition: {v}")
        return tuple(x[len(im_cols) :])


def cohomology(algebra: FiniteGradedAlgebra) -> Cohomology:
    """Exact kernel/image quotient per degree with the induced product
    available through `Cohomology.reduce`."""
    return Cohomology(algebra)


class CochainMap:
    """Degree-zero linear map between finite algebras, one matrix per degree
    (dst dimension x src dimension)."""

    def __init__(self, src: FiniteGradedAlgebra, dst: FiniteGradedAlgebra, blocks):
        self.src = src
        self.dst = dst
        self.blocks = {deg: m for deg, m in blocks.items()}

    @classmethod
    def from_function(cls, src, dst, fn) -> "CochainMap":
        blocks = {}
        for deg in src.degrees:
            cols = [list(fn(v).coeffs) for v in src.basis_vectors(deg)]
            blocks[deg] = linalg.from_columns(cols, dst.dim(deg))
        return cls(src, dst, blocks)

    def apply(self, v: FiniteVector) -> FiniteVector:
        block = self.blocks.get(v.degree)
        if block is None:
            return self.dst.zero(v.degree)
        return FiniteVector(self.dst, v.degree, linalg.mat_vec(block, list(v.coeffs)))

    def is_cochain_map(self) -> bool:
        for deg in self.src.degrees:
            for v in self.src.basis_vectors(deg):
                if self.apply(self.src.apply_d(v)) != self.dst.apply_d(self.apply(v)):
                    return False
        return True


@dataclass
class RingIsoResult:
    ok: bool
    witnesses: list

    def __bool__(self) -> bool:
        return self.ok


def check_ring_isomorphism(fmap: CochainMap, ha: Cohomology | None = None, hb: Cohomology | None = None) -> RingIsoResult:
    """Does the map induce a graded-ring isomorphism on cohomology?

    Checks per degree that the induced matrix on classes is square and
    invertible, and on all pairs of class representatives that the map sends
    products to products.  Returns witnesses instead of raising.
    """
    ha = ha or cohomology(fmap.src)
    hb = hb or cohomology(fmap.dst)
    witnesses = []
    degrees = sorted(set(fmap.src.degrees) | set(fmap.dst.degrees))
    for deg in degrees:
        reps = ha.representatives(deg)
        if len(reps) != hb.betti(deg):
            witnesses.append(
                f"degree {deg}: betti {len(reps)} vs {hb.betti(deg)}"
            )
            continue
        if not reps:
            continue
        cols = [list(hb.reduce(fmap.apply(r))) for r in reps]
        matrix = linalg.from_columns(cols, hb.betti(deg))
        if linalg.rank(matrix) != len(reps):
            witnesses.append(f"degree {deg}: induced map on classes is singular")
    for p in degrees:
        for q in degrees:
            for rp in ha.representatives(p):
                for rq in ha.representatives(q):
                    lhs = fmap.apply(fmap.src.mu_vec(rp, rq))
                    rhs = fmap.dst.mu_vec(fmap.apply(rp), fmap.apply(rq))
                    try:
                        if hb.reduce(lhs) != hb.reduce(rhs):
                            witnesses.append(
                                f"product mismatch on classes [{rp}] * [{rq}]"
                            )
                    except DomainError as exc:
                        witnesses.append(str(exc))
    return RingIsoResult(ok=not witnesses, witnesses=witnesses)


# -- the built-in Heisenberg model ----------------------------------------------

_LETTER_ORDER = {"a": 0, "b": 1, "c": 2}


def _sort_letters(letters):
    """Sort exterior-algebra letters, tracking the permutation sign; returns
    (sign, word) with sign 0 on a repeated letter."""
    seq = list(letters)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0, ""
    # insertion sort counting transpositions
    for i in range(1, len(seq)):
        j = i
        while j > 0 and _LETTER_ORDER[seq[j - 1]] > _LETTER_ORDER[seq[j]]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, "".join(seq)


def _word_label(word: str) -> str:
    return word if word else "1"


def heisenberg_ce_algebra() -> FiniteGradedAlgebra:
    """Exterior algebra on a, b, c (all degree 1) with da = db = 0 and
    dc = a^b: the left-invariant forms of the 3-dimensional Heisenberg
    group."""
    words = ["", "a", "b", "c", "ab", "ac", "bc", "abc"]
    basis: dict = {}
    for w in words:
        basis.setdefault(len(w), []).append(_word_label(w))
    mu: dict = {}
    for u in words:
        for v in words:
            sign, merged = _sort_letters(u + v)
            if sign:
                mu[(_word_label(u), _word_label(v))] = {_word_label(merged): Fraction(sign)}
    d: dict = {}
    for w in words:
        row: dict = {}
        for pos, letter in enumerate(w):
            if letter != "c":
                continue
            sign, merged = _sort_letters(w[:pos] + "ab" + w[pos + 1 :])
            if sign:
                coeff = Fraction(sign if pos % 2 == 0 else -sign)
                row[_word_label(merged)] = row.get(_word_label(merged), _ZERO) + coeff
        row = {k: v for k, v in row.items() if v}
        if row:
            d[_word_label(w)] = row
    return FiniteGradedAlgebra(basis, d, mu, name="heisenberg-ce")


# Correspondence with constant-coefficient forms on H^3 (n = 1):
# a <-> dx1 = e^1,  b <-> dy1 = e^2,  c <-> theta = e^0.
_LETTER_GEN = {"a": 1, "b": 2, "c": 0}
_GEN_LETTER = {1: "a", 2: "b", 0: "c"}

_RUMIN_WORDS = ["1", "a", "b", "ca", "cb", "cab"]


def _model3() -> ContactModel:
    return ContactModel(1)


def _word_to_form(word: str, model: ContactModel) -> Form:
    if word == "1":
        return Form.constant(model, Poly.one(model.nvars))
    out = Form.constant(model, Poly.one(model.nvars))
    for letter in word:
        out = wedge(out, model.generator(_LETTER_GEN[letter]))
    return out


def _vec_to_form(v: FiniteVector, model: ContactModel) -> Form:
    alg = v.algebra
    out = Form.zero(model, v.degree)
    for c, label in zip(v.coeffs, alg.labels(v.degree)):
        if c:
            out = out + _word_to_form(label if label != "1" else "1", model).scale(c)
    return out


def _form_to_vec(f: Form, alg: FiniteGradedAlgebra) -> FiniteVector:
    """Read a constant-coefficient form back into CE coordinates."""
    coeffs = [_ZERO] * alg.dim(f.degree)
    pos = {label: i for i, label in enumerate(alg.labels(f.degree))}
    for idx, p in f.terms.items():
        sign, word = _sort_letters([_GEN_LETTER[i] for i in idx])
        coeffs[pos[_word_label(word)]] += sign * p.constant_value()
    return FiniteVector(alg, f.degree, coeffs)


_RUMIN_IDX = {"1": (), "a": (1,), "b": (2,), "ca": (0, 1), "cb": (0, 2), "cab": (0, 1, 2)}


def _form_to_rumin_vec(f: Form, alg: FiniteGradedAlgebra) -> FiniteVector:
    # The chosen subcomplex basis words c^a, c^b, c^a^b are single coframe
    # monomials with coefficient +1, so projection is a direct read-off.
    labels = alg.labels(f.degree)
    coeffs = [f.coefficient(_RUMIN_IDX[label]).constant_value() for label in labels]
    consumed = {_RUMIN_IDX[label] for label in labels}
    if any(idx not in consumed for idx in f.terms):
        raise DomainError(f"form is not in the invariant Rumin subspace: {f}")
    return FiniteVector(alg, f.degree, coeffs)


def heisenberg_rumin_model() -> FiniteGradedAlgebra:
    """The six-dimensional subcomplex 1; a, b; c^a, c^b; c^a^b with zero
    differential and the projected wedge as its product (computed through
    the symbolic operators, which preserve constant coefficients)."""
    model = _model3()
    basis = {0: ["1"], 1: ["a", "b"], 2: ["ca", "cb"], 3: ["cab"]}
    forms = {label: rumin.certify(_word_to_form(label, model)) for row in basis.values() for label in row}
    shell = FiniteGradedAlgebra(basis, {}, {}, name="heisenberg-rumin")  # for coordinates
    mu: dict = {}
    for u, fu in forms.items():
        for v, fv in forms.items():
            prod = rumin.m2(fu, fv).form
            if prod.is_zero():
                continue
            vec = _form_to_rumin_vec(prod, shell)
            row = {
                label: c
                for label, c in zip(shell.labels(vec.degree), vec.coeffs)
                if c
            }
            if row:
                mu[(u, v)] = row
    d: dict = {}
    for label, fe in forms.items():
        df = rumin.m1(fe).form
        if not df.is_zero():
            vec = _form_to_rumin_vec(df, shell)
            d[label] = {
                dst: c for dst, c in zip(shell.labels(vec.degree), vec.coeffs) if c
            }
    return FiniteGradedAlgebra(basis, d, mu, name="heisenberg-rumin")


@dataclass
class FiniteModelBundle:
    """The built-in finite model: the CE algebra, its Rumin subcomplex, the
    restricted deformation retract, and the inclusion as a cochain map."""

    ce: FiniteGradedAlgebra
    rumin: FiniteGradedAlgebra
    retract: RetractData
    inclusion: CochainMap


def _blocks_from_function(src: FiniteGradedAlgebra, dst: FiniteGradedAlgebra, fn, shift: int = 0):
    """Matrix per degree of a linear map src -> dst raising degree by
    `shift`, sampled on basis vectors."""
    blocks = {}
    for deg in src.degrees:
        cols = [list(fn(v).coeffs) for v in src.basis_vectors(deg)]
        blocks[deg] = linalg.from_columns(cols, dst.dim(deg + shift))
    return blocks


def _apply_blocks(blocks, dst: FiniteGradedAlgebra, shift: int = 0):
    def apply(v: FiniteVector) -> FiniteVector:
        block = blocks.get(v.degree)
        target = v.degree + shift
        if block is None:
            return dst.zero(target)
        return FiniteVector._make(dst, target, tuple(linalg.mat_vec(block, v.coeffs)))

    return apply


def heisenberg_ce_retract() -> FiniteModelBundle:
    """Restrict (inclusion, pi, gamma) from symbolic forms on H^3 to the
    constant-coefficient CE algebra; retract identities are verified on the
    full basis before returning.

    The three maps are sampled once through the symbolic operators and then
    applied as exact matrices, which keeps exhaustive transfer sweeps over
    all basis tuples cheap.
    """
    model = _model3()
    ce = heisenberg_ce_algebra()
    rm = heisenberg_rumin_model()

    def include_symbolic(b: FiniteVector) -> FiniteVector:
        total = Form.zero(model, b.degree)
        for c, label in zip(b.coeffs, rm.labels(b.degree)):
            if c:
                total = total + _word_to_form(label, model).scale(c)
        return _form_to_vec(total, ce)

    def project_symbolic(a: FiniteVector) -> FiniteVector:
        return _form_to_rumin_vec(rumin.pi(_vec_to_form(a, model)).form, rm)

    def homotopy_symbolic(a: FiniteVector) -> FiniteVector:
        return _form_to_vec(rumin.gamma(_vec_to_form(a, model)), ce)

    include = _apply_blocks(_blocks_from_function(rm, ce, include_symbolic), ce)
    project = _apply_blocks(_blocks_from_function(ce, rm, project_symbolic), rm)
    homotopy = _apply_blocks(_blocks_from_function(ce, ce, homotopy_symbolic, shift=-1), ce, shift=-1)

    retract = RetractData(
        d=ce.apply_d,
        mu=ce.mu_vec,
        h=homotopy,
        i=include,
        pi=project,
        b_d=rm.apply_d,
        name="heisenberg finite model",
    )
    issues = retract.verify(ce.all_basis_vectors(), rm.all_basis_vectors())
    if issues:
        raise ConstructionError("finite retract identities failed: " + "; ".join(issues))
    inclusion = CochainMap.from_function(rm, ce, include)
    return FiniteModelBundle(ce=ce, rumin=rm, retract=retract, inclusion=inclusion)
