"""Generic machinery for strongly homotopy associative structures.

Everything here is agnostic about the underlying graded vector space: an
element only needs a ``degree`` attribute, ``+``, ``scale``, ``is_zero``,
``zero_of_degree`` and exact equality.  Both the symbolic forms of
`ruminalg.forms` and the finite-dimensional vectors of `ruminalg.finite`
qualify.

Sign conventions (the single source of truth for the whole package):

* Moving graded objects past each other costs (-1)^(product of degrees).
  For a permutation s acting on homogeneous letters with given degrees, the
  Koszul sign is the product of (-1)^(deg_i * deg_j) over the inversion
  pairs i < j with s(i) > s(j).
* Applying a tensor word of operators (g_1 x ... x g_r) to elements costs,
  for each operator, (-1)^(deg(g) * sum of degrees of the elements consumed
  by operators to its left): an operator of odd degree anticommutes with the
  elements it jumps over.

Relation checkers return the would-be-zero residual element rather than a
boolean so that failures carry witnesses.
"""

from __future__ import annotations

from itertools import combinations

from .errors import DomainError

# An operator entry for apply_tensor_ops: (callable on a tuple, arity, degree).


def permutation_sign(perm) -> int:
    """Parity sign of a permutation given as a tuple (perm[i] = image of i)."""
    inv = 0
    k = len(perm)
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv & 1 else 1


def koszul_sign(perm, degrees) -> int:
    """Koszul sign of `perm` acting on homogeneous letters of the given
    degrees: product of (-1)^(degrees[i]*degrees[j]) over inversions."""
    if len(perm) != len(degrees):
        raise DomainError(f"permutation size {len(perm)} != degree count {len(degrees)}")
    sign = 1
    k = len(perm)
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j] and (degrees[i] & 1) and (degrees[j] & 1):
                sign = -sign
    return sign


def shuffles(p: int, q: int):
    """All permutations s of {0..p+q-1} that are increasing on the first p
    and the last q positions, as tuples with s[i] = image of position i.
    Ordered lexicographically by the image set of the first block; count
    is binomial(p+q, p)."""
    if p < 1 or q < 1:
        raise DomainError("shuffle block sizes must be positive")
    out = []
    positions = range(p + q)
    for first_block in combinations(positions, p):
        rest = [x for x in positions if x not in first_block]
        perm = list(first_block) + rest
        out.append(tuple(perm))
    return out


def shuffle_product(p: int, q: int, elements):
    """Signed sum of shuffled tensor words.

    Returns a list of (sign, word) pairs where `word` is a tuple of indices
    into `elements`: position r of the output word holds element word[r].
    The sign is sgn(s) times the Koszul sign of s on the element degrees, so
    e.g. for p = q = 1 the result is  x0 (x) x1  minus
    (-1)^(|x0||x1|) x1 (x) x0.
    """
    if len(elements) != p + q:
        raise DomainError(f"expected {p + q} elements, got {len(elements)}")
    degrees = [e.degree for e in elements]
    out = []
    for perm in shuffles(p, q):
        sign = permutation_sign(perm) * koszul_sign(perm, degrees)
        word = [0] * (p + q)
        for src, dst in enumerate(perm):
            word[dst] = src
        out.append((sign, tuple(word)))
    return out


def apply_tensor_ops(ops, elements):
    """Apply a tensor word of operators to consecutive blocks of elements.

    `ops` is a list of (callable, arity, degree) triples whose arities sum to
    len(elements); each callable receives its block as a tuple.  Returns
    (sign, outputs) where the Koszul sign collects, for every operator,
    (-1)^(op degree * total degree of the elements left of its block).
    """
    total = sum(arity for _, arity, _ in ops)
    if total != len(elements):
        raise DomainError(f"operator arities sum to {total}, got {len(elements)} elements")
    sign = 1
    outputs = []
    pos = 0
    seen_degree = 0
    for fn, arity, degree in ops:
        block = tuple(elements[pos : pos + arity])
        if (degree & 1) and (seen_degree & 1):
            sign = -sign
        outputs.append(fn(block))
        seen_degree += sum(e.degree for e in block)
        pos += arity
    return sign, tuple(outputs)


_IDENTITY_ENTRY = (lambda block: block[0], 1, 0)


def _identity_op():
    return _IDENTITY_ENTRY


class GradedOpSet:
    """Arity-indexed family of multilinear operators given as evaluators.

    `ops` maps arity k to a callable on k-tuples; `degree_fn(k)` declares the
    operator degree (2-k for product-type families, 1-k for morphism-type).
    Arities outside `ops` fall back to `zero_maker(target_degree, elements)`
    when given; otherwise they raise (arity shortfall).
    """

    def __init__(self, ops, degree_fn, zero_maker=None, name: str = ""):
        self.ops = dict(ops)
        self.degree_fn = degree_fn
        self.zero_maker = zero_maker
        self.name = name

    def degree(self, k: int) -> int:
        return self.degree_fn(k)

    def op(self, k: int):
        if k in self.ops:
            return self.ops[k]
        if self.zero_maker is not None:
            deg_fn = self.degree_fn
            maker = self.zero_maker

            def zero_op(elements, _k=k):
                target = sum(e.degree for e in elements) + deg_fn(_k)
                return maker(target, elements)

            return zero_op
        raise DomainError(f"{self.name or 'operator family'} has no arity-{k} operator")

    def __call__(self, k: int, elements):
        return self.op(k)(tuple(elements))

    def entry(self, k: int):
        """(callable, arity, degree) triple for apply_tensor_ops."""
        return (self.op(k), k, self.degree(k))

    def audit_homogeneity(self, k: int, sample_tuples):
        """Check |op_k(x_1..x_k)| = sum |x_i| + degree(k) on samples; returns
        a list of mismatch descriptions (empty when all pass)."""
        issues = []
        for elements in sample_tuples:
            out = self(k, elements)
            if out.is_zero():
                continue
            expected = sum(e.degree for e in elements) + self.degree(k)
            if out.degree != expected:
                issues.append(
                    f"arity {k}: output degree {out.degree}, expected {expected}"
                )
        return issues


def _add(acc, x):
    return x if acc is None else acc + x


def check_stasheff(mset: GradedOpSet, n: int, elements):
    """Residual of the n-th associativity-up-to-homotopy relation

        sum over r+s+t=n of (-1)^(r+st) m_{r+t+1} (1^r (x) m_s (x) 1^t)

    on the given n-tuple; zero for a genuine homotopy-associative family.
    """
    elements = tuple(elements)
    if len(elements) != n:
        raise DomainError(f"relation {n} needs an {n}-tuple, got {len(elements)}")
    residual = None
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - s - r
            word = [_identity_op()] * r + [mset.entry(s)] + [_identity_op()] * t
            sign, mids = apply_tensor_ops(word, elements)
            outer = mset(r + t + 1, mids)
            coeff = sign * (-1) ** (r + s * t)
            residual = _add(residual, outer.scale(coeff))
    return residual


def compositions(n: int, r: int):
    """All r-tuples of positive integers summing to n."""
    if r == 1:
        yield (n,)
        return
    for first in range(1, n - r + 2):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


def check_morphism(fset: GradedOpSet, mset: GradedOpSet, mbar: GradedOpSet, n: int, elements):
    """Residual of the n-th morphism relation for f: (A, m) -> (B, mbar):

        sum (-1)^(r+st) f_{r+t+1} (1^r (x) m_s (x) 1^t)
      - sum over decompositions i_1+..+i_r = n of
        (-1)^l mbar_r (f_{i_1} (x) ... (x) f_{i_r}),
        l = sum_j (r-j)(i_j - 1).
    """
    elements = tuple(elements)
    if len(elements) != n:
        raise DomainError(f"relation {n} needs an {n}-tuple, got {len(elements)}")
    residual = None
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - s - r
            word = [_identity_op()] * r + [mset.entry(s)] + [_identity_op()] * t
            sign, mids = apply_tensor_ops(word, elements)
            outer = fset(r + t + 1, mids)
            residual = _add(residual, outer.scale(sign * (-1) ** (r + s * t)))
    for r in range(1, n + 1):
        for comp in compositions(n, r):
            word = [fset.entry(i) for i in comp]
            sign, mids = apply_tensor_ops(word, elements)
            ell = sum((r - j) * (comp[j - 1] - 1) for j in range(1, r + 1))
            outer = mbar(r, mids)
            residual = _add(residual, outer.scale(-sign * (-1) ** ell))
    return residual


def shuffle_vanishing_residual(opset: GradedOpSet, p: int, q: int, elements):
    """Residual of op_{p+q} composed with the (p,q)-shuffle sum; zero is the
    graded-commutativity constraint distinguishing the commutative case."""
    elements = tuple(elements)
    signed_words = shuffle_product(p, q, elements)
    residual = None
    for sign, word in signed_words:
        value = opset(p + q, tuple(elements[i] for i in word))
        residual = _add(residual, value.scale(sign))
    return residual


class RetractData:
    """A deformation retract (i, pi, h) of a commutative differential graded
    algebra (A, d, mu) onto a subcomplex B.

    All fields are callables: d(a), mu(a, b), h(a) of degree -1, i(b), pi(a),
    and optionally b_d(b) (defaults to pi . d . i).  `verify` checks the
    retract identities on sample elements -- pi i = 1, i pi = 1 - dh - hd,
    both maps commuting with the differentials -- and must pass before the
    transfer will run.
    """

    def __init__(self, d, mu, h, i, pi, b_d=None, name: str = ""):
        self.d = d
        self.mu = mu
        self.h = h
        self.i = i
        self.pi = pi
        self.b_d = b_d if b_d is not None else (lambda b: pi(d(i(b))))
        self.name = name
        self.verified = False

    def verify(self, a_samples, b_samples):
        """Check the retract identities; returns issue strings (empty = ok)
        and records the outcome."""
        issues = []
        for a in a_samples:
            lhs = self.i(self.pi(a))
            rhs = a - self.d(self.h(a)) - self.h(self.d(a))
            if not (lhs - rhs).is_zero():
                issues.append(f"i pi != 1 - dh - hd on {a}")
            if not (self.pi(self.d(a)) - self.b_d(self.pi(a))).is_zero():
                issues.append(f"pi does not intertwine differentials on {a}")
        for b in b_samples:
            if not (self.pi(self.i(b)) - b).is_zero():
                issues.append(f"pi i != 1 on {b}")
            if not (self.d(self.i(b)) - self.i(self.b_d(b))).is_zero():
                issues.append(f"i does not intertwine differentials on {b}")
        self.verified = not issues
        return issues


def markl_transfer(retract: RetractData, max_arity: int):
    """Transferred homotopy structure on the subcomplex of a verified
    deformation retract, together with the quasi-isomorphism back to A.

    The evaluators realize the recursion

        psi_n = sum over s+t=n of (-1)^(s+1) mu(h psi_s (x) h psi_t),

    with h psi_1 = -1_A, and return the families

        m_1 = d,   m_k = pi psi_k i^(x k)      (k >= 2),
        f_1 = i,   f_k = -h psi_k i^(x k)      (k >= 2),

    defined through arity `max_arity` (beyond which requesting an operator
    raises).  Evaluation is memoized per tuple when elements are hashable,
    which makes exhaustive finite-model sweeps cheap.
    """
    if not retract.verified:
        raise DomainError("retract identities not verified; call RetractData.verify first")
    if max_arity < 2:
        raise DomainError("transfer needs max_arity >= 2")

    h, mu, i, pi, d = retract.h, retract.mu, retract.i, retract.pi, retract.d
    psi_cache: dict = {}

    def h_psi_entry(k: int):
        if k == 1:
            return (lambda block: block[0].scale(-1), 1, 0)
        return (lambda block, _k=k: h(psi(_k, block)), k, 1 - k)

    def psi(k: int, elements):
        try:
            key = (k, tuple(elements))
            hit = psi_cache.get(key)
        except TypeError:
            key = None
            hit = None
        if hit is not None:
            return hit
        total = None
        for s in range(1, k):
            t = k - s
            sign, (u, v) = apply_tensor_ops([h_psi_entry(s), h_psi_entry(t)], elements)
            term = mu(u, v).scale(sign * (-1) ** (s + 1))
            total = _add(total, term)
        if key is not None:
            psi_cache[key] = total
        return total

    def memoized(k: int, fn):
        cache: dict = {}

        def wrapped(block):
            try:
                key = (k, tuple(block))
                hash(key)
            except TypeError:
                return fn(block)
            if key not in cache:
                cache[key] = fn(block)
            return cache[key]

        return wrapped

    def m_op(k: int):
        if k == 1:
            return lambda block: retract.b_d(block[0])
        return memoized(k, lambda block, _k=k: pi(psi(_k, tuple(i(b) for b in block))))

    def f_op(k: int):
        if k == 1:
            return lambda block: i(block[0])
        return memoized(k, lambda block, _k=k: h(psi(_k, tuple(i(b) for b in block))).scale(-1))

    mset = GradedOpSet(
        {k: m_op(k) for k in range(1, max_arity + 1)},
        degree_fn=lambda k: 2 - k,
        name=f"transferred products{' (' + retract.name + ')' if retract.name else ''}",
    )
    fset = GradedOpSet(
        {k: f_op(k) for k in range(1, max_arity + 1)},
        degree_fn=lambda k: 1 - k,
        name=f"transferred morphism{' (' + retract.name + ')' if retract.name else ''}",
    )
    return mset, fset
