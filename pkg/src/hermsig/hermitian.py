"""Hermitian forms over (A, sigma) and their signatures at orderings.

The signature of a form at a non-nil ordering is computed in two explicit
steps: scale the Gram matrix on the left by Phi^(-1), then flatten the
k x k matrix over M_n(D) to a kn x kn theta-hermitian matrix over D and
diagonalize it by congruence.  With the reference form fixed as the
one-dimensional form on Phi itself, the scaling sends the reference to the
identity matrix, so no further sign normalization is needed and the
signature is the plain count of positive minus negative diagonal entries.
At nil orderings every signature is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FieldMismatch,
    NilOrdering,
    NotHermitian,
    NotInvertible,
    NotSymmetric,
)
from .algebras import (
    BASE,
    QUADRATIC,
    QUATERNION,
    AlgebraElement,
    AlgebraWithInvolution,
    DElement,
    DivisionAlgebraDesc,
    mat_identity,
    mat_mul,
)
from .orderings import FieldElement, OrderingHandle, list_orderings, sign_of
from .qforms import QuadraticForm, diagonalize_symmetric, tensor


# ---------------------------------------------------------------------------
# hermitian congruence diagonalization over (D, theta)


def _is_hermitian_d(B) -> bool:
    n = len(B)
    for i in range(n):
        for j in range(n):
            if not (B[i][j] - B[j][i].conj()).is_zero:
                return False
    return True


def _trace_candidates(desc: DivisionAlgebraDesc):
    return desc.basis()


def diagonalize_hermitian(desc: DivisionAlgebraDesc, B):
    """Congruence diagonalization of a theta-hermitian matrix over D.

    Returns (G, d) with theta(G)^t B G = diag(d); the entries d_i lie in
    Sym(D, theta) = F.  Pivots are always field scalars because hermitian
    diagonal entries have no non-identity components, so this works even
    when D has zero divisors.  When every remaining diagonal entry is zero
    but some off-diagonal entry beta is not, a column of the off-diagonal
    pair is added with a basis multiplier c chosen so that the new diagonal
    entry beta*c + theta(beta*c) is a nonzero field element.
    """
    ell = len(B)
    if any(len(row) != ell for row in B):
        raise NotHermitian("matrix is not square")
    B = [list(row) for row in B]
    if not _is_hermitian_d(B):
        raise NotHermitian()
    G = mat_identity(desc, ell)

    def col_row_op(t, r, c):
        # col_t += col_r * c and row_t += theta(c) * row_r
        cc = c.conj()
        for i in range(ell):
            v = B[i][r]
            if not v.is_zero:
                B[i][t] = B[i][t] + v * c
        for j in range(ell):
            v = B[r][j]
            if not v.is_zero:
                B[t][j] = B[t][j] + cc * v
        for i in range(ell):
            v = G[i][r]
            if not v.is_zero:
                G[i][t] = G[i][t] + v * c

    def swap(r, s):
        for i in range(ell):
            B[i][r], B[i][s] = B[i][s], B[i][r]
        B[r], B[s] = B[s], B[r]
        for i in range(ell):
            G[i][r], G[i][s] = G[i][s], G[i][r]

    field = desc.field
    diag: list[FieldElement] = []
    for r in range(ell):
        if B[r][r].is_zero:
            s_diag = next(
                (s for s in range(r + 1, ell) if not B[s][s].is_zero), None
            )
            if s_diag is not None:
                swap(r, s_diag)
            else:
                off = next(
                    (
                        (s, t)
                        for s in range(r, ell)
                        for t in range(s + 1, ell)
                        if not B[s][t].is_zero
                    ),
                    None,
                )
                if off is None:
                    diag.extend(field.zero() for _ in range(r, ell))
                    break
                s, t = off
                beta = B[s][t]
                c = next(
                    cand
                    for cand in _trace_candidates(desc)
                    if not (beta * cand + (beta * cand).conj()).is_zero
                )
                col_row_op(s, t, c)
                if s != r:
                    swap(r, s)
        pivot = B[r][r]
        if not pivot.is_scalar:
            raise AssertionError("hermitian diagonal entry is not central")
        pval = pivot.scalar_part()
        pinv = pval.inverse()
        for t in range(r + 1, ell):
            if not B[r][t].is_zero:
                col_row_op(t, r, -(B[r][t] * pinv))
        diag.append(pval)
    return [tuple(row) for row in G], tuple(diag)


# ---------------------------------------------------------------------------
# block flattening: M_k(M_n(D)) -> M_kn(D)


def flatten_blocks(A: AlgebraWithInvolution, blocks):
    k = len(blocks)
    n = A.n
    out = [[None] * (k * n) for _ in range(k * n)]
    for i in range(k):
        for j in range(k):
            entries = blocks[i][j]
            for r in range(n):
                for c in range(n):
                    out[i * n + r][j * n + c] = entries[r][c]
    return out


def unflatten_matrix(A: AlgebraWithInvolution, M, k: int):
    n = A.n
    return [
        [
            A.element(
                [[M[i * n + r][j * n + c] for c in range(n)] for r in range(n)]
            )
            for j in range(k)
        ]
        for i in range(k)
    ]


# ---------------------------------------------------------------------------
# forms


class HermitianForm:
    """Gram-matrix presentation of a hermitian form over (A, sigma)."""

    __slots__ = ("owner", "gram", "_flat")

    def __init__(self, owner: AlgebraWithInvolution, gram, _trusted: bool = False):
        gram = tuple(tuple(row) for row in gram)
        k = len(gram)
        if any(len(row) != k for row in gram):
            raise NotHermitian("Gram matrix is not square")
        if not _trusted:
            for row in gram:
                for e in row:
                    if e.owner is not owner:
                        raise FieldMismatch()
            for i in range(k):
                for j in range(k):
                    if gram[i][j].is_zero and gram[j][i].is_zero:
                        continue
                    if owner.involution(gram[j][i]) != gram[i][j]:
                        raise NotHermitian()
        self.owner = owner
        self.gram = gram
        self._flat = None

    @property
    def dim(self) -> int:
        return len(self.gram)

    def flattened_diagonal(self) -> tuple[FieldElement, ...]:
        """Diagonal of the scaled and flattened form; cached."""
        if self._flat is None:
            A = self.owner
            zero_block = [[A.desc.zero()] * A.n for _ in range(A.n)]
            blocks = [
                [
                    zero_block
                    if e.is_zero
                    else mat_mul(A._phi_inv, [list(r) for r in e.entries])
                    for e in row
                ]
                for row in self.gram
            ]
            flat = flatten_blocks(A, blocks)
            _, d = diagonalize_hermitian(A.desc, flat)
            self._flat = d
        return self._flat

    def rank(self) -> int:
        return sum(1 for d in self.flattened_diagonal() if not d.is_zero)

    @property
    def is_nonsingular(self) -> bool:
        return self.rank() == self.dim * self.owner.n

    def is_diagonal(self) -> bool:
        return all(
            self.gram[i][j].is_zero
            for i in range(self.dim)
            for j in range(self.dim)
            if i != j
        )

    def __repr__(self) -> str:
        return f"HermitianForm<{self.dim} over n={self.owner.n}>"


def diagonal_form(A: AlgebraWithInvolution, entries) -> HermitianForm:
    """The diagonal form on the given symmetric entries."""
    elems = []
    for e in entries:
        if isinstance(e, (int, Fraction)):
            e = A.field.from_rational(e)
        if isinstance(e, FieldElement):
            e = A.scalar(e)
        elif not A.is_symmetric(e):
            raise NotHermitian("diagonal entry is not symmetric")
        elems.append(e)
    k = len(elems)
    gram = [
        [elems[i] if i == j else A.zero() for j in range(k)] for i in range(k)
    ]
    return HermitianForm(A, gram, _trusted=True)


def form_direct_sum(h1: HermitianForm, h2: HermitianForm) -> HermitianForm:
    if h1.owner is not h2.owner:
        raise FieldMismatch()
    A = h1.owner
    k1, k2 = h1.dim, h2.dim
    zero = A.zero()
    gram = [
        [
            h1.gram[i][j]
            if i < k1 and j < k1
            else (h2.gram[i - k1][j - k1] if i >= k1 and j >= k1 else zero)
            for j in range(k1 + k2)
        ]
        for i in range(k1 + k2)
    ]
    return HermitianForm(A, gram, _trusted=True)


def form_scale(u: FieldElement, h: HermitianForm) -> HermitianForm:
    """The form <u> tensor h."""
    return HermitianForm(
        h.owner, [[e * u for e in row] for row in h.gram], _trusted=True
    )


def form_neg(h: HermitianForm) -> HermitianForm:
    return HermitianForm(
        h.owner, [[-e for e in row] for row in h.gram], _trusted=True
    )


def form_tensor_qf(q: QuadraticForm, h: HermitianForm) -> HermitianForm:
    """Tensor of a diagonal quadratic form with a hermitian form."""
    if q.owner != h.owner.field:
        raise FieldMismatch()
    out = None
    for u in q.diag:
        piece = form_scale(u, h)
        out = piece if out is None else form_direct_sum(out, piece)
    if out is None:
        raise ValueError("empty quadratic form")
    return out


def form_repeat(ell: int, h: HermitianForm) -> HermitianForm:
    """Orthogonal sum of ell copies of h, built in one pass."""
    A = h.owner
    k = h.dim
    zero = A.zero()
    gram = [
        [
            h.gram[i % k][j % k] if i // k == j // k else zero
            for j in range(ell * k)
        ]
        for i in range(ell * k)
    ]
    return HermitianForm(A, gram, _trusted=True)


def hyperbolic(a: AlgebraElement) -> HermitianForm:
    return diagonal_form(a.owner, [a, -a])


def congruence_transform(h: HermitianForm, G) -> HermitianForm:
    """The form with Gram sigma(G)^t * gram * G for G over A."""
    A = h.owner
    k = h.dim
    Gs = [[A.involution(G[j][i]) for j in range(k)] for i in range(k)]
    prod = [
        [
            sum(
                (
                    Gs[i][a] * h.gram[a][b] * G[b][j]
                    for a in range(k)
                    for b in range(k)
                ),
                A.zero(),
            )
            for j in range(k)
        ]
        for i in range(k)
    ]
    return HermitianForm(A, prod, _trusted=True)


def diagonalize_over_algebra(h: HermitianForm) -> tuple[AlgebraElement, ...]:
    """Diagonal entries of a congruence diagonalization over A itself.

    Pivots must be invertible in A, which can fail even for nonsingular
    forms when A is not a division algebra; NotInvertible then signals the
    caller to retry with a different presentation.
    """
    A = h.owner
    k = h.dim
    B = [list(row) for row in h.gram]

    def swap(r, s):
        for i in range(k):
            B[i][r], B[i][s] = B[i][s], B[i][r]
        B[r], B[s] = B[s], B[r]

    for r in range(k):
        pivot_col = None
        for s in range(r, k):
            if B[s][s].is_zero:
                continue
            try:
                A.invert(B[s][s])
            except NotInvertible:
                continue
            pivot_col = s
            break
        if pivot_col is None:
            if all(
                B[s][t].is_zero for s in range(r, k) for t in range(r, k)
            ):
                break  # radical
            raise NotInvertible("no invertible diagonal pivot")
        swap(r, pivot_col)
        pinv = A.invert(B[r][r])
        for t in range(r + 1, k):
            if B[r][t].is_zero:
                continue
            c = -(pinv * B[r][t])
            cs = A.involution(c)
            for i in range(k):
                if not B[i][r].is_zero:
                    B[i][t] = B[i][t] + B[i][r] * c
            for j in range(k):
                if not B[r][j].is_zero:
                    B[t][j] = B[t][j] + cs * B[r][j]
    return tuple(B[i][i] for i in range(k))


# ---------------------------------------------------------------------------
# nil orderings, local degrees, signatures


def nil_orderings(A: AlgebraWithInvolution) -> tuple[OrderingHandle, ...]:
    """Orderings at which every signature over (A, sigma) vanishes.

    Base kind: none.  Quadratic kind d: the orderings with d > 0, where the
    center splits.  Quaternion kind (a,b): the orderings where a > 0 or
    b > 0, where D splits and the involution type flips.
    """
    if A._nil is None:
        kind = A.desc.kind
        if kind == BASE:
            A._nil = ()
        elif kind == QUADRATIC:
            A._nil = tuple(
                P
                for P in list_orderings(A.field)
                if sign_of(A.desc.d, P) > 0
            )
        else:
            A._nil = tuple(
                P
                for P in list_orderings(A.field)
                if sign_of(A.desc.a, P) > 0 or sign_of(A.desc.b, P) > 0
            )
    return A._nil


@dataclass(frozen=True)
class LocalDegree:
    value: int
    nil: bool


def local_degree_nP(A: AlgebraWithInvolution, P: OrderingHandle) -> LocalDegree:
    """Matrix size of A at the real closure of P, with a nil flag."""
    nil = P in nil_orderings(A)
    if A.desc.kind == QUATERNION and nil:
        return LocalDegree(2 * A.n, True)
    return LocalDegree(A.n, nil)


def signature(h: HermitianForm, P: OrderingHandle) -> int:
    """Signature of h at P; zero at nil orderings."""
    A = h.owner
    if P.owner != A.field:
        raise FieldMismatch()
    if P in nil_orderings(A):
        return 0
    return sum(sign_of(d, P) for d in h.flattened_diagonal())


@dataclass(frozen=True)
class SignatureVector:
    algebra: AlgebraWithInvolution
    values: tuple[int, ...]

    def __post_init__(self):
        nil = set(nil_orderings(self.algebra))
        for P, v in zip(list_orderings(self.algebra.field), self.values):
            if P in nil and v != 0:
                raise AssertionError("nonzero signature at a nil ordering")

    def to_report(self) -> list[dict]:
        nil = set(nil_orderings(self.algebra))
        return [
            {"ordering_index": P.root_index, "nil": P in nil, "signature": v}
            for P, v in zip(list_orderings(self.algebra.field), self.values)
        ]


def signature_vector(h: HermitianForm) -> SignatureVector:
    A = h.owner
    values = tuple(signature(h, P) for P in list_orderings(A.field))
    kn = h.dim * A.n
    for P, v in zip(list_orderings(A.field), values):
        if abs(v) > kn * local_degree_nP(A, P).value:
            raise AssertionError("signature exceeds the rank bound")
    return SignatureVector(A, values)


# ---------------------------------------------------------------------------
# trace transfer to a quadratic form over F (division case, n = 1)


def trace_transfer(h: HermitianForm) -> QuadraticForm:
    """The quadratic form x -> h(x, x) for a form over (D, theta)."""
    A = h.owner
    if A.n != 1:
        raise ValueError("trace transfer applies to forms over (D, theta) only")
    field = A.field
    _, d = diagonalize_hermitian(
        A.desc, [[e.entries[0][0] for e in row] for row in h.gram]
    )
    diag = QuadraticForm(field, d)
    kind = A.desc.kind
    if kind == BASE:
        return diag
    if kind == QUADRATIC:
        carrier = QuadraticForm(field, [field.one(), -A.desc.d])
    else:
        a, b = A.desc.a, A.desc.b
        carrier = QuadraticForm(field, [field.one(), -a, -b, a * b])
    return tensor(carrier, diag)


# ---------------------------------------------------------------------------
# the star pairing


def _center_basis(A: AlgebraWithInvolution) -> list[AlgebraElement]:
    """Basis of A as a Z(A)-space, as single-entry matrices."""
    out = []
    dim_d = 1 if A.desc.kind == QUADRATIC else A.desc.dim
    for r in range(A.n):
        for c in range(A.n):
            for t in range(dim_d):
                entries = [
                    [A.desc.zero() for _ in range(A.n)] for _ in range(A.n)
                ]
                comps = [A.field.zero()] * A.desc.dim
                comps[t] = A.field.one()
                entries[r][c] = DElement(A.desc, tuple(comps))
                out.append(A.element(entries))
    return out


def _star_gram_diagonal(h: HermitianForm, b: AlgebraElement):
    """Diagonal entries of (h * <b>), a form over (Z(A), iota).

    The pairing of x = (x_1..x_k) and y = (y_1..y_k) in A^k is
    sum_ij Trd(sigma(x_i) * C_ij * y_j * b); restricted to diagonal forms
    this is the orthogonal sum of the one-element pairings.
    """
    A = h.owner
    basis = _center_basis(A)
    k = h.dim
    sigmas = [A.involution(e) for e in basis]
    # full index set: (module slot, basis element)
    idx = [(i, e) for i in range(k) for e in range(len(basis))]
    N = len(idx)
    gram = [[None] * N for _ in range(N)]
    # cache C_ij * f * b
    mid = {}
    for i in range(k):
        for j in range(k):
            if h.gram[i][j].is_zero:
                continue
            for f in range(len(basis)):
                mid[(i, j, f)] = A.multiply(
                    h.gram[i][j], A.multiply(basis[f], b)
                )
    zero = A.zero()
    for u, (i, e) in enumerate(idx):
        for v, (j, f) in enumerate(idx):
            m = mid.get((i, j, f))
            if m is None:
                val = zero
            else:
                val = A.multiply(sigmas[e], m)
            gram[u][v] = A.reduced_trace(val)
    if A.desc.kind == QUADRATIC:
        for u in range(N):
            for v in range(N):
                if not (gram[u][v] - gram[v][u].conj()).is_zero:
                    raise AssertionError("star pairing Gram is not hermitian")
        _, d = diagonalize_hermitian(A.desc, gram)
        return d
    # first kind: entries are field scalars and the Gram is symmetric
    fgram = [[e.scalar_part() for e in row] for row in gram]
    for u in range(N):
        for v in range(N):
            if fgram[u][v] != fgram[v][u]:
                raise AssertionError("star pairing Gram is not symmetric")
    _, d = diagonalize_symmetric(A.field, fgram)
    return d


def star_pairing(a: AlgebraElement, b: AlgebraElement) -> QuadraticForm:
    """Diagonalization of <a> * <b>, the form (x,y) -> Trd(sigma(x) a y b).

    Both arguments must be symmetric units.  The result is presented as a
    diagonal form over F of dimension dim_Z(A) A; in the quadratic-kind case
    the underlying form is iota-hermitian over Z(A) and the diagonal entries
    are its field coefficients.
    """
    A = a.owner
    if not A.is_symmetric(a) or not A.is_symmetric(b):
        raise NotSymmetric()
    try:
        A.invert(a)
        A.invert(b)
    except NotInvertible:
        raise NotInvertible("star pairing needs invertible arguments") from None
    h = diagonal_form(A, [a])
    d = _star_gram_diagonal(h, b)
    return QuadraticForm(A.field, d)


def star_pairing_form(h: HermitianForm, b: AlgebraElement) -> QuadraticForm:
    """Diagonalization of h * <b> for a hermitian form h."""
    A = h.owner
    if not A.is_symmetric(b):
        raise NotSymmetric()
    d = _star_gram_diagonal(h, b)
    return QuadraticForm(A.field, d)


# ---------------------------------------------------------------------------
# maximal signatures


def random_symmetric_unit(A: AlgebraWithInvolution, rng, height: int = 3) -> AlgebraElement:
    """A random invertible element of Sym(A, sigma), by rejection."""
    while True:
        entries = [
            [
                DElement(
                    A.desc,
                    tuple(
                        A.field.element(
                            [
                                Fraction(rng.randint(-height, height))
                                for _ in range(A.field.degree)
                            ]
                        )
                        for _ in range(A.desc.dim)
                    ),
                )
                for _ in range(A.n)
            ]
            for _ in range(A.n)
        ]
        x = A.element(entries)
        s = x + A.involution(x)
        if s.is_zero:
            continue
        try:
            A.invert(s)
        except NotInvertible:
            continue
        return s


def max_signature_mP(
    A: AlgebraWithInvolution, P: OrderingHandle, trials: int = 50, rng=None
) -> tuple[int, AlgebraElement]:
    """The maximal one-dimensional signature at P, with an explicit witness.

    The witness is Phi itself: the scaling step sends it to the identity
    matrix, which is positive definite, so its signature is the local degree.
    Randomized trials double-check that sampled symmetric units never exceed
    that value.
    """
    if P in nil_orderings(A):
        raise NilOrdering()
    n_p = local_degree_nP(A, P).value
    witness = A.phi_element()
    achieved = signature(diagonal_form(A, [witness]), P)
    if achieved != n_p:
        raise AssertionError("witness signature does not reach the local degree")
    if rng is not None:
        for _ in range(trials):
            s = random_symmetric_unit(A, rng)
            v = signature(diagonal_form(A, [s]), P)
            if abs(v) > n_p:
                raise AssertionError("sampled signature exceeds the local degree")
    return n_p, witness
