"""Positive cones on (A, sigma) and certified membership.

At each non-nil ordering the two positive cones are the images of the
positive semidefinite matrices under scaling by Phi, one per orientation.
Membership is decided by diagonalizing the scaled element and checking the
signs of the diagonal; the transform and diagonal form the certificate.
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
    OrderingDoesNotRestrict,
)
from .algebras import (
    AlgebraElement,
    AlgebraWithInvolution,
    DElement,
    DivisionAlgebraDesc,
    extend_scalars,
    mat_inv,
    mat_mul,
    mat_theta_t,
    push_algebra_element,
)
from .hermitian import (
    _is_hermitian_d,
    diagonalize_hermitian,
    nil_orderings,
)
from .orderings import FieldElement, FieldEmbedding, OrderingHandle, list_orderings, sign_of


@dataclass(frozen=True)
class PositiveConeHandle:
    algebra: AlgebraWithInvolution
    ordering: OrderingHandle
    orientation: int

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.ordering in nil_orderings(self.algebra):
            raise NilOrdering()

    def __repr__(self) -> str:
        s = "+" if self.orientation == 1 else "-"
        return f"PositiveConeHandle(P#{self.ordering.root_index}, {s})"


@dataclass(frozen=True)
class ConeWitness:
    """Certificate: theta(G)^t (eps Phi^-1 b) G = diag with entries >= 0 at P."""

    transform: tuple
    diagonal: tuple[FieldElement, ...]

    def reconstruct(self, cone: PositiveConeHandle) -> AlgebraElement:
        """Rebuild the certified element from the transform and diagonal."""
        A = cone.algebra
        desc = A.desc
        G = [list(row) for row in self.transform]
        g_inv = mat_inv(G)
        diag = [
            [
                desc.from_field(self.diagonal[i]) if i == j else desc.zero()
                for j in range(len(self.diagonal))
            ]
            for i in range(len(self.diagonal))
        ]
        inner = mat_mul(mat_theta_t(g_inv), mat_mul(diag, g_inv))
        scaled = mat_mul([list(r) for r in A.phi], inner)
        elt = A.element(scaled)
        return elt * Fraction(cone.orientation)


def psd_membership(
    desc: DivisionAlgebraDesc, B, P: OrderingHandle
) -> tuple[bool, ConeWitness | None]:
    """Positive semidefiniteness of a hermitian matrix over (D, theta) at P."""
    if P.owner != desc.field:
        raise FieldMismatch()
    B = [list(row) for row in B]
    if not _is_hermitian_d(B):
        raise NotHermitian()
    G, d = diagonalize_hermitian(desc, B)
    if all(sign_of(x, P) >= 0 for x in d):
        return True, ConeWitness(tuple(tuple(r) for r in G), d)
    return False, None


def cone_membership(
    b: AlgebraElement, cone: PositiveConeHandle
) -> tuple[bool, ConeWitness | None]:
    """Membership of a symmetric element, with a witness on success."""
    A = cone.algebra
    if b.owner is not A:
        raise FieldMismatch()
    if not A.is_symmetric(b):
        raise NotSymmetric()
    scaled = mat_mul(
        A._phi_inv, [list(row) for row in (b * Fraction(cone.orientation)).entries]
    )
    return psd_membership(A.desc, scaled, cone.ordering)


def list_positive_cones(A: AlgebraWithInvolution) -> tuple[PositiveConeHandle, ...]:
    """Both orientations over every non-nil ordering, in root order."""
    nil = set(nil_orderings(A))
    out = []
    for P in list_orderings(A.field):
        if P in nil:
            continue
        out.append(PositiveConeHandle(A, P, 1))
        out.append(PositiveConeHandle(A, P, -1))
    return tuple(out)


def project_pi(cone: PositiveConeHandle) -> OrderingHandle:
    return cone.ordering


def harrison_sigma(A: AlgebraWithInvolution, elements) -> tuple[PositiveConeHandle, ...]:
    """Cones containing all the given symmetric elements."""
    elements = list(elements)
    for a in elements:
        if not A.is_symmetric(a):
            raise NotSymmetric()
    return tuple(
        cone
        for cone in list_positive_cones(A)
        if all(cone_membership(a, cone)[0] for a in elements)
    )


# ---------------------------------------------------------------------------
# deterministic sampling of cone members


def random_field_nonneg(field, P: OrderingHandle, rng, height: int = 4, strict: bool = False):
    while True:
        x = field.element(
            [Fraction(rng.randint(-height, height)) for _ in range(field.degree)]
        )
        s = sign_of(x, P)
        if s == 0:
            if strict:
                continue
            return x
        return x if s > 0 else -x


def random_invertible_d_matrix(desc: DivisionAlgebraDesc, n: int, rng, height: int = 2):
    while True:
        M = [
            [
                DElement(
                    desc,
                    tuple(
                        desc.field.element(
                            [
                                Fraction(rng.randint(-height, height))
                                for _ in range(desc.field.degree)
                            ]
                        )
                        for _ in range(desc.dim)
                    ),
                )
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        try:
            mat_inv(M)
        except NotInvertible:
            continue
        return M


def sample_cone_member(
    cone: PositiveConeHandle, rng, height: int = 2, invertible: bool = False
) -> AlgebraElement:
    """eps * Phi * theta(G)^t diag(u) G for random G and P-nonnegative u."""
    A = cone.algebra
    desc = A.desc
    G = random_invertible_d_matrix(desc, A.n, rng, height)
    us = [
        random_field_nonneg(A.field, cone.ordering, rng, strict=invertible)
        for _ in range(A.n)
    ]
    if not invertible and us and rng.random() < 0.3:
        us[rng.randrange(len(us))] = A.field.zero()
    diag = [
        [desc.from_field(us[i]) if i == j else desc.zero() for j in range(A.n)]
        for i in range(A.n)
    ]
    inner = mat_mul(mat_theta_t(G), mat_mul(diag, G))
    elt = A.element(mat_mul([list(r) for r in A.phi], inner))
    return elt * Fraction(cone.orientation)


def sample_symmetric(A: AlgebraWithInvolution, rng, height: int = 3) -> AlgebraElement:
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
    return x + A.involution(x)


# ---------------------------------------------------------------------------
# sampled axiom checking


def cone_axioms_check(
    cone: PositiveConeHandle,
    samples,
    scalars,
    membership=None,
) -> dict:
    """Check the prepositive-cone axioms on the sampled sets.

    ``samples`` are symmetric elements; members among them (plus the
    oriented Phi) drive the closure checks.  ``membership`` may replace the
    real decision procedure, which the negative controls use.
    """
    A = cone.algebra
    P = cone.ordering
    if membership is None:
        membership = lambda b: cone_membership(b, cone)[0]
    samples = list(samples)
    for s in samples:
        if not A.is_symmetric(s):
            raise NotSymmetric()
    phi_oriented = A.phi_element() * Fraction(cone.orientation)
    members = [s for s in samples if membership(s)]
    members.append(phi_oriented)
    nonzero_members = [m for m in members if not m.is_zero]
    transforms = samples[:6] + [
        a * b for a, b in zip(samples[:4], samples[1:5])
    ]

    report: dict = {}

    p1_ok = membership(A.zero()) and bool(members)
    report["P1"] = {"pass": bool(p1_ok), "checked": 1, "violations": 0 if p1_ok else 1}

    # pair each member with a cyclic partner: linear in the sample size
    viol = 0
    checked = 0
    for i, m1 in enumerate(members):
        m2 = members[(i * 7 + 1) % len(members)]
        checked += 1
        if not membership(m1 + m2):
            viol += 1
    report["P2"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    viol = 0
    checked = 0
    if transforms:
        for i, m in enumerate(nonzero_members):
            a = transforms[i % len(transforms)]
            checked += 1
            if not membership(A.involution(a) * m * a):
                viol += 1
    report["P3"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    viol = 0
    checked = 0
    probe = nonzero_members[:20]
    for u in scalars:
        checked += 1
        stays = all(membership(m * u) for m in probe)
        if stays != (sign_of(u, P) >= 0):
            viol += 1
    report["P4"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    viol = 0
    checked = 0
    for m in nonzero_members:
        checked += 1
        if membership(-m):
            viol += 1
    report["P5"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    report["pass"] = all(report[k]["pass"] for k in ("P1", "P2", "P3", "P4", "P5"))
    return report


# ---------------------------------------------------------------------------
# extension along an ordered field embedding


def extend_cone(
    emb: FieldEmbedding,
    cone: PositiveConeHandle,
    Q: OrderingHandle,
    samples: int = 20,
    rng=None,
) -> tuple[PositiveConeHandle, dict]:
    """The cone over Q on the scalar extension, with a containment report."""
    A = cone.algebra
    if emb.src != A.field or Q.owner != emb.dst:
        raise FieldMismatch()
    if emb.restrict(Q) != cone.ordering:
        raise OrderingDoesNotRestrict()
    AL = extend_scalars(A, emb)
    extended = PositiveConeHandle(AL, Q, cone.orientation)
    contained = 0
    checked = 0
    if rng is not None:
        for _ in range(samples):
            b = sample_cone_member(cone, rng)
            checked += 1
            if cone_membership(push_algebra_element(b, emb, AL), extended)[0]:
                contained += 1
    report = {
        "samples": checked,
        "contained": contained,
        "pass": contained == checked,
    }
    return extended, report
