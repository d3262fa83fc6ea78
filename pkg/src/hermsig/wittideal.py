"""The signature kernel as an m-ideal, with certified membership.

A form h lies in the kernel module over a cone exactly when its signature
at the cone's ordering vanishes; that is the decision procedure.  The
constructive side produces witnesses: a quadratic form q with nonzero
signature such that q tensor h matches a balanced diagonal form whose
entries are invertible cone members.  Witness isometries are evidenced by
rank plus signatures at every ordering, which is labeled as evidence and
never claimed to be a full isometry proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ExpectedNPMember,
    NotInvertible,
    NotSymmetric,
    SingularForm,
)
from .algebras import AlgebraElement
from .cones import PositiveConeHandle, cone_membership, sample_cone_member
from .hermitian import (
    HermitianForm,
    diagonal_form,
    diagonalize_hermitian,
    form_direct_sum,
    form_repeat,
    form_scale,
    form_tensor_qf,
    signature,
    signature_vector,
    star_pairing,
    star_pairing_form,
)
from .orderings import OrderingHandle, sign_of
from .qforms import QuadraticForm, signature_qf


def in_IP(q: QuadraticForm, P: OrderingHandle) -> bool:
    """Membership in the Witt-ring ideal of forms with zero signature at P."""
    return signature_qf(q, P) == 0


def in_NP(h: HermitianForm, cone: PositiveConeHandle) -> bool:
    """Membership in the kernel module: zero signature at the cone's ordering."""
    return signature(h, cone.ordering) == 0


@dataclass(frozen=True)
class ZWitness:
    q: QuadraticForm
    a_list: tuple[AlgebraElement, ...]
    b_list: tuple[AlgebraElement, ...]
    evidence: dict


@dataclass(frozen=True)
class NotFound:
    bound: int


def _balanced_form(cone: PositiveConeHandle, a_list, b_list) -> HermitianForm:
    A = cone.algebra
    return diagonal_form(A, list(a_list) + [-b for b in b_list])


def _isometry_evidence(left: HermitianForm, right: HermitianForm) -> dict:
    """Rank and per-ordering signature agreement; necessary conditions only."""
    lv = signature_vector(left).values
    rv = signature_vector(right).values
    return {
        "rank_left": left.rank(),
        "rank_right": right.rank(),
        "signatures_left": list(lv),
        "signatures_right": list(rv),
        "match": left.rank() == right.rank() and lv == rv,
    }


def sylvester_reduction(
    h: HermitianForm, a: AlgebraElement, cone: PositiveConeHandle
):
    """Reduce h against an invertible cone member a.

    Returns (q, u_list, v_list, evidence) where q is the diagonalization of
    <a> * <a>, the u's and v's are the positive entries read off the
    diagonalization of h * <a> split by sign at the cone's ordering, and the
    evidence records rank and all-orderings signature agreement of
    q tensor h against (<u_1..u_r> perp <-v_1..-v_s>) tensor <a>.
    """
    A = h.owner
    P = cone.ordering
    if not h.is_nonsingular:
        raise SingularForm()
    if not A.is_symmetric(a):
        raise NotSymmetric()
    A.invert(a)  # raises NotInvertible on non-units
    q = star_pairing(a, a)
    paired = star_pairing_form(h, a)
    u_list, v_list = [], []
    for entry in paired.diag:
        s = sign_of(entry, P)
        if s > 0:
            u_list.append(entry)
        elif s < 0:
            v_list.append(-entry)
        else:
            raise AssertionError("nonsingular pairing produced a null entry")
    left = form_tensor_qf(q, h)
    right = diagonal_form(
        A, [u * a for u in u_list] + [-(v * a) for v in v_list]
    )
    evidence = _isometry_evidence(left, right)
    return q, tuple(u_list), tuple(v_list), evidence


def _quick_balanced_witness(h, cone):
    """Split a diagonal form with invertible entries into cone members.

    Succeeds exactly when every diagonal entry lies in the cone or its
    negative and the two counts agree; then q = <1> works.
    """
    A = cone.algebra
    if not h.is_diagonal():
        return None
    members, antimembers = [], []
    for i in range(h.dim):
        e = h.gram[i][i]
        try:
            A.invert(e)
        except NotInvertible:
            return None
        if cone_membership(e, cone)[0]:
            members.append(e)
        elif cone_membership(-e, cone)[0]:
            antimembers.append(-e)
        else:
            return None
    if len(members) != len(antimembers):
        return None
    q = QuadraticForm(A.field, [A.field.one()])
    right = _balanced_form(cone, members, antimembers)
    evidence = _isometry_evidence(h, right)
    if not evidence["match"]:
        return None
    return ZWitness(q, tuple(members), tuple(antimembers), evidence)


def find_Z_witness(
    h: HermitianForm, cone: PositiveConeHandle, search_bound: int = 8, rng=None
):
    """Search for a balanced-diagonal witness for a kernel member.

    Tries the direct split with q = <1> first (after a division-ring
    diagonalization when n = 1), then Sylvester reductions against Phi and
    random cone members drawn from a bounded pool.  A NotFound result is
    not a disproof.
    """
    A = cone.algebra
    if not h.is_nonsingular:
        raise SingularForm()
    if signature(h, cone.ordering) != 0:
        raise ExpectedNPMember()
    w = _quick_balanced_witness(h, cone)
    if w is not None:
        return w
    if A.n == 1:
        # over a division ring the form always diagonalizes with F-entries
        _, d = diagonalize_hermitian(
            A.desc, [[e.entries[0][0] for e in row] for row in h.gram]
        )
        diag = diagonal_form(A, [A.scalar(x) for x in d])
        w = _quick_balanced_witness(diag, cone)
        if w is not None:
            evidence = _isometry_evidence(h, _balanced_form(cone, w.a_list, w.b_list))
            if evidence["match"]:
                return ZWitness(w.q, w.a_list, w.b_list, evidence)
    pool = [A.phi_element() * Fraction(cone.orientation)]
    if rng is not None:
        pool += [
            sample_cone_member(cone, rng, invertible=True)
            for _ in range(search_bound)
        ]
    for a in pool:
        q, u_list, v_list, evidence = sylvester_reduction(h, a, cone)
        if len(u_list) == len(v_list) and evidence["match"]:
            a_list = tuple(u * a for u in u_list)
            b_list = tuple(v * a for v in v_list)
            return ZWitness(q, a_list, b_list, evidence)
    return NotFound(search_bound)


def verify_witness(w: ZWitness, h: HermitianForm, cone: PositiveConeHandle) -> bool:
    """Re-check every claim a witness makes, from scratch."""
    A = cone.algebra
    if len(w.a_list) != len(w.b_list):
        return False
    if signature_qf(w.q, cone.ordering) == 0:
        return False
    for x in list(w.a_list) + list(w.b_list):
        if not A.is_symmetric(x):
            return False
        try:
            A.invert(x)
        except NotInvertible:
            return False
        if not cone_membership(x, cone)[0]:
            return False
    left = form_tensor_qf(w.q, h)
    right = _balanced_form(cone, w.a_list, w.b_list)
    ev = _isometry_evidence(left, right)
    return ev["match"]


def mideal_check(
    cone: PositiveConeHandle,
    samples,
    rng,
    torsion_max: int = 8,
    membership=None,
) -> dict:
    """Sampled m-ideal suite for (I_P, N_P) over the given cone.

    ``samples`` is a list of nonsingular hermitian forms.  ``membership``
    may replace the kernel decision for negative controls.
    """
    A = cone.algebra
    P = cone.ordering
    field = A.field
    if membership is None:
        membership = lambda h: in_NP(h, cone)

    def rand_unit():
        while True:
            u = field.element(
                [Fraction(rng.randint(-4, 4)) for _ in range(field.degree)]
            )
            if not u.is_zero:
                return u

    samples = list(samples)
    kernel_members = [form_direct_sum(s, form_scale(field.from_rational(-1), s)) for s in samples]
    kernel_members += [s for s in samples if membership(s)]

    report: dict = {}

    checked = viol = 0
    for i, h1 in enumerate(kernel_members):
        h2 = kernel_members[(i + 1) % len(kernel_members)]
        checked += 1
        if not membership(form_direct_sum(h1, h2)):
            viol += 1
    report["N_plus_N"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    checked = viol = 0
    for h in kernel_members:
        u = rand_unit()
        checked += 1
        if not membership(form_scale(u, h)):
            viol += 1
    report["WF_times_N"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    checked = viol = 0
    for s in samples:
        u = rand_unit()
        if sign_of(u, P) < 0:
            u = -u
        two_dim = QuadraticForm(field, [field.one(), -u])
        checked += 1
        if not membership(form_tensor_qf(two_dim, s)):
            viol += 1
    report["IP_times_W"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    proper = not membership(diagonal_form(A, [A.phi_element()]))
    report["N_proper"] = {"pass": proper, "checked": 1, "violations": 0 if proper else 1}

    checked = viol = 0
    for s in samples:
        diag = [rand_unit() for _ in range(rng.randint(1, 2))]
        q = QuadraticForm(field, diag)
        if membership(form_tensor_qf(q, s)):
            checked += 1
            if not (in_IP(q, P) or membership(s)):
                viol += 1
    # make sure the hypothesis is exercised at least once
    q0 = QuadraticForm(field, [field.one(), field.from_rational(-1)])
    for s in samples[:5]:
        if membership(form_tensor_qf(q0, s)):
            checked += 1
            if not (in_IP(q0, P) or membership(s)):
                viol += 1
    report["primality"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    checked = viol = 0
    for s in samples:
        for ell in range(2, torsion_max + 1):
            if membership(form_repeat(ell, s)):
                checked += 1
                if not membership(s):
                    viol += 1
    for h in kernel_members[:5]:
        for ell in (2, 3):
            checked += 1
            if not (membership(form_repeat(ell, h)) and membership(h)):
                viol += 1
    report["torsion_free"] = {"pass": viol == 0, "checked": checked, "violations": viol}

    report["pass"] = all(
        report[k]["pass"]
        for k in (
            "N_plus_N",
            "WF_times_N",
            "IP_times_W",
            "N_proper",
            "primality",
            "torsion_free",
        )
    )
    return report
