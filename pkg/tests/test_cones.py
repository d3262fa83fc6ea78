import random
from fractions import Fraction

import pytest

from hermsig.errors import (
    NilOrdering,
    NotSymmetric,
    OrderingDoesNotRestrict,
)
from hermsig.algebras import (
    DElement,
    base_desc,
    make_algebra,
    quaternion_desc,
)
from hermsig.cones import (
    PositiveConeHandle,
    cone_axioms_check,
    cone_membership,
    extend_cone,
    harrison_sigma,
    list_positive_cones,
    project_pi,
    psd_membership,
    sample_cone_member,
    sample_symmetric,
)
from hermsig.hermitian import diagonal_form, local_degree_nP, signature
from hermsig.orderings import NumberField, embed_field, list_orderings

QQ = NumberField([0, 1])
RT2 = NumberField([-2, 0, 1])
HAM = quaternion_desc(QQ, QQ.from_rational(-1), QQ.from_rational(-1))
BQQ = base_desc(QQ)


def delt(desc, *vals):
    return DElement(desc, tuple(desc.field.from_rational(v) for v in vals))


def m2(vals):
    return [[delt(BQQ, vals[0][0]), delt(BQQ, vals[0][1])],
            [delt(BQQ, vals[1][0]), delt(BQQ, vals[1][1])]]


def test_psd_membership_examples():
    P = list_orderings(QQ)[0]
    ok, w = psd_membership(BQQ, m2([[1, 0], [0, 0]]), P)
    assert ok and [x.as_fraction() for x in w.diagonal] == [1, 0]
    ok, w = psd_membership(BQQ, m2([[0, 1], [1, 0]]), P)
    assert not ok and w is None
    # quaternion: [[1, i], [-i, 1]] is PSD (diagonalizes to (1, 0))
    i = HAM.basis()[1]
    B = [[HAM.one(), i], [-i, HAM.one()]]
    ok, w = psd_membership(HAM, B, P)
    assert ok
    assert sorted(x.as_fraction() for x in w.diagonal) == [0, 1]


def test_cone_membership_and_witness_roundtrip():
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    plus = PositiveConeHandle(M2, P, 1)
    ok, w = cone_membership(M2.phi_element(), plus)
    assert ok
    assert w.reconstruct(plus) == M2.phi_element()
    indef = M2.element(m2([[1, 0], [0, -1]]))
    assert not cone_membership(indef, plus)[0]
    minus = PositiveConeHandle(M2, P, -1)
    assert not cone_membership(indef, minus)[0]


def test_cone_membership_phi_scaled():
    phi = m2([[1, 0], [0, -1]])
    M2 = make_algebra(BQQ, 2, phi)
    P = list_orderings(QQ)[0]
    plus = PositiveConeHandle(M2, P, 1)
    b = M2.element(m2([[1, 0], [0, -1]]))  # equals Phi * I
    ok, w = cone_membership(b, plus)
    assert ok and w.reconstruct(plus) == b


def test_list_positive_cones():
    M2 = make_algebra(BQQ, 2)
    assert len(list_positive_cones(M2)) == 2
    B = make_algebra(
        quaternion_desc(RT2, RT2.from_rational(-1), RT2.generator()), 1
    )
    cones = list_positive_cones(B)
    assert len(cones) == 2
    assert all(c.ordering.root_index == 0 for c in cones)
    # quaternion split at every ordering: no cones at all
    split = make_algebra(
        quaternion_desc(QQ, QQ.from_rational(1), QQ.from_rational(1)), 1
    )
    assert list_positive_cones(split) == ()


def test_cone_handle_rejects_nil():
    B = make_algebra(
        quaternion_desc(RT2, RT2.from_rational(-1), RT2.generator()), 1
    )
    neg, pos = list_orderings(RT2)
    with pytest.raises(NilOrdering):
        PositiveConeHandle(B, pos, 1)


def test_sampled_members_are_members():
    rng = random.Random(42)
    for A in (make_algebra(BQQ, 2), make_algebra(HAM, 1)):
        for cone in list_positive_cones(A):
            for _ in range(10):
                b = sample_cone_member(cone, rng)
                assert cone_membership(b, cone)[0]


def test_cone_axioms_check_passes():
    rng = random.Random(77)
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    cone = PositiveConeHandle(M2, P, 1)
    samples = [sample_cone_member(cone, rng) for _ in range(10)]
    samples += [sample_symmetric(M2, rng) for _ in range(10)]
    scalars = [QQ.from_rational(v) for v in (3, -1, Fraction(1, 2), 0, -5)]
    report = cone_axioms_check(cone, samples, scalars)
    assert report["pass"], report


def test_cone_axioms_negative_control():
    # mixing the orientations makes the membership improper: P5 must fail
    rng = random.Random(78)
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    plus = PositiveConeHandle(M2, P, 1)
    minus = PositiveConeHandle(M2, P, -1)
    corrupted = lambda b: cone_membership(b, plus)[0] or cone_membership(b, minus)[0]
    samples = [sample_cone_member(plus, rng) for _ in range(8)]
    scalars = [QQ.from_rational(v) for v in (2, -3)]
    report = cone_axioms_check(plus, samples, scalars, membership=corrupted)
    assert not report["P5"]["pass"]
    assert not report["pass"]


def test_cone_axioms_scalar_violation_detected():
    rng = random.Random(79)
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    cone = PositiveConeHandle(M2, P, 1)
    samples = [sample_cone_member(cone, rng) for _ in range(6)]
    scalars = [QQ.from_rational(-1)]
    report = cone_axioms_check(cone, samples, scalars)
    assert report["P4"]["pass"]  # -1 correctly excluded from the scalar cone


def test_harrison_sigma():
    M2 = make_algebra(BQQ, 2)
    phi = M2.phi_element()
    cones = harrison_sigma(M2, [phi])
    assert all(c.orientation == 1 for c in cones) and len(cones) == 1
    assert harrison_sigma(M2, [M2.zero()]) == list_positive_cones(M2)
    assert harrison_sigma(M2, [phi, -phi]) == ()
    with pytest.raises(NotSymmetric):
        nonsym = M2.element(m2([[0, 1], [0, 0]]))
        harrison_sigma(M2, [nonsym])


def test_project_pi_two_to_one():
    B = make_algebra(
        quaternion_desc(RT2, RT2.from_rational(-1), RT2.generator()), 1
    )
    cones = list_positive_cones(B)
    images = [project_pi(c) for c in cones]
    neg, pos = list_orderings(RT2)
    assert images == [neg, neg]
    from hermsig.hermitian import nil_orderings

    assert set(images) == set(list_orderings(RT2)) - set(nil_orderings(B))


def test_extend_cone_q_to_rt2():
    rng = random.Random(90)
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    cone = PositiveConeHandle(M2, P, 1)
    emb = embed_field(QQ, RT2, RT2.zero())
    for Q in list_orderings(RT2):
        ext, report = extend_cone(emb, cone, Q, samples=10, rng=rng)
        assert report["pass"], report
        assert local_degree_nP(ext.algebra, Q).value == 2


def test_extend_cone_wrong_ordering():
    rng = random.Random(91)
    L = NumberField([-2, 0, 0, 0, 1])
    emb = embed_field(RT2, L, L.element([0, 0, 1, 0]))
    neg, pos = list_orderings(RT2)
    A = make_algebra(quaternion_desc(RT2, RT2.from_rational(-1), RT2.from_rational(-1)), 1)
    cone_neg = PositiveConeHandle(A, neg, 1)
    for Q in list_orderings(L):
        with pytest.raises(OrderingDoesNotRestrict):
            extend_cone(emb, cone_neg, Q)
    cone_pos = PositiveConeHandle(A, pos, 1)
    ext, report = extend_cone(emb, cone_pos, list_orderings(L)[0], samples=8, rng=rng)
    assert report["pass"]


def test_samenr_balanced_transforms():
    # a congruence image of a balanced cone-entry diagonal form, whenever it
    # diagonalizes over A with classifiable entries, is balanced again
    from hermsig.errors import NotInvertible
    from hermsig.hermitian import congruence_transform, diagonalize_over_algebra

    rng = random.Random(314)
    for A in (make_algebra(HAM, 1), make_algebra(BQQ, 2)):
        cone = list_positive_cones(A)[0]
        confirmed = 0
        attempts = 0
        while confirmed < 12 and attempts < 200:
            attempts += 1
            r = rng.randint(1, 2)
            pos = [sample_cone_member(cone, rng, invertible=True) for _ in range(r)]
            neg = [sample_cone_member(cone, rng, invertible=True) for _ in range(r)]
            h = diagonal_form(A, pos + [-q for q in neg])
            k = 2 * r
            G = [[A.identity() if i == j else A.zero() for j in range(k)] for i in range(k)]
            for _ in range(3):
                i, j = rng.randrange(k), rng.randrange(k)
                if i == j:
                    continue
                c = sample_symmetric(A, rng, height=1)
                for t in range(k):
                    G[t][j] = G[t][j] + G[t][i] * c
            try:
                entries = diagonalize_over_algebra(congruence_transform(h, G))
            except NotInvertible:
                continue
            in_cone = 0
            in_neg = 0
            for e in entries:
                if cone_membership(e, cone)[0]:
                    in_cone += 1
                elif cone_membership(-e, cone)[0]:
                    in_neg += 1
                else:
                    break
            else:
                assert in_cone == in_neg == r
                confirmed += 1
        assert confirmed >= 12


def test_member_signature_orientation():
    rng = random.Random(99)
    M2 = make_algebra(BQQ, 2)
    P = list_orderings(QQ)[0]
    for cone in list_positive_cones(M2):
        for _ in range(8):
            b = sample_cone_member(cone, rng, invertible=True)
            assert signature(diagonal_form(M2, [b]), P) == cone.orientation * 2
