"""The property suite behind the `verify` command.

Each criterion is a standalone function returning a CriterionResult; the
CLI and the acceptance tests share this module so there is exactly one
definition of what passing means.  Everything is exact: no tolerances,
integer and rational equalities only.  Sample sizes are the suite
defaults; a seed makes every run reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvertible, OrderingDoesNotRestrict
from .exactnum import (
    Polynomial,
    count_roots_with_signs,
    gcd,
    is_squarefree,
    isolate_real_roots,
    refine_interval,
)
from .orderings import NumberField, embed_field, list_orderings
from .qforms import signature_qf
from .algebras import (
    base_desc,
    make_algebra,
    quadratic_desc,
    quaternion_desc,
)
from .hermitian import (
    congruence_transform,
    diagonal_form,
    local_degree_nP,
    max_signature_mP,
    nil_orderings,
    random_symmetric_unit,
    signature,
    signature_vector,
    star_pairing,
    trace_transfer,
)
from .cones import (
    PositiveConeHandle,
    cone_axioms_check,
    cone_membership,
    extend_cone,
    list_positive_cones,
    sample_cone_member,
    sample_symmetric,
)
from .wittideal import (
    ZWitness,
    find_Z_witness,
    mideal_check,
    verify_witness,
)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    details: dict

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.details}"


def standard_fields() -> dict:
    return {
        "qq": NumberField([0, 1]),
        "rt2": NumberField([-2, 0, 1]),
        "rt4": NumberField([-2, 0, 0, 0, 1]),
    }


def standard_algebras(fields=None) -> dict:
    """The desk-scale test algebras the suite runs over."""
    f = fields or standard_fields()
    qq, rt2 = f["qq"], f["rt2"]
    minus1 = qq.from_rational(-1)
    m1rt2 = rt2.from_rational(-1)
    base_qq = base_desc(qq)
    phi_indef = [
        [base_qq.from_field(qq.from_rational(1)), base_qq.zero()],
        [base_qq.zero(), base_qq.from_field(qq.from_rational(-1))],
    ]
    return {
        "qq_id": make_algebra(base_qq, 1),
        "qq_gauss": make_algebra(quadratic_desc(qq, minus1), 1),
        "qq_ham": make_algebra(quaternion_desc(qq, minus1, minus1), 1),
        "m2_qq": make_algebra(base_qq, 2),
        "m2_ham": make_algebra(quaternion_desc(qq, minus1, minus1), 2),
        "m2_gauss_rt2": make_algebra(quadratic_desc(rt2, m1rt2), 2),
        "m2_qq_phi": make_algebra(base_qq, 2, phi_indef),
        "rt2_nil_quad": make_algebra(quadratic_desc(rt2, rt2.generator()), 1),
        "rt2_nil_quat": make_algebra(
            quaternion_desc(rt2, m1rt2, rt2.generator()), 1
        ),
    }


def _first_cone(A, orientation=1) -> PositiveConeHandle:
    nil = set(nil_orderings(A))
    P = next(P for P in list_orderings(A.field) if P not in nil)
    return PositiveConeHandle(A, P, orientation)


def _random_poly(rng, max_deg, max_coeff):
    deg = rng.randint(1, max_deg)
    coeffs = [rng.randint(-max_coeff, max_coeff) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-max_coeff, max_coeff)
    return Polynomial(coeffs + [lead])


def _oracle_sign_at_root(g, p, iv):
    """Sign of g at the isolated root of p: interval refinement only."""
    while True:
        lo_v, hi_v = g.eval_interval(iv.lo, iv.hi)
        if lo_v > 0:
            return 1
        if hi_v < 0:
            return -1
        iv = refine_interval(p, iv, iv.width / 2)
        if iv.width == 0:
            v = g(iv.lo)
            return (v > 0) - (v < 0)


def criterion_sturm_oracle(rng, instances: int = 1000) -> CriterionResult:
    """Formula-path sign-condition counts against isolate-and-evaluate."""
    done = 0
    mismatches = 0
    while done < instances:
        m = _random_poly(rng, 8, 20)
        if not is_squarefree(m):
            continue
        gs = []
        want = rng.randint(1, 3)
        for _ in range(want):
            g = _random_poly(rng, 3, 10)
            if gcd(m, g).degree == 0:
                gs.append(g)
        if not gs:
            continue
        expected = sum(
            1
            for iv in isolate_real_roots(m)
            if all(_oracle_sign_at_root(g, m, iv) == 1 for g in gs)
        )
        if count_roots_with_signs(m, gs) != expected:
            mismatches += 1
        done += 1
    return CriterionResult(
        "sturm_sign_count_oracle",
        mismatches == 0,
        {"instances": done, "mismatches": mismatches},
    )


def criterion_trace_transfer(algebras, rng, per_algebra: int = 500) -> CriterionResult:
    """Signature equals the {1, 1/2, 1/4} multiple of the transfer signature."""
    factors = {"base": 1, "quadratic": 2, "quaternion": 4}
    keys = ("qq_gauss", "qq_ham", "qq_id")
    failures = 0
    checked = 0
    for key in keys:
        A = algebras[key]
        factor = factors[A.desc.kind]
        for _ in range(per_algebra):
            k = rng.randint(1, 3)
            h = diagonal_form(A, [rng.randint(-9, 9) for _ in range(k)])
            bq = trace_transfer(h)
            for P in list_orderings(A.field):
                checked += 1
                if signature_qf(bq, P) != factor * signature(h, P):
                    failures += 1
    return CriterionResult(
        "trace_transfer_consistency",
        failures == 0,
        {"algebras": list(keys), "checked": checked, "failures": failures},
    )


def _random_invertible_over_algebra(A, k, rng):
    G = [[A.identity() if i == j else A.zero() for j in range(k)] for i in range(k)]
    for _ in range(3):
        i, j = rng.randrange(k), rng.randrange(k)
        if i == j:
            continue
        c = sample_symmetric(A, rng, height=2)
        for r in range(k):
            G[r][j] = G[r][j] + G[r][i] * c
    return G


def criterion_congruence_invariance(algebras, rng, per_algebra: int = 500) -> CriterionResult:
    failures = 0
    checked = 0
    for key, A in algebras.items():
        for _ in range(per_algebra):
            k = rng.randint(1, 2)
            h = diagonal_form(
                A, [random_symmetric_unit(A, rng, 2) for _ in range(k)]
            )
            G = _random_invertible_over_algebra(A, k, rng)
            h2 = congruence_transform(h, G)
            checked += 1
            if signature_vector(h).values != signature_vector(h2).values:
                failures += 1
    return CriterionResult(
        "congruence_invariance",
        failures == 0,
        {"algebras": len(algebras), "checked": checked, "failures": failures},
    )


def criterion_nil_vanishing(algebras, rng, per_algebra: int = 200) -> CriterionResult:
    keys = ("rt2_nil_quad", "rt2_nil_quat")
    failures = 0
    checked = 0
    for key in keys:
        A = algebras[key]
        nil = nil_orderings(A)
        if not nil:
            failures += 1
            continue
        for _ in range(per_algebra):
            k = rng.randint(1, 2)
            h = diagonal_form(
                A, [random_symmetric_unit(A, rng, 3) for _ in range(k)]
            )
            bq = trace_transfer(h)
            for P in nil:
                checked += 1
                if signature(h, P) != 0 or signature_qf(bq, P) != 0:
                    failures += 1
    return CriterionResult(
        "nil_vanishing",
        failures == 0,
        {"algebras": list(keys), "checked": checked, "failures": failures},
    )


def criterion_max_equals_local_degree(algebras, rng, trials: int = 500) -> CriterionResult:
    keys = ("m2_qq", "m2_ham", "m2_gauss_rt2", "m2_qq_phi")
    failures = 0
    details = {}
    for key in keys:
        A = algebras[key]
        nil = set(nil_orderings(A))
        for P in list_orderings(A.field):
            if P in nil:
                continue
            try:
                value, witness = max_signature_mP(A, P, trials=trials, rng=rng)
            except AssertionError:
                failures += 1
                continue
            expected = local_degree_nP(A, P).value
            details[f"{key}@{P.root_index}"] = value
            if value != expected:
                failures += 1
            if signature(diagonal_form(A, [witness]), P) != expected:
                failures += 1
    return CriterionResult(
        "max_signature_equals_local_degree",
        failures == 0,
        {"values": details, "failures": failures, "trials": trials},
    )


def criterion_cone_equality(algebras, rng, per_algebra: int = 500) -> CriterionResult:
    """PSD-path membership against the signature criterion for units."""
    failures = 0
    checked = 0
    for key, A in algebras.items():
        cones = list_positive_cones(A)
        if not cones:
            continue
        for t in range(per_algebra):
            cone = cones[t % len(cones)]
            if t % 2 == 0:
                b = sample_cone_member(cone, rng, invertible=bool(t % 4 == 0))
            else:
                b = sample_symmetric(A, rng)
            member = cone_membership(b, cone)[0]
            try:
                A.invert(b)
                invertible = True
            except NotInvertible:
                invertible = False
            checked += 1
            if invertible:
                n_p = local_degree_nP(A, cone.ordering).value
                sig_path = (
                    signature(diagonal_form(A, [b]), cone.ordering)
                    == cone.orientation * n_p
                )
                if member != sig_path:
                    failures += 1
            elif member:
                # singular members still certify: orientation only
                w = cone_membership(b, cone)[1]
                if w is None:
                    failures += 1
    return CriterionResult(
        "cone_membership_psd_vs_signature",
        failures == 0,
        {"checked": checked, "failures": failures},
    )


def criterion_cone_axioms(algebras, rng, sample_size: int = 200) -> CriterionResult:
    failures = 0
    cones_checked = 0
    controls_failed = 0
    for key, A in algebras.items():
        cones = list_positive_cones(A)
        if not cones:
            continue
        scalars = [
            A.field.element(
                [rng.randint(-4, 4) for _ in range(A.field.degree)]
            )
            for _ in range(10)
        ] + [A.field.zero()]
        for cone in cones:
            half = sample_size // 2
            samples = [sample_cone_member(cone, rng) for _ in range(half)]
            samples += [sample_symmetric(A, rng) for _ in range(sample_size - half)]
            report = cone_axioms_check(cone, samples, scalars)
            cones_checked += 1
            if not report["pass"]:
                failures += 1
        # negative control: the union of both orientations is improper
        plus = cones[0]
        minus = PositiveConeHandle(A, plus.ordering, -plus.orientation)
        corrupted = lambda b: (
            cone_membership(b, plus)[0] or cone_membership(b, minus)[0]
        )
        small = [sample_cone_member(plus, rng) for _ in range(10)]
        control = cone_axioms_check(
            plus, small, [A.field.from_rational(2)], membership=corrupted
        )
        if control["P5"]["pass"]:
            controls_failed += 1
    passed = failures == 0 and controls_failed == 0
    return CriterionResult(
        "cone_axioms",
        passed,
        {
            "cones_checked": cones_checked,
            "failures": failures,
            "negative_controls_missed": controls_failed,
        },
    )


def criterion_same_signature(algebras, rng, per_cone: int = 200) -> CriterionResult:
    failures = 0
    checked = 0
    for key, A in algebras.items():
        for cone in list_positive_cones(A):
            n_p = local_degree_nP(A, cone.ordering).value
            for _ in range(per_cone):
                b = sample_cone_member(cone, rng, invertible=True)
                checked += 1
                if (
                    signature(diagonal_form(A, [b]), cone.ordering)
                    != cone.orientation * n_p
                ):
                    failures += 1
    return CriterionResult(
        "same_signature_on_cones",
        failures == 0,
        {"checked": checked, "failures": failures},
    )


def criterion_mideal(algebras, rng, per_algebra: int = 100) -> CriterionResult:
    failures = 0
    reports = {}
    for key, A in algebras.items():
        if not list_positive_cones(A):
            continue
        cone = _first_cone(A)
        dim_cap = 1 if A.n > 1 else 2
        samples = [
            diagonal_form(
                A,
                [
                    random_symmetric_unit(A, rng, 2)
                    for _ in range(rng.randint(1, dim_cap))
                ],
            )
            for _ in range(per_algebra)
        ]
        report = mideal_check(cone, samples, rng)
        reports[key] = report["pass"]
        if not report["pass"]:
            failures += 1
        # negative control: rank parity in place of the signature criterion;
        # it admits <Phi> whenever the flattened rank n is even
        fake = lambda h: h.rank() % 2 == 0
        control = mideal_check(cone, samples[:5], rng, membership=fake)
        if control["N_proper"]["pass"] and A.n % 2 == 0:
            failures += 1
    return CriterionResult(
        "mideal_suite",
        failures == 0,
        {"per_algebra": reports, "failures": failures},
    )


def _height_fractions(limit: int):
    out = []
    for num in range(1, limit + 1):
        for den in range(1, limit + 1):
            f = Fraction(num, den)
            if f.numerator <= limit and f.denominator <= limit:
                if f not in out:
                    out.append(f)
    return sorted(set(out))


def criterion_z_witness_small_scale(algebras, rng, height: int = 5) -> CriterionResult:
    """Exhaustive witness search for small balanced forms over division algebras."""
    failures = 0
    found = 0
    vals = _height_fractions(height)
    entries = [v for v in vals] + [-v for v in vals]
    for key in ("qq_id", "qq_ham"):
        A = algebras[key]
        cone = _first_cone(A)
        P = cone.ordering
        for c1 in entries:
            for c2 in entries:
                h = diagonal_form(A, [c1, c2])
                if signature(h, P) != 0:
                    continue
                w = find_Z_witness(h, cone)
                if not isinstance(w, ZWitness) or not verify_witness(w, h, cone):
                    failures += 1
                else:
                    found += 1
        # non-diagonal Gram matrices, entries of small height
        extra = _small_gram_forms(A, rng)
        for h in extra:
            if not h.is_nonsingular or signature(h, P) != 0:
                continue
            w = find_Z_witness(h, cone)
            if not isinstance(w, ZWitness) or not verify_witness(w, h, cone):
                failures += 1
            else:
                found += 1
    return CriterionResult(
        "z_witness_small_scale",
        failures == 0,
        {"witnesses": found, "failures": failures},
    )


def _small_gram_forms(A, rng, count: int = 150):
    """Deterministic sample of 2x2 hermitian Grams with small entries."""
    from .hermitian import HermitianForm

    out = []
    desc = A.desc
    field = A.field
    combos = []
    if desc.kind == "base":
        for c1 in range(-5, 6):
            for c2 in range(-5, 6):
                for off in range(-5, 6):
                    combos.append((c1, c2, (off,)))
    else:
        coords = (-1, 0, 1)
        for c1 in range(-3, 4):
            for c2 in range(-3, 4):
                for quad in _quaternion_coords(coords, desc.dim):
                    combos.append((c1, c2, quad))
    rng2 = random.Random(4177)
    rng2.shuffle(combos)
    for c1, c2, off in combos[: count * 10]:
        diag1 = desc.from_field(field.from_rational(c1))
        diag2 = desc.from_field(field.from_rational(c2))
        beta = _delement_from_ints(desc, off)
        gram = [
            [A.element([[diag1]]), A.element([[beta]])],
            [A.element([[beta.conj()]]), A.element([[diag2]])],
        ]
        out.append(HermitianForm(A, gram))
        if len(out) >= count:
            break
    return out


def _quaternion_coords(coords, dim):
    import itertools

    return itertools.product(coords, repeat=dim)


def _delement_from_ints(desc, ints):
    from .algebras import DElement

    comps = [desc.field.from_rational(v) for v in ints]
    comps += [desc.field.zero()] * (desc.dim - len(comps))
    return DElement(desc, tuple(comps))


def criterion_star_ratio(algebras, rng, per_cone: int = 10) -> CriterionResult:
    """sign(star(a,a)) / sign(<a>)^2 is one positive constant per ordering."""
    failures = 0
    ratios = {}
    for key, A in algebras.items():
        cones = list_positive_cones(A)
        if not cones:
            continue
        P = cones[0].ordering
        seen = None
        count = 0
        for cone in cones[:2]:
            for _ in range(per_cone):
                a = sample_cone_member(cone, rng, invertible=True)
                s = signature(diagonal_form(A, [a]), P)
                star_sig = signature_qf(star_pairing(a, a), P)
                if s == 0 or star_sig == 0:
                    failures += 1
                    continue
                ratio = Fraction(star_sig, s * s)
                if ratio <= 0:
                    failures += 1
                if seen is None:
                    seen = ratio
                elif ratio != seen:
                    failures += 1
                count += 1
        ratios[key] = str(seen)
        if count < 2 * per_cone:
            failures += 1
    return CriterionResult(
        "star_ratio_constancy",
        failures == 0,
        {"ratios": ratios, "failures": failures},
    )


def criterion_extension(fields, rng, samples: int = 200) -> CriterionResult:
    qq, rt2, rt4 = fields["qq"], fields["rt2"], fields["rt4"]
    emb1 = embed_field(qq, rt2, rt2.zero())
    emb2 = embed_field(rt2, rt4, rt4.element([0, 0, 1, 0]))
    failures = 0
    extensions = 0
    minus1 = qq.from_rational(-1)
    cases = [
        (emb1, make_algebra(base_desc(qq), 2)),
        (emb1, make_algebra(quaternion_desc(qq, minus1, minus1), 1)),
        (
            emb2,
            make_algebra(
                quaternion_desc(rt2, rt2.from_rational(-1), rt2.from_rational(-1)), 1
            ),
        ),
    ]
    for emb, A in cases:
        nil = set(nil_orderings(A))
        for P in list_orderings(A.field):
            if P in nil:
                continue
            cone = PositiveConeHandle(A, P, 1)
            for Q in list_orderings(emb.dst):
                if emb.restrict(Q) != P:
                    try:
                        extend_cone(emb, cone, Q)
                        failures += 1
                    except OrderingDoesNotRestrict:
                        pass
                    continue
                extended, report = extend_cone(
                    emb, cone, Q, samples=samples, rng=rng
                )
                extensions += 1
                if not report["pass"]:
                    failures += 1
                if (
                    local_degree_nP(extended.algebra, Q).value
                    != local_degree_nP(A, P).value
                ):
                    failures += 1
    return CriterionResult(
        "cone_extension",
        failures == 0 and extensions > 0,
        {"extensions": extensions, "samples": samples, "failures": failures},
    )


ALL_CRITERIA = (
    "sturm_sign_count_oracle",
    "trace_transfer_consistency",
    "congruence_invariance",
    "nil_vanishing",
    "max_signature_equals_local_degree",
    "cone_membership_psd_vs_signature",
    "cone_axioms",
    "same_signature_on_cones",
    "mideal_suite",
    "z_witness_small_scale",
    "star_ratio_constancy",
    "cone_extension",
)


def run_suite(seed: int = 0, only=None, sizes=None) -> list[CriterionResult]:
    """Run the property suite; `sizes` may shrink sample counts for smoke runs."""
    sizes = sizes or {}
    fields = standard_fields()
    algebras = standard_algebras(fields)
    rng = random.Random(seed)
    picked = set(only or ALL_CRITERIA)
    results = []

    def want(name):
        return name in picked

    if want("sturm_sign_count_oracle"):
        results.append(
            criterion_sturm_oracle(rng, sizes.get("sturm_instances", 1000))
        )
    if want("trace_transfer_consistency"):
        results.append(
            criterion_trace_transfer(algebras, rng, sizes.get("trace_transfer", 500))
        )
    if want("congruence_invariance"):
        results.append(
            criterion_congruence_invariance(
                algebras, rng, sizes.get("congruence", 500)
            )
        )
    if want("nil_vanishing"):
        results.append(
            criterion_nil_vanishing(algebras, rng, sizes.get("nil_forms", 200))
        )
    if want("max_signature_equals_local_degree"):
        results.append(
            criterion_max_equals_local_degree(
                algebras, rng, sizes.get("max_trials", 500)
            )
        )
    if want("cone_membership_psd_vs_signature"):
        results.append(
            criterion_cone_equality(algebras, rng, sizes.get("cone_equality", 500))
        )
    if want("cone_axioms"):
        results.append(
            criterion_cone_axioms(algebras, rng, sizes.get("axiom_samples", 200))
        )
    if want("same_signature_on_cones"):
        results.append(
            criterion_same_signature(algebras, rng, sizes.get("same_signature", 200))
        )
    if want("mideal_suite"):
        results.append(criterion_mideal(algebras, rng, sizes.get("mideal", 100)))
    if want("z_witness_small_scale"):
        results.append(
            criterion_z_witness_small_scale(algebras, rng, sizes.get("z_height", 5))
        )
    if want("star_ratio_constancy"):
        results.append(
            criterion_star_ratio(algebras, rng, sizes.get("star_members", 10))
        )
    if want("cone_extension"):
        results.append(
            criterion_extension(fields, rng, sizes.get("extension_samples", 200))
        )
    return results
