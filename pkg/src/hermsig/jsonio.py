"""JSON wire formats.

All rationals travel as "p/q" strings (or bare integer strings) so that no
float ever enters or leaves the library.  Polynomials are arrays lowest
degree first; intervals are two-element arrays; field elements are arrays
of rationals in the power basis; a DElement is an array of 1, 2 or 4 field
elements; an algebra element is an n x n array of DElements.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .exactnum import Interval, Polynomial
from .orderings import FieldElement, NumberField
from .qforms import QuadraticForm
from .algebras import (
    BASE,
    QUADRATIC,
    QUATERNION,
    AlgebraElement,
    AlgebraWithInvolution,
    DElement,
    DivisionAlgebraDesc,
    base_desc,
    make_algebra,
    quadratic_desc,
    quaternion_desc,
)
from .hermitian import HermitianForm, diagonal_form


def frac_to_str(x: Fraction) -> str:
    return str(x)


def parse_frac(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational {v!r}") from e
    raise ParseError(f"not a rational: {v!r}")


def poly_to_json(p: Polynomial) -> list[str]:
    return [frac_to_str(c) for c in p.coeffs]


def parse_poly(v) -> Polynomial:
    if not isinstance(v, list):
        raise ParseError("polynomial must be an array of rationals")
    return Polynomial([parse_frac(c) for c in v])


def interval_to_json(iv: Interval) -> list[str]:
    return [frac_to_str(iv.lo), frac_to_str(iv.hi)]


def parse_interval(v) -> Interval:
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError("interval must be a two-element array")
    return Interval(parse_frac(v[0]), parse_frac(v[1]))


def field_to_json(F: NumberField) -> dict:
    return {"min_poly": poly_to_json(F.min_poly)}


def parse_field(v) -> NumberField:
    if not isinstance(v, dict) or "min_poly" not in v:
        raise ParseError("field descriptor needs a min_poly")
    try:
        return NumberField([parse_frac(c) for c in v["min_poly"]])
    except ValueError as e:
        raise ParseError(str(e)) from e


def element_to_json(x: FieldElement) -> list[str]:
    return [frac_to_str(c) for c in x.coords]


def parse_element(F: NumberField, v) -> FieldElement:
    if isinstance(v, (int, str)):
        return F.from_rational(parse_frac(v))
    if not isinstance(v, list):
        raise ParseError("field element must be an array of rationals")
    if len(v) != F.degree:
        raise ParseError(
            f"field element needs {F.degree} coordinates, got {len(v)}"
        )
    return F.element([parse_frac(c) for c in v])


def delement_to_json(x: DElement) -> list[list[str]]:
    return [element_to_json(c) for c in x.comps]


def parse_delement(desc: DivisionAlgebraDesc, v) -> DElement:
    if isinstance(v, (int, str)):
        return desc.from_field(desc.field.from_rational(parse_frac(v)))
    if not isinstance(v, list):
        raise ParseError("algebra coefficient must be an array")
    if len(v) != desc.dim:
        raise ParseError(
            f"{desc.kind} coefficient needs {desc.dim} components, got {len(v)}"
        )
    return DElement(
        desc, tuple(parse_element(desc.field, c) for c in v)
    )


def desc_to_json(desc: DivisionAlgebraDesc) -> dict:
    out = {"kind": desc.kind}
    if desc.kind == QUADRATIC:
        out["d"] = element_to_json(desc.d)
    elif desc.kind == QUATERNION:
        out["a"] = element_to_json(desc.a)
        out["b"] = element_to_json(desc.b)
    return out


def parse_desc(F: NumberField, v) -> DivisionAlgebraDesc:
    if not isinstance(v, dict) or "kind" not in v:
        raise ParseError("division descriptor needs a kind")
    kind = v["kind"]
    try:
        if kind == BASE:
            return base_desc(F)
        if kind == QUADRATIC:
            return quadratic_desc(F, parse_element(F, v["d"]))
        if kind == QUATERNION:
            return quaternion_desc(
                F, parse_element(F, v["a"]), parse_element(F, v["b"])
            )
    except KeyError as e:
        raise ParseError(f"missing component {e}") from e
    except ValueError as e:
        raise ParseError(str(e)) from e
    raise ParseError(f"unknown division kind {kind!r}")


def algebra_to_json(A: AlgebraWithInvolution) -> dict:
    return {
        "field": field_to_json(A.field),
        "division": desc_to_json(A.desc),
        "n": A.n,
        "phi": [[delement_to_json(e) for e in row] for row in A.phi],
    }


def parse_algebra(v) -> AlgebraWithInvolution:
    if not isinstance(v, dict):
        raise ParseError("algebra descriptor must be an object")
    try:
        F = parse_field(v["field"])
        desc = parse_desc(F, v["division"])
        n = v["n"]
        if not isinstance(n, int) or n < 1:
            raise ParseError("n must be a positive integer")
        phi = v.get("phi")
        if phi is not None:
            phi = [[parse_delement(desc, e) for e in row] for row in phi]
        return make_algebra(desc, n, phi)
    except KeyError as e:
        raise ParseError(f"missing algebra component {e}") from e
    except ValueError as e:
        raise ParseError(str(e)) from e


def algebra_element_to_json(x: AlgebraElement) -> list:
    return [[delement_to_json(e) for e in row] for row in x.entries]


def parse_algebra_element(A: AlgebraWithInvolution, v) -> AlgebraElement:
    if isinstance(v, (int, str)):
        return A.scalar(A.field.from_rational(parse_frac(v)))
    if not isinstance(v, list) or len(v) != A.n:
        raise ParseError(f"algebra element must be an {A.n} x {A.n} array")
    rows = []
    for row in v:
        if not isinstance(row, list) or len(row) != A.n:
            raise ParseError(f"algebra element must be an {A.n} x {A.n} array")
        rows.append([parse_delement(A.desc, e) for e in row])
    return A.element(rows)


def form_to_json(h: HermitianForm) -> dict:
    return {
        "gram": [[algebra_element_to_json(e) for e in row] for row in h.gram]
    }


def parse_hermitian_form(A: AlgebraWithInvolution, v) -> HermitianForm:
    if not isinstance(v, dict):
        raise ParseError("form descriptor must be an object")
    if "diag" in v:
        return diagonal_form(
            A, [parse_algebra_element(A, e) for e in v["diag"]]
        )
    if "gram" not in v:
        raise ParseError("form descriptor needs gram or diag")
    gram = [
        [parse_algebra_element(A, e) for e in row] for row in v["gram"]
    ]
    return HermitianForm(A, gram)


def qform_to_json(q: QuadraticForm) -> dict:
    return {"diag": [element_to_json(d) for d in q.diag]}


def parse_qform(F: NumberField, v) -> QuadraticForm:
    if not isinstance(v, dict):
        raise ParseError("quadratic form descriptor must be an object")
    if "diag" in v:
        return QuadraticForm(F, [parse_element(F, d) for d in v["diag"]])
    if "gram" in v:
        gram = [[parse_element(F, e) for e in row] for row in v["gram"]]
        return QuadraticForm.from_gram(F, gram)
    raise ParseError("quadratic form descriptor needs diag or gram")


def witness_to_json(w) -> dict:
    return {
        "transform": [[delement_to_json(e) for e in row] for row in w.transform],
        "diagonal": [element_to_json(d) for d in w.diagonal],
    }


def zwitness_to_json(w) -> dict:
    return {
        "q": qform_to_json(w.q),
        "a_list": [algebra_element_to_json(a) for a in w.a_list],
        "b_list": [algebra_element_to_json(b) for b in w.b_list],
        "evidence": w.evidence,
    }
