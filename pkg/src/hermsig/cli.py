"""Command line front end.

Reads JSON job configs, runs the requested computation, and emits a
deterministic report (JSON by default, an indented text rendering with
--format text).  Exit codes: 0 on success, 1 when a property check in the
report failed, 2 on input or domain errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import HermsigError, ParseError
from .exactnum import count_roots_with_signs
from .orderings import embed_field, list_orderings
from .hermitian import (
    nil_orderings,
    signature_vector,
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
    in_NP,
    sylvester_reduction,
    verify_witness,
)
from . import jsonio
from .verify import ALL_CRITERIA, run_suite


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read config: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ParseError("config must be a JSON object")
    return obj


def _ordering_by_index(field, index):
    orderings = list_orderings(field)
    if not isinstance(index, int) or not 0 <= index < len(orderings):
        raise ParseError(f"ordering_index {index!r} out of range")
    return orderings[index]


def _cone_from_config(A, config) -> PositiveConeHandle:
    P = _ordering_by_index(A.field, config.get("ordering_index", 0))
    orientation = config.get("orientation", 1)
    if orientation not in (1, -1):
        raise ParseError("orientation must be 1 or -1")
    return PositiveConeHandle(A, P, orientation)


def _cmd_orderings(config, seed, bound):
    field = jsonio.parse_field(config["field"])
    report = {
        "orderings": [
            {
                "index": P.root_index,
                "isolating": jsonio.interval_to_json(P.isolating),
            }
            for P in list_orderings(field)
        ]
    }
    return report, True


def _cmd_nil(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    nil = nil_orderings(A)
    report = {
        "nil_indices": [P.root_index for P in nil],
        "ordering_count": len(list_orderings(A.field)),
        "nil_everywhere": len(nil) == len(list_orderings(A.field)),
    }
    return report, True


def _cmd_signature(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    h = jsonio.parse_hermitian_form(A, config["form"])
    vec = signature_vector(h)
    return {"signatures": list(vec.values)}, True


def _cmd_cones(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    rng = random.Random(seed)
    sample_size = config.get("samples", 50)
    cones = []
    ok = True
    for cone in list_positive_cones(A):
        half = sample_size // 2
        samples = [sample_cone_member(cone, rng) for _ in range(half)]
        samples += [sample_symmetric(A, rng) for _ in range(sample_size - half)]
        scalars = [
            A.field.element([rng.randint(-4, 4) for _ in range(A.field.degree)])
            for _ in range(8)
        ]
        checks = cone_axioms_check(cone, samples, scalars)
        ok = ok and checks["pass"]
        cones.append(
            {
                "ordering_index": cone.ordering.root_index,
                "orientation": cone.orientation,
                "checks": checks,
            }
        )
    return {"cones": cones, "pass": ok}, ok


def _cmd_member(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    b = jsonio.parse_algebra_element(A, config["element"])
    cone = _cone_from_config(A, config)
    member, witness = cone_membership(b, cone)
    report = {
        "member": member,
        "witness": jsonio.witness_to_json(witness) if witness else None,
    }
    if witness is not None:
        report["witness_reconstructs"] = witness.reconstruct(cone) == b
    return report, True


def _cmd_np(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    h = jsonio.parse_hermitian_form(A, config["form"])
    cone = _cone_from_config(A, config)
    member = in_NP(h, cone)
    report = {"in_np": member, "witness": None}
    ok = True
    if member and config.get("search", False):
        rng = random.Random(seed)
        w = find_Z_witness(h, cone, search_bound=bound, rng=rng)
        if isinstance(w, ZWitness):
            report["witness"] = jsonio.zwitness_to_json(w)
            verified = verify_witness(w, h, cone)
            report["witness_verified"] = verified
            ok = verified
        else:
            report["witness_not_found_bound"] = w.bound
    return report, ok


def _cmd_sylvester(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    h = jsonio.parse_hermitian_form(A, config["form"])
    a = jsonio.parse_algebra_element(A, config["element"])
    cone = _cone_from_config(A, config)
    q, u_list, v_list, evidence = sylvester_reduction(h, a, cone)
    report = {
        "q": jsonio.qform_to_json(q),
        "u": [jsonio.element_to_json(u) for u in u_list],
        "v": [jsonio.element_to_json(v) for v in v_list],
        "evidence": evidence,
    }
    return report, evidence["match"]


def _cmd_count_roots(config, seed, bound):
    m = jsonio.parse_poly(config["m"])
    conditions = [jsonio.parse_poly(g) for g in config.get("conditions", [])]
    return {"count": count_roots_with_signs(m, conditions)}, True


def _cmd_extend(config, seed, bound):
    A = jsonio.parse_algebra(config["algebra"])
    dst = jsonio.parse_field(config["embedding"]["dst_field"])
    image = jsonio.parse_element(dst, config["embedding"]["image"])
    emb = embed_field(A.field, dst, image)
    cone = _cone_from_config(A, config)
    Q = _ordering_by_index(dst, config.get("target_ordering_index", 0))
    rng = random.Random(seed)
    samples = config.get("samples", 25)
    extended, report = extend_cone(emb, cone, Q, samples=samples, rng=rng)
    from .hermitian import local_degree_nP

    out = {
        "target_ordering_index": Q.root_index,
        "orientation": extended.orientation,
        "n_src": local_degree_nP(A, cone.ordering).value,
        "n_dst": local_degree_nP(extended.algebra, Q).value,
        "containment": report,
        "pass": report["pass"],
    }
    return out, report["pass"]


def _cmd_verify(config, seed, bound):
    only = config.get("criteria") if config else None
    if only:
        unknown = set(only) - set(ALL_CRITERIA)
        if unknown:
            raise ParseError(f"unknown criteria: {sorted(unknown)}")
    sizes = config.get("sizes", {}) if config else {}
    results = run_suite(seed=seed, only=only, sizes=sizes)
    ok = all(r.passed for r in results)
    report = {
        "seed": seed,
        "criteria": [
            {"name": r.name, "passed": r.passed, "details": r.details}
            for r in results
        ],
        "pass": ok,
    }
    return report, ok


_COMMANDS = {
    "orderings": (_cmd_orderings, True),
    "nil": (_cmd_nil, True),
    "signature": (_cmd_signature, True),
    "cones": (_cmd_cones, True),
    "member": (_cmd_member, True),
    "np": (_cmd_np, True),
    "sylvester": (_cmd_sylvester, True),
    "count-roots": (_cmd_count_roots, True),
    "extend": (_cmd_extend, True),
    "verify": (_cmd_verify, False),
}


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_render_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hermsig",
        description=(
            "Exact signatures of hermitian forms and positive cones over "
            "algebras with involution"
        ),
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--bound", type=int, default=8)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_config) in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", required=needs_config)
    args = parser.parse_args(argv)

    handler, _ = _COMMANDS[args.command]
    try:
        config = _load_config(args.config) if args.config else {}
        report, ok = handler(config, args.seed, args.bound)
    except HermsigError as e:
        error = {"error": e.code, "message": str(e)}
        sys.stdout.write(render(error, args.format))
        return 2
    except KeyError as e:
        error = {"error": "ParseError", "message": f"missing config key {e}"}
        sys.stdout.write(render(error, args.format))
        return 2
    sys.stdout.write(render(report, args.format))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
