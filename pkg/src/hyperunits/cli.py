"""Command-line frontend.

JSON reports go to stdout (or ``--output``), a short human summary to
stderr.  Exit codes: 0 computed, 1 usage/parse error, 2 budget exceeded,
3 precondition violation.

Group specs::

    C<n>  D<n> (order 2n)  K8 (alias Q8)  Q16  E2^<k>  S3  Z  Z^<k>
    products with 'x', e.g. K8xE2^2, K8xC3, ZxC3, Z^2xK8
    @file.json   a Cayley table {"table": [[...]], "labels": [...]}
                 or a structured group {"torsion": ..., "free_rank": k, "actions": [...]}

Field specs::

    GF(p)  GF(p^n)  GF(q) for a prime power q  GF(p)(t)  algcl(p)
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path
from typing import Any

from . import analysis
from .coeff import FieldDescriptor, is_prime
from .config import DEFAULT_BUDGETS
from .errors import (
    AlgebraError,
    BudgetExceeded,
    GroupValidationError,
    NotPrime,
    ParseError,
    PreconditionError,
    UnknownName,
)
from .groups import (
    FiniteGroup,
    StructuredGroup,
    cyclic,
    dihedral,
    direct_product,
    elemabelian2,
    extend_hom,
    genquaternion16,
    inversion_map,
    conjugation_map,
    quaternion8,
    symmetric3,
    upper_central_series,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_PRECONDITION = 0, 1, 2, 3

_FACTOR_RE = re.compile(r"C(\d+)|D(\d+)|K8|Q8|Q16|E2(?:\^(\d+))?|S3|Z(?:\^(\d+))?")


def _parse_factor(tok: str, pos: int):
    m = _FACTOR_RE.fullmatch(tok)
    if m is None:
        raise ParseError(f"unknown group factor {tok!r}", pos)
    c, d, e, z = m.groups()
    if tok.startswith("Z"):
        return int(z) if z else 1
    if c is not None:
        if int(c) < 1:
            raise ParseError("cyclic order must be positive", pos)
        return cyclic(int(c))
    if d is not None:
        if int(d) < 1:
            raise ParseError("dihedral parameter must be positive", pos)
        return dihedral(int(d))
    if tok in ("K8", "Q8"):
        return quaternion8()
    if tok == "Q16":
        return genquaternion16()
    if tok == "S3":
        return symmetric3()
    return elemabelian2(int(e) if e else 1)


def parse_group_spec(text: str) -> FiniteGroup | StructuredGroup:
    """Parse the group mini-language; ``@path`` reads a JSON document."""
    s = text.strip()
    if not s:
        raise ParseError("empty group spec", 0)
    if s.startswith("@"):
        return load_group_file(Path(s[1:]))
    finite: FiniteGroup | None = None
    rank = 0
    pos = 0
    for tok in s.split("x"):
        factor = _parse_factor(tok.strip(), pos)
        pos += len(tok) + 1
        if isinstance(factor, int):
            rank += factor
        else:
            finite = factor if finite is None else direct_product(finite, factor)
    if finite is None:
        finite = cyclic(1)
    finite.name = s if rank == 0 else finite.name
    if rank:
        identity = list(finite.elements)
        return StructuredGroup(finite, rank, tuple(identity for _ in range(rank)))
    return finite


def load_group_file(path: Path) -> FiniteGroup | StructuredGroup:
    try:
        doc = json.loads(path.read_text())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e.msg}", e.pos) from None
    return group_from_json(doc)


def _finite_from_json(doc) -> FiniteGroup:
    if isinstance(doc, str):
        g = parse_group_spec(doc)
        if not isinstance(g, FiniteGroup):
            raise ParseError("torsion part must be a finite group")
        return g
    if isinstance(doc, list):
        return FiniteGroup(doc)
    if isinstance(doc, dict) and "table" in doc:
        return FiniteGroup(doc["table"], doc.get("labels"), doc.get("name"))
    raise ParseError("expected a group spec string, a table, or {\"table\": ...}")


def _action_from_json(T: FiniteGroup, spec) -> list[int]:
    if isinstance(spec, list):
        return [int(x) for x in spec]
    if spec == "identity":
        return list(T.elements)
    if spec == "inversion":
        return inversion_map(T)
    if isinstance(spec, str) and spec.startswith("conj:"):
        return conjugation_map(T, T.index(spec[5:]))
    if isinstance(spec, dict) and "generators" in spec and "images" in spec:
        gens = [T.index(x) for x in spec["generators"]]
        imgs = [T.index(x) for x in spec["images"]]
        return extend_hom(T, gens, imgs)
    raise ParseError(f"bad action {spec!r}")


def group_from_json(doc: Any) -> FiniteGroup | StructuredGroup:
    """Cayley-table document or structured-group document."""
    if isinstance(doc, dict) and "torsion" in doc:
        T = _finite_from_json(doc["torsion"])
        k = int(doc.get("free_rank", 0))
        actions = [_action_from_json(T, a) for a in doc.get("actions", [])]
        return StructuredGroup(T, k, tuple(tuple(a) for a in actions))
    return _finite_from_json(doc)


_GF_RE = re.compile(r"GF\((\d+)(?:\^(\d+))?\)")


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            if q != 1:
                break
            return p, n
    raise NotPrime(f"{q} is not a prime power")


def parse_field_spec(text: str) -> FieldDescriptor:
    s = text.replace(" ", "")
    m = re.fullmatch(r"GF\((\d+)\)\(t\)", s)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise ParseError(f"function fields are built over prime fields only, got GF({p})")
        return FieldDescriptor.function_field(p)
    m = re.fullmatch(r"algcl\((\d+)\)", s)
    if m:
        return FieldDescriptor.algebraic_infinite(int(m.group(1)))
    m = _GF_RE.fullmatch(s)
    if m:
        base, n = int(m.group(1)), m.group(2)
        if n is not None:
            if not is_prime(base):
                raise NotPrime(f"{base} is not prime")
            return FieldDescriptor.finite(base, int(n))
        p, k = _prime_power(base)
        return FieldDescriptor.finite(p, k)
    raise ParseError(f"cannot parse field spec {text!r}", 0)


# ---------------------------------------------------------------------------
# commands


def _group_inputs(G) -> dict:
    if isinstance(G, StructuredGroup):
        return {"torsion": G.torsion.name, "torsion_order": G.torsion.order, "free_rank": G.free_rank}
    return {"name": G.name, "order": G.order}


def _require_finite(G) -> FiniteGroup:
    if isinstance(G, StructuredGroup):
        if G.free_rank:
            raise PreconditionError("this command needs a finite group")
        return G.torsion
    return G


def cmd_classify_hypercentral(args) -> dict:
    G = parse_group_spec(args.group)
    if isinstance(G, StructuredGroup) and G.free_rank:
        v = analysis.classify_hypercentral_structured(G)
    else:
        v = analysis.classify_hypercentral_finite(_require_finite(G))
    return {
        "inputs": {"group": _group_inputs(G)},
        "answer": v.label,
        "rule": f"case ({v.case})" if v.case else v.reason,
        "evidence": {"reason": v.reason, **v.evidence},
        "summary": f"U_1(ZG) hypercentral: {v.label} ({v.reason})",
    }


def cmd_classify_hyperbolic(args) -> dict:
    K = parse_field_spec(args.field)
    G = parse_group_spec(args.group)
    v = analysis.classify_hyperbolic(K, G, args.about, args.witness, args.independence_bound)
    out = {
        "inputs": {"field": str(K), "group": _group_inputs(G), "about": args.about},
        "answer": v.answer,
        "rule": v.rule,
        "evidence": {"reason": v.reason, "constraints": v.constraints},
        "summary": f"{args.about}(KG) {v.answer} by {v.rule}: {v.reason}",
    }
    if v.witness is not None:
        out["witness"] = v.witness.to_json()
    return out


def cmd_enumerate_units(args) -> dict:
    K = parse_field_spec(args.field)
    G = _require_finite(parse_group_spec(args.group))
    if K.kind != "finite":
        raise PreconditionError("enumerate-units needs a finite field")
    V = analysis.enumerate_v_kg(K.realize(), G, args.budget or DEFAULT_BUDGETS.enumeration)
    st = analysis.unit_group_structure(V)
    return {
        "inputs": {"field": str(K), "group": _group_inputs(G)},
        "answer": st.to_json(),
        "rule": "exhaustive enumeration of augmentation-one elements",
        "evidence": {
            "candidates": V.candidates,
            "units": [str(x) for x in V.carrier],
        },
        "summary": f"|V| = {st.order}, center {st.center_order}, series {st.series_orders}",
    }


def cmd_unit_search(args) -> dict:
    G = _require_finite(parse_group_spec(args.group))
    B = args.bound
    units = analysis.bounded_unit_search_zg(G, B, args.budget or DEFAULT_BUDGETS.unit_search)
    from .groupring import is_trivial_unit

    trivial = all(is_trivial_unit(u) for u in units)
    return {
        "inputs": {"group": _group_inputs(G), "bound": B},
        "answer": {"count": len(units), "only_trivial": trivial},
        "rule": "exhaustive search over coefficient vectors in [-B, B]^|G|",
        "evidence": {"candidates": (2 * B + 1) ** G.order, "units": [str(u) for u in units]},
        "summary": f"{len(units)} units with coefficients in [-{B}, {B}]"
        + (" (all trivial)" if trivial else ""),
    }


def cmd_witness_z2(args) -> dict:
    K = parse_field_spec(args.field)
    if K.kind != "function_field":
        raise PreconditionError("Z^2 witnesses live over GF(p)(t)")
    G = _require_finite(parse_group_spec(args.group))
    if args.element is not None:
        g0 = G.index(args.element)
    else:
        g0 = analysis.coprime_torsion_element(G, K.p)
        if g0 is None:
            raise PreconditionError(f"{G.name} has no nontrivial element of order prime to {K.p}")
    w = analysis.construct_z2_witness(K.p, G, g0)
    ok = analysis.verify_z2_witness(w, args.independence_bound)
    return {
        "inputs": {"field": str(K), "group": _group_inputs(G), "element": G.labels[g0]},
        "answer": "verified" if ok else "failed",
        "rule": "u1 = e + t(1-e), u2 = e + (1+t)(1-e)",
        "evidence": w.checks,
        "witness": w.to_json(),
        "summary": f"Z^2 witness in V(GF({K.p})(t){G.name}): {'verified' if ok else 'FAILED'}",
    }


def cmd_central_series(args) -> dict:
    G = _require_finite(parse_group_spec(args.group))
    s = upper_central_series(G)
    return {
        "inputs": {"group": _group_inputs(G)},
        "answer": s.nilpotency_class if s.is_nilpotent else "NotNilpotent",
        "rule": "Z_{k+1}/Z_k = Z(G/Z_k) via quotient tables",
        "evidence": {"orders": s.orders, "terms": [t.labels() for t in s.terms]},
        "summary": f"upper central series orders {s.orders}, class "
        + (str(s.nilpotency_class) if s.is_nilpotent else "NotNilpotent"),
    }


def cmd_verify_dedekind(args) -> dict:
    G = _require_finite(parse_group_spec(args.group))
    r = analysis.verify_dedekind_conditions(G)
    return {
        "inputs": {"group": _group_inputs(G)},
        "answer": r.all_hold,
        "rule": "exhaustive check over the Cayley table",
        "evidence": r.to_json(),
        "summary": "all conditions hold" if r.all_hold else f"fails: {r.first_failure().description}",
    }


COMMANDS = {
    "classify-hypercentral": cmd_classify_hypercentral,
    "classify-hyperbolic": cmd_classify_hyperbolic,
    "enumerate-units": cmd_enumerate_units,
    "unit-search": cmd_unit_search,
    "witness-z2": cmd_witness_z2,
    "central-series": cmd_central_series,
    "verify-dedekind": cmd_verify_dedekind,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    common.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")

    parser = _Parser(prog="hyperunits", description="Hypercentral and hyperbolic unit groups of group rings.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("classify-hypercentral", parents=[common])
    p.add_argument("--group", required=True)

    p = sub.add_parser("classify-hyperbolic", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--about", choices=["V", "U"], default="V")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--independence-bound", type=int, default=DEFAULT_BUDGETS.independence_bound)

    p = sub.add_parser("enumerate-units", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--budget", type=int)

    p = sub.add_parser("unit-search", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--budget", type=int)

    p = sub.add_parser("witness-z2", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--element", help="label of g0 (default: first element of order prime to p)")
    p.add_argument("--independence-bound", type=int, default=DEFAULT_BUDGETS.independence_bound)

    for verb in ("central-series", "verify-dedekind"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--group", required=True)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        result = COMMANDS[args.verb](args)
    except (ParseError, NotPrime, GroupValidationError, UnknownName) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=stderr)
        return EXIT_BUDGET
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=stderr)
        return EXIT_PRECONDITION
    except AlgebraError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_PRECONDITION

    summary = result.pop("summary", "")
    report = {"schema_version": SCHEMA_VERSION, "question": args.verb, **result}
    report.setdefault("evidence", {})
    if not args.no_timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    print(summary, file=stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
