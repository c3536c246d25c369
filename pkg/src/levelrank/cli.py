"""Command-line front end.  Every verb writes one sorted-key JSON document.

Exit codes: 0 success, 2 bad input, 3 an identity that should hold did not.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import DomainError, VerificationError
from .exact import fraction_str
from .laurent import Laurent


def _encode(obj):
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Laurent):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=str)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, default=_encode)


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON for {what} at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _int_list(text: str, what: str) -> List[int]:
    text = text.strip()
    if text.startswith("["):
        value = _json_arg(text, what)
    else:
        value = [x for x in text.replace(",", " ").split()]
    try:
        out = [int(x) for x in (value if isinstance(value, list) else [value])]
    except (TypeError, ValueError):
        raise DomainError(f"{what} must be a list of integers") from None
    return out


def _read_json_file(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON in {path} at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _positive(value: int, what: str, minimum: int = 1) -> int:
    if value < minimum:
        raise DomainError(f"{what} must be at least {minimum}")
    return value


def _cutoff(default: int) -> int:
    raw = os.environ.get("LEVELRANK_CUTOFF")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"LEVELRANK_CUTOFF must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# verbs


def cmd_orbit(args) -> dict:
    from .affine_weyl import AffinePermutation, antidominant_rep

    lam = _int_list(args.lam, "--lambda")
    _positive(args.e, "--e")
    rep, witness = antidominant_rep(lam, args.e)
    out = {"lambda": lam, "e": args.e, "antidominant": list(rep), "witness": witness.word_string()}
    if args.w:
        w = AffinePermutation.parse(args.w, len(lam))
        out["image"] = list(w.act(lam, args.e, args.sign))
    return out


def cmd_upsilon(args) -> dict:
    from .lattice_quiver import upsilon, upsilon_weight

    if args.lam is not None:
        return {"result": list(upsilon_weight(_int_list(args.lam, "--lambda"), args.e, args.k))}
    if args.n is None:
        raise DomainError("give --n or --lambda")
    return {"result": upsilon(args.n, args.e, args.k)}


def cmd_residue(args) -> dict:
    from .fock_space import Multipartition, residue

    nu = _int_list(args.nu, "--nu")
    parts = _json_arg(args.lam, "--lambda")
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise DomainError("--lambda must be a list of partitions, e.g. [[2,1],[1]]")
    _positive(args.e, "--e", 2)
    lam = Multipartition.of(*parts)
    alpha = residue(lam, nu, args.e)
    return {"alpha": {str(k): v for k, v in alpha.items}}


def cmd_fock(args) -> dict:
    from .fock_space import WedgeVector, apply_op, chevalley_check, intertwining_check

    nu = _int_list(args.nu, "--nu")
    _positive(args.e, "--e", 2)
    if args.action == "check":
        if args.kind == "intertwining":
            reports = [intertwining_check(k, nu, args.e).to_json() for k in range(args.e)]
        else:
            reports = [chevalley_check(nu, args.e, -(args.e + 1), args.e + 1).to_json()]
        out = {"check": args.kind, "reports": reports, "ok": all(r["ok"] for r in reports)}
        if not out["ok"]:
            raise _Failed(out)
        return out
    if args.op is None or args.i is None or args.vector is None:
        raise DomainError("fock apply needs --op, --i and --vector")
    if not 0 <= args.i < args.e:
        raise DomainError("--i must lie in 0..e-1")
    data = _json_arg(args.vector, "--vector")
    try:
        v = WedgeVector.from_json(data, nu, args.e)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DomainError("--vector must be a list of [weight, rational] pairs") from None
    return {"input": v.to_json(), "op": args.op, "i": args.i, "result": apply_op(args.op, args.i, v).to_json()}


def cmd_hecke(args) -> dict:
    import random

    from .hecke import CyclotomicAlgebra, HeckeAlgebra, involution_relation_check

    _positive(args.d, "--d")
    if args.action == "dim":
        _positive(args.l, "--l")
        alg = CyclotomicAlgebra(args.d, [Fraction(3 + 2 * i) for i in range(args.l)])
        out = {"l": args.l, "d": args.d, "dimension": alg.dimension(),
               "expected": alg.expected_dimension(), "failed_relations": alg.relation_residuals()}
        if out["dimension"] != out["expected"] or out["failed_relations"]:
            raise _Failed(out)
        return out
    A = HeckeAlgebra(args.d)
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.triples):
        x, y, z = (A.random_element(rng) for _ in range(3))
        bad += (x * y) * z != x * (y * z)
    out = {"d": args.d, "seed": args.seed, "triples": args.triples, "associativity_failures": bad,
           "involution": involution_relation_check(A)}
    if args.d >= 3:
        out["braid"] = A.T(1) * A.T(2) * A.T(1) == A.T(2) * A.T(1) * A.T(2)
    if bad or not out.get("braid", True) or out["involution"]["homomorphism"]:
        raise _Failed(out)
    return out


def _bound(args, mu: List[int]):
    from .affine_weyl import AffinePermutation

    if any(m < 0 for m in mu) or sum(mu) < 1:
        raise DomainError("--mu must be a composition with nonnegative parts and positive sum")
    if getattr(args, "e", None) is not None and args.e != len(mu):
        raise DomainError(f"--mu has {len(mu)} parts but --e is {args.e}")
    return AffinePermutation.parse(args.v, sum(mu))


def cmd_center(args) -> dict:
    from .gkm_center import build_center, center_agreement

    mu = _int_list(args.mu, "--mu")
    v = _bound(args, mu)
    if args.action == "compare":
        out = center_agreement(mu, v, args.e, args.mode).to_json()
        if not out["ok"]:
            raise _Failed(out)
        return out
    return build_center(mu, v, args.cutoff, args.e, args.mode).to_json()


def cmd_poincare(args) -> dict:
    from .gkm_center import cell_lengths, cell_poincare

    mu = _int_list(args.mu, "--mu")
    v = _bound(args, mu)
    return {"mu": mu, "v": v.word_string(), "cell_poincare": cell_poincare(mu, v, args.e).to_json(),
            "cells_by_dimension": cell_lengths(mu, v, args.e).to_json()}


def cmd_ktheory(args) -> dict:
    from .graded_ktheory import composition_check, matrix_E_graded, matrix_F, solve_F_shifts

    mu = _int_list(args.mu, "--mu")
    nu = _int_list(args.nu, "--nu")
    v = _bound(args, mu)
    out = {"F": matrix_F(mu, args.k, nu, v).to_json(), "E": matrix_E_graded(mu, args.k, nu, v).to_json(),
           "shifts": solve_F_shifts(mu, args.k, nu, v).to_json(),
           "composition": composition_check(mu, args.k, nu, v)}
    comp = out["composition"]
    if not (comp["ungraded_identity"] and comp["unbalanced_graded_identity"]):
        raise _Failed(out)
    return out


def cmd_qdual(args) -> dict:
    from .quadratic_duality import Presentation, expand, quadratic_dual

    pres = Presentation.from_json(_read_json_file(args.inp))
    dual = quadratic_dual(pres)
    cutoff = _cutoff(args.cutoff)
    out = dual.to_json()
    out["graded_dims"] = expand(dual, cutoff).graded_dims(cutoff)
    out["finite"] = expand(dual, cutoff).finite
    return out


def cmd_koszul(args) -> dict:
    from .quadratic_duality import Presentation, expand, koszul_resolution_check

    pres = Presentation.from_json(_read_json_file(args.inp))
    _positive(args.steps, "--steps", 0)
    alg = expand(pres, _cutoff(max(args.steps, 2) + 4))
    if not alg.finite:
        raise DomainError("algebra did not stabilize below the cutoff; raise LEVELRANK_CUTOFF")
    return koszul_resolution_check(alg, args.steps).to_json()


def cmd_verify_all(args) -> dict:
    from .acceptance import get_profile, report, run

    profile = get_profile(args.profile)
    only = None
    if args.only:
        only = _int_list(args.only, "--only")
        if any(n < 1 or n > 11 for n in only):
            raise DomainError("criteria are numbered 1 to 11")
    results = run(profile, only)
    if not args.json:
        print(f"profile {profile.name} seed {profile.seed} cutoff {profile.cutoff}", file=sys.stderr)
        for r in results:
            print(r.line(), file=sys.stderr)
    doc = report(profile, results)
    if not doc["passed"]:
        raise _Failed(doc)
    return doc


class _Failed(Exception):
    """Carries the output document of a verb whose identity check failed."""

    def __init__(self, doc):
        super().__init__("verification failed")
        self.doc = doc


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levelrank", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output only")
    common.add_argument("--out", help="write the JSON document to this path")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("orbit", parents=[common], help="anti-dominant representative and action")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--w")
    p.add_argument("--sign", choices=("negative", "positive"), default="negative")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("upsilon", parents=[common], help="level-changing integer map")
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_upsilon)

    p = sub.add_parser("residue", parents=[common], help="residue content of a multipartition")
    p.add_argument("--nu", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("fock", parents=[common], help="Chevalley operators on wedge vectors")
    p.add_argument("action", choices=("apply", "check"))
    p.add_argument("--nu", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--op", choices=("e", "f"))
    p.add_argument("--i", type=int)
    p.add_argument("--vector", help="JSON list of [weight, rational] pairs")
    p.add_argument("--kind", choices=("intertwining", "chevalley"), default="intertwining")
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("hecke", parents=[common], help="affine Hecke algebra and cyclotomic quotients")
    p.add_argument("action", choices=("dim", "check"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--triples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hecke)

    for name, func, helptext in (("center", cmd_center, "congruence algebra of a moment graph"),
                                 ("poincare", cmd_poincare, "cell polynomials of a bounded coset set")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "center":
            p.add_argument("action", choices=("build", "compare"))
        p.add_argument("--mu", required=True)
        p.add_argument("--v", required=True, help="bound as a word, e.g. s1*s0")
        p.add_argument("--e", type=int)
        if name == "center":
            p.add_argument("--cutoff", type=int)
            p.add_argument("--mode", choices=("reflections", "simple"), default="reflections")
        p.set_defaults(func=func)

    p = sub.add_parser("ktheory", parents=[common], help="graded matrices of the step functors")
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("qdual", parents=[common], help="quadratic dual of a presentation")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cutoff", type=int, default=4)
    p.set_defaults(func=cmd_qdual)

    p = sub.add_parser("koszul-check", parents=[common], help="linearity of minimal resolutions")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--steps", type=int, default=4)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance corpus")
    p.add_argument("--profile", choices=("smoke", "desk", "extended"), default="desk")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.set_defaults(func=cmd_verify_all)
    return parser


def _emit(doc, args) -> None:
    text = dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except _Failed as failed:
        _emit(failed.doc, args)
        return 3
    except VerificationError as exc:
        print(dumps({"error": "verification", "message": str(exc)}))
        return 3
    except DomainError as exc:
        print(dumps({"error": "domain", "message": str(exc)}))
        return 2
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
