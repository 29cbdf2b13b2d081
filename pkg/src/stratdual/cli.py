"""Command-line interface.

    stratdual verify <input> [--perversity SPEC] [--strategy lex|reverse-lex]
                     [--checks LIST] [--format json|csv|text] [--seed N]
    stratdual examples list
    stratdual examples show <name>

<input> is a path to an input document, or the name of a bundled example.
Reports are deterministic: identical (input, config, seed) produce byte
identical output.  Exit status: 0 all requested checks pass, 1 a verdict
failed, 2 an error occurred (its machine-readable code is in the report).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import examples
from .cochains import PairComplexes, integrate, simplicial_cochains
from .cone import compare, intersection_space_cone
from .cotruncation import check_product_vanishing, cotruncate, truncated_duality
from .duality import (
    ladder_check,
    lefschetz_pairing,
    main_pairing,
    stokes_vanishing_probe,
    well_definedness_probe,
)
from .errors import BadPerversityError, ParseError, StratdualError
from .model import (
    NAMED_PERVERSITIES,
    build_model,
    complementary,
    cutoff_degree,
    named_perversity,
    validate_perversity,
)
from .simplicial import decompose, fundamental_chain, parse_complex

SCHEMA_VERSION = 1
ALL_CHECKS = ("model", "duality", "ladder", "lefschetz",
              "truncated-duality", "oracle", "properties")


def resolve_input(ref: str):
    path = Path(ref)
    if path.exists():
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read input document: {exc}") from exc
        return document, path.name
    if ref in examples.DECOMPOSITION_DOCUMENTS:
        return examples.get_document(ref), ref
    raise ParseError(f"input {ref!r} is neither a file nor a bundled example")


def resolve_perversity(text: str, n: int):
    if text in NAMED_PERVERSITIES:
        return named_perversity(text, n)
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise BadPerversityError(f"cannot parse perversity {text!r}") from exc
    if len(values) != n - 1:
        raise BadPerversityError(
            f"explicit perversity needs {n - 1} values for codimensions 2..{n}")
    return validate_perversity(values)


def _check_model(D, mp, mq, strategy):
    other = "reverse-lex" if strategy == "lex" else "lex"
    mp_other = build_model(D, mp.perversity, other, pair=mp.pair)
    mq_other = build_model(D, mq.perversity, other, pair=mq.pair)
    betti_p, betti_q = list(mp.betti()), list(mq.betti())
    choice_independent = (mp_other.betti() == mp.betti()
                          and mq_other.betti() == mq.betti())
    symmetric = all(betti_p[r] == betti_q[D.n - r] for r in range(D.n + 1))
    ok = (choice_independent and symmetric
          and betti_p[0] == 0 and betti_q[0] == 0)
    return {
        "pass": ok,
        "betti_p": betti_p,
        "betti_q": betti_q,
        "cutoff_p": mp.k,
        "cutoff_q": mq.k,
        "choice_independent": choice_independent,
        "complementarity_symmetric": symmetric,
        "h0_vanishes": betti_p[0] == 0 and betti_q[0] == 0,
    }


def _check_oracle(D, mp, mq, strategy):
    results = {}
    ok = True
    for tag, model in (("p", mp), ("q", mq)):
        cone = intersection_space_cone(D, model.k, strategy)
        match, model_b, cone_b = compare(model, cone)
        ok = ok and match
        results[tag] = {
            "match": match,
            "model_betti": list(model_b),
            "cone_betti": list(cone_b),
        }
    return {"pass": ok, "sides": results}


def _check_duality(mp, mq, mu, seed):
    report = main_pairing(mp, mq, mu)
    stable = well_definedness_probe(mp, mq, mu, trials=100, seed=seed)
    return {
        "pass": report.passed and stable,
        "well_defined": stable,
        "pairing": report.to_jsonable(),
    }


def _check_ladder(mp, mq, mu):
    records = [ladder_check(mp, mq, mu, r) for r in range(mp.decomposition.n + 1)]
    return {
        "pass": all(rec.passed for rec in records),
        "degrees": [rec.to_jsonable() for rec in records],
    }


def _check_lefschetz(pair, mu):
    report = lefschetz_pairing(pair, mu)
    return {"pass": report.passed, "pairing": report.to_jsonable()}


def _check_truncated_duality(D, pair, mu, strategy):
    from .duality import boundary_link_chain

    c = D.n - 1
    lam = boundary_link_chain(pair, mu)
    sub_unpadded = simplicial_cochains(D.L)
    windows = {}
    ok = True
    for k in range(1, c + 1):
        l = c + 1 - k
        report = truncated_duality(D.L, k, l, lam=lam, strategy=strategy,
                                   cochains=sub_unpadded)
        ok = ok and report.passed
        windows[f"k={k},l={l}"] = report.to_jsonable()
    return {"pass": ok, "windows": windows}


def _check_properties(D, pair, mp, mq, seed):
    rng = random.Random(seed)
    stokes_failures = 0
    complexes = {"X": D.X, "M": D.M, "L": D.L}
    for K in complexes.values():
        C, _ = simplicial_cochains(K)
        for _ in range(1000):
            r = rng.randint(0, max(C.top - 1, 0))
            x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r)))
            xi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r + 1)))
            lhs = integrate(C.diff(r).apply(x), xi)
            rhs = integrate(x, K.boundary_matrix(r + 1).apply(xi))
            if lhs != -((-1) ** r) * rhs:
                stokes_failures += 1
    sub, sub_cup = simplicial_cochains(D.L)
    c = D.L.dimension
    vanishing_ok = True
    cts = {k: cotruncate(sub, k) for k in range(1, c + 2)}
    for k in cts:
        for l in cts:
            for r in range(1, c + 1):
                for s in range(1, c + 1):
                    if k + l > r + s:
                        if not check_product_vanishing(sub_cup, cts[k], cts[l], r, s):
                            vanishing_ok = False
    boundary_products_vanish = stokes_vanishing_probe(mp, mq, trials=50, seed=seed)
    euler_ok = all(
        K.euler_characteristic() == sum(
            (-1) ** r * b for r, b in enumerate(simplicial_cochains(K)[0].betti()))
        for K in complexes.values())
    ok = (stokes_failures == 0 and vanishing_ok and boundary_products_vanish
          and euler_ok)
    return {
        "pass": ok,
        "stokes_trials": 3000,
        "stokes_failures": stokes_failures,
        "product_vanishing": vanishing_ok,
        "boundary_products_vanish": boundary_products_vanish,
        "euler_characteristic": euler_ok,
    }


def run_verification(target: str, perversity: str = "zero",
                     strategy: str = "lex", checks=None, seed: int = 0):
    """Run the requested checks; returns (report dict, exit status)."""
    checks = list(checks) if checks else list(ALL_CHECKS)
    config = {
        "input": target,
        "perversity": perversity,
        "strategy": strategy,
        "checks": checks,
        "seed": seed,
    }
    report = {"schema_version": SCHEMA_VERSION, "config": config}
    try:
        unknown = [c for c in checks if c not in ALL_CHECKS]
        if unknown:
            raise ParseError(f"unknown checks: {unknown}")
        document, name = resolve_input(target)
        report["input"] = name
        X = parse_complex(document)
        if "singular_vertex" not in document:
            raise ParseError("document missing key: singular_vertex")
        D = decompose(X, document["singular_vertex"])
        p = resolve_perversity(perversity, D.n)
        q = complementary(p)
        report["perversity_values"] = {
            "p": [p(s) for s in range(2, D.n + 1)],
            "q": [q(s) for s in range(2, D.n + 1)],
            "cutoff_p": cutoff_degree(p, D.n),
            "cutoff_q": cutoff_degree(q, D.n),
        }
        mu = fundamental_chain(D)
        pair = PairComplexes(D.M, D.L)
        mp = build_model(D, p, strategy, pair=pair)
        mq = build_model(D, q, strategy, pair=pair)
        results = {}
        for check in checks:
            if check == "model":
                results[check] = _check_model(D, mp, mq, strategy)
            elif check == "oracle":
                results[check] = _check_oracle(D, mp, mq, strategy)
            elif check == "duality":
                results[check] = _check_duality(mp, mq, mu, seed)
            elif check == "ladder":
                results[check] = _check_ladder(mp, mq, mu)
            elif check == "lefschetz":
                results[check] = _check_lefschetz(pair, mu)
            elif check == "truncated-duality":
                results[check] = _check_truncated_duality(D, pair, mu, strategy)
            elif check == "properties":
                results[check] = _check_properties(D, pair, mp, mq, seed)
        report["checks"] = results
        report["pass"] = all(section["pass"] for section in results.values())
        return report, (0 if report["pass"] else 1)
    except StratdualError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        report["pass"] = False
        return report, 2


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "text":
        return _render_text(report)
    raise ParseError(f"unknown format {fmt!r}")


def _render_csv(report: dict) -> str:
    lines = ["section,item,value"]
    lines.append(f"run,schema_version,{report['schema_version']}")
    lines.append(f"run,pass,{str(report.get('pass', False)).lower()}")
    if "error" in report:
        lines.append(f"error,code,{report['error']['code']}")
        return "\n".join(lines) + "\n"
    for check in sorted(report.get("checks", {})):
        section = report["checks"][check]
        lines.append(f"{check},pass,{str(section['pass']).lower()}")
        for key in sorted(section):
            value = section[key]
            if isinstance(value, (bool, int, str)):
                if key != "pass":
                    lines.append(f"{check},{key},{str(value).lower()}")
            elif isinstance(value, list) and all(isinstance(v, int) for v in value):
                lines.append(f"{check},{key},{' '.join(map(str, value))}")
    return "\n".join(lines) + "\n"


def _render_text(report: dict) -> str:
    lines = [f"stratdual report (schema {report['schema_version']})"]
    if "error" in report:
        lines.append(f"ERROR {report['error']['code']}: {report['error']['message']}")
        return "\n".join(lines) + "\n"
    lines.append(f"input: {report.get('input', '?')}")
    pv = report.get("perversity_values", {})
    if pv:
        lines.append(f"perversity p: {pv['p']} (cutoff {pv['cutoff_p']}), "
                     f"q: {pv['q']} (cutoff {pv['cutoff_q']})")
    for check in report.get("config", {}).get("checks", []):
        section = report.get("checks", {}).get(check)
        if section is None:
            continue
        verdict = "pass" if section["pass"] else "FAIL"
        lines.append(f"  {check:20s} {verdict}")
    lines.append("overall: " + ("pass" if report.get("pass") else "FAIL"))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stratdual", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verifications on an input complex")
    verify.add_argument("input", help="input document path or bundled example name")
    verify.add_argument("--perversity", default="zero",
                        help="zero|top|lower-middle|upper-middle or values for s=2..n, e.g. 0,1")
    verify.add_argument("--strategy", default="lex", choices=["lex", "reverse-lex"])
    verify.add_argument("--checks", default=",".join(ALL_CHECKS),
                        help="comma-separated subset of: " + ", ".join(ALL_CHECKS))
    verify.add_argument("--format", default="json", choices=["json", "csv", "text"])
    verify.add_argument("--seed", type=int, default=0)

    ex = sub.add_parser("examples", help="inspect bundled examples")
    ex_sub = ex.add_subparsers(dest="examples_command", required=True)
    ex_sub.add_parser("list", help="list bundled decompositions")
    show = ex_sub.add_parser("show", help="print a bundled input document")
    show.add_argument("name")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "examples":
        if args.examples_command == "list":
            sys.stdout.write(json.dumps(examples.catalog(), sort_keys=True, indent=2) + "\n")
            return 0
        if args.name not in examples.DECOMPOSITION_DOCUMENTS:
            sys.stdout.write(json.dumps(
                {"error": {"code": "PARSE", "message": f"unknown example {args.name!r}"}},
                sort_keys=True) + "\n")
            return 2
        sys.stdout.write(json.dumps(examples.get_document(args.name),
                                    sort_keys=True, indent=2) + "\n")
        return 0

    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    report, status = run_verification(
        args.input, perversity=args.perversity, strategy=args.strategy,
        checks=checks, seed=args.seed)
    sys.stdout.write(render_report(report, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
