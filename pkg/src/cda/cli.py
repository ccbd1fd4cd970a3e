"""Command-line front end: exact checks on symbols, lattices and algebra instances.

Every subcommand prints one JSON report on stdout and exits with 0 when all
checks pass, 1 when a verification fails and 2 on bad input.  Diagnostics go
to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .exactalg import QQ, field_from_json, is_unimodular
from .lattice import (
    InvalidSymbol,
    NoConventionMatches,
    Symbol,
    delta,
    enumerate_symbols,
    lattice_report,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# documented sweep limits; larger values are rejected as input errors
SWEEP_LIMITS = {"max_rank": 14, "max_d": 3, "max_t": 4, "max_p": 5}


class ParseError(ValueError):
    """Bad input; ``position`` is a line:column or a JSON path."""

    def __init__(self, message, position="$"):
        super().__init__(f"{position}: {message}")
        self.position = position


@dataclass
class RunReport:
    command: str
    inputs: object
    checks: list = field(default_factory=list)
    matrices: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)

    def check(self, name, ok, details=None):
        self.checks.append({"name": name, "pass": bool(ok), "details": details})
        return ok

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "ok": self.ok,
            "checks": self.checks,
            "matrices": self.matrices,
            "results": self.results,
        }


# input ---------------------------------------------------------------------------


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None


def read_input(args):
    if args.json is not None and args.data is not None:
        raise ParseError("give either inline JSON or --json, not both")
    if args.json is not None:
        try:
            with open(args.json, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(f"cannot read {args.json}: {e.strerror}") from None
    elif args.data is not None:
        text = args.data
    else:
        raise ParseError("no input; pass JSON inline or with --json")
    return load_json(text)


def parse_symbol(obj) -> Symbol:
    if not isinstance(obj, dict):
        raise ParseError("symbol must be a JSON object")
    arms = obj.get("arms")
    if not isinstance(arms, list):
        raise ParseError("'arms' must be a list", "$.arms")
    for k, a in enumerate(arms):
        if not isinstance(a, dict):
            raise ParseError("arm must be an object", f"$.arms[{k}]")
        for key in ("p", "e", "f", "d"):
            if key in a and (not isinstance(a[key], int) or isinstance(a[key], bool)):
                raise ParseError("must be an integer", f"$.arms[{k}].{key}")
    try:
        return Symbol.from_json(obj)
    except (InvalidSymbol, TypeError, ValueError) as e:
        raise ParseError(str(e)) from None


def parse_field(obj, override):
    try:
        if override is not None:
            return field_from_json(override)
        return field_from_json(obj)
    except (ValueError, TypeError) as e:
        raise ParseError(str(e), "--field" if override is not None else "$.field") from None


def parse_instance(obj, field_override=None):
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    weights = obj.get("weights")
    if not isinstance(weights, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in weights
    ):
        raise ParseError("'weights' must be a list of integers", "$.weights")
    lambdas = obj.get("lambdas", obj.get("points"))
    if not isinstance(lambdas, list):
        raise ParseError("'lambdas' must be a list", "$.lambdas")
    for k, x in enumerate(lambdas):
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise ParseError("point must be an integer or a string", f"$.lambdas[{k}]")
    F = parse_field(obj.get("field", "Q"), field_override)
    from .boundquiver.constructions import parse_points

    try:
        pts = parse_points(lambdas, F)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e), "$.lambdas") from None
    if len(weights) != len(pts):
        raise ParseError("one weight per point is required", "$.weights")
    if not pts:
        raise ParseError("at least one point is required", "$.lambdas")
    for k, p in enumerate(weights):
        if p < 2:
            raise ParseError("weights must be >= 2", f"$.weights[{k}]")
    return weights, [str(x) for x in lambdas], F


def _bound(obj, key, path, default=0):
    v = obj.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError("must be a non-negative integer", f"{path}.{key}")
    if v > SWEEP_LIMITS[key]:
        raise ParseError(f"exceeds the limit {SWEEP_LIMITS[key]}", f"{path}.{key}")
    return v


def parse_bounds(obj):
    if not isinstance(obj, dict):
        raise ParseError("bounds must be a JSON object")
    b = {"max_rank": _bound(obj, "max_rank", "$"), "max_d": _bound(obj, "max_d", "$", 1)}
    inst = obj.get("instances", {})
    if not isinstance(inst, dict):
        raise ParseError("'instances' must be an object", "$.instances")
    points = inst.get("points", ["0", "1", "2", "3", "inf"])
    if not isinstance(points, list):
        raise ParseError("'points' must be a list", "$.instances.points")
    tilt = inst.get("tilt", False)
    if not isinstance(tilt, bool):
        raise ParseError("'tilt' must be a boolean", "$.instances.tilt")
    b["instances"] = {
        "max_t": _bound(inst, "max_t", "$.instances"),
        "max_p": _bound(inst, "max_p", "$.instances", 2),
        "points": [str(x) for x in points],
        "tilt": tilt,
    }
    return b


# commands ------------------------------------------------------------------------


def cmd_symbol(s: Symbol) -> RunReport:
    rep = RunReport("symbol", s.to_json())
    data = lattice_report(s)
    for name, ok in data.pop("checks"):
        rep.check(name, ok)
    rep.matrices = data.pop("matrices")
    rep.results = data
    return rep


def lattice_checks(s: Symbol) -> list:
    """Lattice axioms, display conventions and the type table for one symbol."""
    try:
        data = lattice_report(s)
    except NoConventionMatches as e:
        return [("gram displays reproduced", False, str(e))]
    out = [(_generic(name), ok, None) for name, ok in data["checks"]]
    out.append(("gram displays reproduced", True, data["index_convention"]))
    return out


def _generic(name: str) -> str:
    # "arm2: tau^3 s = s" -> "arm: tau^p s = s", so sweeps aggregate by kind
    if name.startswith("arm") and ":" in name:
        rest = name.split(":", 1)[1].strip()
        return "arm: tau^p s = s" if rest.startswith("tau^") else "arm: " + rest
    return name


def cmd_lattice_verify(obj) -> RunReport:
    """One symbol, or every enumerated symbol when given bounds."""
    if isinstance(obj, dict) and "arms" in obj:
        symbols = [parse_symbol(obj)]
    else:
        b = parse_bounds(obj)
        symbols = enumerate_symbols(b["max_rank"], b["max_d"])
    rep = RunReport("lattice-verify", obj)
    failures = []
    conventions = set()
    for s in symbols:
        for name, ok, details in lattice_checks(s):
            if not ok:
                failures.append({"symbol": str(s), "check": name, "details": details})
            elif name == "gram displays reproduced":
                conventions.update(details.values())
    rep.check("symbols evaluated", True, len(symbols))
    rep.check("all lattice checks pass", not failures, failures[:20])
    rep.check("one index convention for all symbols", len(conventions) <= 1, sorted(conventions))
    rep.results = {"symbols": len(symbols), "index_conventions": sorted(conventions)}
    return rep


def cmd_congruence(s: Symbol) -> RunReport:
    from .speciesdims import (
        cartan_cd,
        cd_labels,
        congruence_report,
        corrected_simple_table,
        gram_simple_basis,
        lemma_simple_table,
        table_mismatches,
    )

    rep = RunReport("congruence", s.to_json())
    for name, ok in congruence_report(s):
        rep.check(name, ok)
    if s.condition6:
        g = gram_simple_basis(cartan_cd(s))
        labels = cd_labels(s.weights)
        rep.check(
            "simple-basis Euler values of B",
            g == corrected_simple_table(s),
            table_mismatches(g, corrected_simple_table(s), labels),
        )
        rep.results["lemma_table_differences"] = table_mismatches(g, lemma_simple_table(s), labels)
        rep.matrices["gram_simple_basis_cd"] = g.to_json()
    return rep


def _tilt_checks(rep: RunReport, weights, pts, F, target):
    from .boundquiver import (
        build_tilting_apr,
        build_tilting_canonical,
        canonical_algebra,
        cd_algebra,
        check_conditions,
        dim_vector_matrix,
        end_dims,
        ext_dim,
        is_cotilting,
        self_ext_vanishes,
        simple,
        tilting_report,
    )
    from .speciesdims import cartan_squid, gram_simple_basis

    conds = check_conditions(weights, pts, F)
    if not rep.check("conditions hold", all(conds.values()), {str(k): v for k, v in conds.items()}):
        return
    if target == "cd":
        T = build_tilting_apr(weights, pts, F)
        B = cd_algebra(weights, pts, F)
    else:
        T = build_tilting_canonical(weights, pts, F)
        B = canonical_algebra(weights, pts, F)
    A = T[0].alg
    tr = tilting_report(A, T)
    rep.check(
        "classical tilting (pd <= 1)",
        tr.ok,
        {
            "projective_dims": tr.projective_dims,
            "ext1_nonzero": [list(x) for x in tr.ext_nonzero],
            "pairwise_non_isomorphic": tr.pairwise_non_isomorphic,
            "indecomposable": tr.indecomposable,
        },
    )
    if target == "canonical":
        rep.results["cotilting"] = is_cotilting(A, T)
        rep.results["self_ext_vanishes"] = self_ext_vanishes(T)
    E = end_dims(T)
    rep.check("end_dims equals target Cartan", E == B.cartan())
    S = dim_vector_matrix(T)
    gs = gram_simple_basis(cartan_squid(Symbol.simply_laced(weights)))
    rep.check("base change unimodular", S.is_integral() and is_unimodular(S))
    rep.check("base change carries Euler form to target", S.T @ gs @ S == B.cartan().T)
    if target == "cd":
        ext2 = ext_dim(simple(B, "F"), simple(B, "G"), 2)
        rep.check("Ext^2(S_F, S_G) over B has dim 2", ext2 == 2, ext2)
    rep.matrices.update(
        end_dims=E.to_json(),
        target_cartan=B.cartan().to_json(),
        dim_vectors=S.to_json(),
    )
    rep.results["summand_order"] = list(B.vertices)


def cmd_tilt(instance, target: str, field_override=None) -> RunReport:
    weights, raw, F = parse_instance(instance, field_override)
    from .boundquiver.constructions import parse_points

    pts = parse_points(raw, F)
    if target == "cd" and any(str(p) == "inf" for p in pts):
        raise ParseError("the Coxeter-Dynkin target needs finite points", "$.lambdas")
    rep = RunReport("tilt", dict(instance, target=target))
    _tilt_checks(rep, weights, pts, F, target)
    return rep


def _symbol_suite(s: Symbol) -> list:
    from .speciesdims import (
        cartan_cd,
        congruence_report,
        corrected_simple_table,
        gram_simple_basis,
    )

    out = lattice_checks(s)
    out += [(name, ok, None) for name, ok in congruence_report(s)]
    if s.condition6:
        ok = gram_simple_basis(cartan_cd(s)) == corrected_simple_table(s)
        out.append(("simple-basis Euler values of B", ok, None))
    return out


def _instance_suite(job) -> list:
    weights, pts, F, tilt = job
    from .boundquiver import check_conditions
    from .boundquiver.constructions import parse_points

    pts = parse_points(pts, F)
    conds = check_conditions(weights, pts, F)
    vals = [conds[k] for k in (1, 2, 3, 4, 5, 6)]
    out = [("conditions agree", len(set(vals)) == 1, vals)]
    if tilt and all(vals):
        targets = ["canonical"] if any(str(p) == "inf" for p in pts) else ["cd", "canonical"]
        if len(pts) < 2:
            targets = [t for t in targets if t != "canonical"]
        for target in targets:
            rep = RunReport("tilt", None)
            _tilt_checks(rep, weights, pts, F, target)
            out += [(f"{target}: {c['name']}", c["pass"], None) for c in rep.checks]
    return out


def threads() -> int:
    try:
        n = int(os.environ.get("CDA_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else min(8, os.cpu_count() or 1)


def cmd_sweep(bounds, field_override=None) -> RunReport:
    from .boundquiver.constructions import enumerate_instances, parse_points

    b = parse_bounds(bounds)
    F = parse_field("Q", field_override)
    inst = b["instances"]
    try:
        parse_points(inst["points"], F)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e), "$.instances.points") from None
    symbols = enumerate_symbols(b["max_rank"], b["max_d"]) if b["max_rank"] else []
    jobs = []
    if inst["max_t"]:
        for w, pts in enumerate_instances(inst["max_t"], inst["max_p"], inst["points"]):
            jobs.append((w, pts, F, inst["tilt"]))
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        sym_results = list(pool.map(_symbol_suite, symbols))
        inst_results = list(pool.map(_instance_suite, jobs))
    rep = RunReport("sweep", bounds)
    counts = {}
    failures = []
    for label, results in [(str(s), r) for s, r in zip(symbols, sym_results)] + [
        (json.dumps({"weights": j[0], "lambdas": j[1]}), r) for j, r in zip(jobs, inst_results)
    ]:
        for name, ok, _ in results:
            c = counts.setdefault(name, [0, 0])
            c[0 if ok else 1] += 1
            if not ok:
                failures.append({"case": label, "check": name})
    tubular = sum(1 for s in symbols if delta(s) == 0)
    rep.check("cases evaluated", True, {"symbols": len(symbols), "instances": len(jobs)})
    for name in sorted(counts):
        passed, failed = counts[name]
        rep.check(name, failed == 0, {"passed": passed, "failed": failed})
    rep.results = {
        "symbols": len(symbols),
        "instances": len(jobs),
        "tubular_symbols": tubular,
        "failures": failures[:50],
    }
    return rep


# entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cda", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_field=True):
        p.add_argument("data", nargs="?", help="input JSON given inline")
        p.add_argument("--json", metavar="PATH", help="read the input JSON from a file")
        p.add_argument("--out", metavar="PATH", help="also write the report to a file")
        if with_field:
            p.add_argument("--field", metavar="Q|Fp:<p>", help="override the ground field")
        return p

    common(sub.add_parser("symbol", help="invariants and Gram matrices of a symbol"), False)
    common(sub.add_parser("lattice-verify", help="lattice axioms for a symbol or bounds"), False)
    common(sub.add_parser("congruence", help="congruences between the four Gram forms"), False)
    t = common(sub.add_parser("tilt", help="verify a tilting module on an instance"))
    t.add_argument("--target", choices=["cd", "canonical"], default="cd")
    common(sub.add_parser("sweep", help="run every suite over bounded enumerations"))
    return ap


def run(argv=None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    try:
        obj = read_input(args)
        if args.command == "symbol":
            rep = cmd_symbol(parse_symbol(obj))
        elif args.command == "lattice-verify":
            rep = cmd_lattice_verify(obj)
        elif args.command == "congruence":
            rep = cmd_congruence(parse_symbol(obj))
        elif args.command == "tilt":
            rep = cmd_tilt(obj, args.target, args.field)
        else:
            rep = cmd_sweep(obj, args.field)
    except ParseError as e:
        print(f"cda: input error at {e}", file=sys.stderr)
        return EXIT_INPUT, None
    out = rep.to_json()
    text = json.dumps(out, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if not rep.ok:
        bad = [c["name"] for c in rep.checks if not c["pass"]]
        print(f"cda: {len(bad)} check(s) failed: {', '.join(bad)}", file=sys.stderr)
    return (EXIT_OK if rep.ok else EXIT_FAIL), out


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
