"""JSON command-line surface over the library.

All output is deterministic: rationals print as decimal-free num/den strings,
Gaussian rationals as {"re", "im"} pairs, series per the exponent/coefficient
quintuple schema.  Exit codes: 0 success, 2 validation error, 3 capacity
error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import factorial, inf

from . import characters, covergraph, hodge, hurwitz, orbifold, wallcross
from .errors import CapacityError, ValidationError
from .partitions import Partition, partitions_of
from .series import GaussianRational, I, ONE, Series

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}") from exc


def gauss_json(g: GaussianRational) -> dict:
    return {"re": frac_str(g.re), "im": frac_str(g.im)}


def series_json(s: Series) -> dict:
    coeffs = [
        [e, c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]
        for e, c in sorted(s.coeffs.items())
    ]
    return {"var": s.var, "floor": s.floor, "order": s.order, "coeffs": coeffs}


def series_from_json(obj: dict) -> Series:
    try:
        coeffs = {
            int(e): GaussianRational(Fraction(rn, rd), Fraction(im_n, im_d))
            for e, rn, rd, im_n, im_d in obj["coeffs"]
        }
        return Series(obj["var"], coeffs, obj.get("order"), obj.get("floor"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad series JSON: {exc}") from exc


def _load_json_arg(text: str):
    """Parse inline JSON, or read from a file when prefixed with @."""
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad JSON argument: {exc}") from exc


def _branch_unit(name: str) -> GaussianRational:
    table = {"1": ONE, "+1": ONE, "-1": -ONE, "i": I, "+i": I, "-i": -I}
    if name not in table:
        raise ValidationError("branch must be one of 1, -1, i, -i")
    return table[name]


def _parse_partition(obj) -> Partition:
    if not isinstance(obj, list):
        raise ValidationError("a partition must be a JSON array of integers")
    return Partition(obj)


# -- subcommand handlers ---------------------------------------------------


def _cmd_partitions(args) -> dict:
    parts = partitions_of(args.n)
    return {"n": args.n, "count": len(parts), "partitions": [list(p) for p in parts]}


def _cmd_chartable(args):
    table = characters.character_table(args.n)
    labels = [list(p) for p in table.irreps]
    matrix = [[table.chi(lam, mu) for mu in table.classes] for lam in table.irreps]
    if args.format == "csv":
        lines = ["irrep\\class," + ",".join("+".join(map(str, mu)) for mu in table.classes)]
        for lam, row in zip(table.irreps, matrix):
            lines.append("+".join(map(str, lam)) + "," + ",".join(map(str, row)))
        return "\n".join(lines) + "\n"
    return {"n": args.n, "irreps": labels, "classes": labels, "matrix": matrix}


def _cmd_hurwitz(args) -> dict:
    profiles = [_parse_partition(p) for p in _load_json_arg(args.profiles)]
    n = args.degree
    if args.simple_branch:
        if n < 2:
            raise ValidationError("--simple-branch needs degree >= 2")
        profiles += [Partition([2] + [1] * (n - 2))] * args.simple_branch
    problem = hurwitz.HurwitzProblem(args.genus, n, tuple(profiles), args.connected)
    if args.connected:
        count = hurwitz.transitive_tuple_count(problem)
        value = hurwitz.hurwitz_connected(problem)
    else:
        value = hurwitz.hurwitz_disconnected(problem)
        count_frac = value * factorial(n)
        assert count_frac.denominator == 1
        count = count_frac.numerator
    return {
        "value": frac_str(value),
        "value_num": value.numerator,
        "value_den": value.denominator,
        "tuple_count": count,
    }


def _cmd_series_op(args) -> dict:
    a = series_from_json(_load_json_arg(args.input))
    op = args.op
    if op in ("add", "mul"):
        if args.rhs is None:
            raise ValidationError(f"--rhs required for {op}")
        b = series_from_json(_load_json_arg(args.rhs))
        out = a + b if op == "add" else a * b
    elif op == "neg":
        out = -a
    elif op == "invert":
        out = a.invert(args.order)
    elif op == "exp":
        from .series import exp_series

        out = exp_series(a, args.order)
    elif op == "log":
        from .series import log_series

        out = log_series(a, args.order)
    elif op == "pow":
        from .series import rational_power

        if args.exponent is None:
            raise ValidationError("--exponent required for pow")
        out = rational_power(a, parse_frac(args.exponent), args.order)
    elif op == "subst-exp":
        from .series import subst_exp

        if args.order is None:
            raise ValidationError("--order required for subst-exp")
        out = subst_exp(a, _branch_unit(args.branch), args.order)
    elif op == "pade":
        from .series import pade

        res = pade(a, args.p, args.q)
        return {
            "num": [gauss_json(c) for c in res.num],
            "den": [gauss_json(c) for c in res.den],
            "residual_exponent": res.residual_exponent,
        }
    else:
        raise ValidationError(f"unknown series op {op!r}")
    return series_json(out)


def _cmd_hodge_f(args) -> dict:
    hs = hodge.hodge_series(parse_frac(args.a), parse_frac(args.b), args.order)
    return series_json(hs.series)


def _cmd_i1(args) -> dict:
    return series_json(hodge.log_sin_half_norm(args.order))


def _cmd_crc(args) -> dict:
    payload = series_from_json(_load_json_arg(args.input))
    unit = _branch_unit(args.branch)
    ages = tuple(int(x) for x in args.ages.split(",") if x != "") if args.ages else ()
    route_dt, route_gw, discrepancy = wallcross.bridge_pipelines(
        args.c, args.genus, args.points, ages, payload,
        order=args.order, unit=unit, pmax=args.p, qmax=args.q,
    )
    return {
        "dt_pipeline": series_json(route_dt),
        "gw_pipeline": series_json(route_gw),
        "discrepancy": series_json(discrepancy),
    }


def _cmd_equivalence(args) -> dict:
    unit = _branch_unit(args.branch)
    rng = random.Random(args.seed)
    ages = tuple(int(x) for x in args.ages.split(",") if x != "") if args.ages else ()
    reference = None
    independent = True
    for _ in range(args.trials):
        num_deg = rng.randint(0, 2)
        den_deg = rng.randint(0, 2)
        num = {e: GaussianRational(Fraction(rng.randint(-3, 3) or 1)) for e in range(num_deg + 1)}
        den = {0: ONE}
        for e in range(1, den_deg + 1):
            den[e] = GaussianRational(Fraction(rng.randint(-2, 2)))
        expansion = Series("y", num) * Series("y", den).invert(args.order + 8)
        disc = wallcross.equivalence_check(
            args.c, args.genus, args.points, ages, expansion,
            order=args.order, unit=unit, pmax=num_deg, qmax=den_deg,
        )
        probe = disc.truncate(min(disc.order, args.order - 2))
        if reference is None:
            reference = probe
        elif probe != reference.truncate(probe.order):
            independent = False
    return {
        "c": args.c,
        "branch": args.branch,
        "trials": args.trials,
        "payload_independent": independent,
        "discrepancy": series_json(reference),
    }


def _cmd_orbifold_basis(args) -> dict:
    betti = [int(b) for b in args.betti.split(",")]
    labels = orbifold.GradedLabelSet.from_betti(betti)
    basis = orbifold.orbifold_basis(args.n, labels)
    entries = []
    for w, deg in basis:
        scalar, _ = orbifold.to_nakajima(w)
        if args.normalize_aut:
            from .partitions import aut_order

            scalar = scalar * Fraction(1, aut_order(w.partition))
        entries.append(
            {
                "partition": list(w.partition),
                "labels": [labels.labels[i][0] for _, i in w.pairs],
                "degree": deg,
                "nakajima_scalar": gauss_json(scalar),
            }
        )
    return {"n": args.n, "betti": betti, "count": len(entries), "basis": entries}


def _cmd_poincare(args) -> dict:
    betti = [int(b) for b in args.betti.split(",")]
    labels = orbifold.GradedLabelSet.from_betti(betti)
    poly = orbifold.poincare_orbifold(args.n, labels)
    return {"n": args.n, "betti": betti, "coefficients": [[d, poly[d]] for d in sorted(poly)]}


def graph_from_json(obj: dict) -> covergraph.CoverGraph:
    try:
        targets = tuple(
            covergraph.TargetComponent(t["id"], int(t["genus"]), tuple(t.get("markings", ())))
            for t in obj["target"]
        )
        edges = tuple((str(a), str(b)) for a, b in obj.get("target_edges", ()))
        sources = []
        for s in obj["source"]:
            if s.get("contracted"):
                sources.append(
                    covergraph.SourceComponent(
                        id=s["id"],
                        over=s["over"],
                        genus=int(s["genus"]),
                        contracted=True,
                        at=s["at"],
                        attach_count=int(s.get("attach_count", 1)),
                        l_degree=int(s.get("L_degree", 0)),
                    )
                )
            else:
                sources.append(
                    covergraph.SourceComponent(
                        id=s["id"],
                        over=s["over"],
                        genus=int(s["genus"]),
                        degree=int(s["degree"]),
                        l_degree=int(s.get("L_degree", 0)),
                        profiles=tuple((pt, Partition(mu)) for pt, mu in s.get("profiles", {}).items()),
                    )
                )
        nodes = tuple(
            covergraph.SmoothNode(nd["over"], nd["at"], (nd["components"][0], nd["components"][1]))
            for nd in obj.get("smooth_nodes", ())
        )
        return covergraph.CoverGraph(targets, edges, tuple(sources), nodes)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad graph JSON: {exc}") from exc


def _cmd_covergraph_check(args) -> dict:
    graph = graph_from_json(_load_json_arg(args.input))
    d0 = inf if args.d0 in (None, "inf") else int(args.d0)
    genus, m, consistent = covergraph.riemann_hurwitz_check(graph)
    ok, violations = covergraph.is_admissible(graph, d0, args.bridge_strict)
    br = covergraph.branch_divisor(graph)
    return {
        "degree": graph.degree,
        "branch_divisor": {f"{tid}:{pt}": v for (tid, pt), v in sorted(br.items())},
        "riemann_hurwitz": {"source_genus": genus, "branch_degree": m, "consistent": consistent},
        "admissible": {"d0": "inf" if d0 == inf else d0, "verdict": ok, "violations": violations},
        "classify": covergraph.classify_extremal(graph),
        "wall_spectrum": covergraph.wall_spectrum(graph),
    }


def _cmd_walls(args) -> dict:
    return {"degree": args.degree, "walls": [{"d0": d0, "epsilon0": tag} for d0, tag in wallcross.walls(args.degree)]}


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverwalk", description=__doc__)
    parser.add_argument("--output", help="write JSON to this file instead of stdout")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("partitions", help="list partitions of n in reverse-lexicographic order")
    p.add_argument("n", type=int)

    p = sub.add_parser("chartable", help="character table of the symmetric group")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("hurwitz", help="weighted branched-cover counts")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--profiles", default="[]")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--simple-branch", type=int, default=0)

    p = sub.add_parser("series-op", help="arithmetic on truncated Laurent series")
    p.add_argument("--op", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--rhs")
    p.add_argument("--order", type=int)
    p.add_argument("--exponent")
    p.add_argument("--branch", default="i")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=2)

    p = sub.add_parser("hodge-f", help="closed-form Hodge integral series")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--order", type=int, default=12)

    p = sub.add_parser("i1", help="log of the normalized sine series")
    p.add_argument("--order", type=int, default=12)

    p = sub.add_parser("crc", help="run both transform pipelines and their ratio")
    p.add_argument("--input", required=True)
    p.add_argument("--c", type=int, default=0)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--points", type=int, default=0)
    p.add_argument("--ages", default="")
    p.add_argument("--branch", default="i")
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--q", type=int, default=4)

    p = sub.add_parser("equivalence", help="payload-independence self-test of the bridge")
    p.add_argument("--c", type=int, default=0)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--points", type=int, default=0)
    p.add_argument("--ages", default="")
    p.add_argument("--branch", default="i")
    p.add_argument("--order", type=int, default=14)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("orbifold-basis", help="weighted-partition basis with degrees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--betti", required=True)
    p.add_argument("--normalize-aut", action="store_true")

    p = sub.add_parser("poincare", help="graded dimensions of the orbifold cohomology")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--betti", required=True)

    p = sub.add_parser("covergraph-check", help="validate and analyze a cover graph")
    p.add_argument("--input", required=True)
    p.add_argument("--d0", default=None)
    p.add_argument("--bridge-strict", action="store_true")

    p = sub.add_parser("walls", help="integer chamber boundaries up to a degree")
    p.add_argument("--degree", type=int, required=True)

    return parser


_HANDLERS = {
    "partitions": _cmd_partitions,
    "chartable": _cmd_chartable,
    "hurwitz": _cmd_hurwitz,
    "series-op": _cmd_series_op,
    "hodge-f": _cmd_hodge_f,
    "i1": _cmd_i1,
    "crc": _cmd_crc,
    "equivalence": _cmd_equivalence,
    "orbifold-basis": _cmd_orbifold_basis,
    "poincare": _cmd_poincare,
    "covergraph-check": _cmd_covergraph_check,
    "walls": _cmd_walls,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code else EXIT_OK
    if not args.command:
        parser.print_usage()
        return EXIT_VALIDATION
    try:
        result = _HANDLERS[args.command](args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
