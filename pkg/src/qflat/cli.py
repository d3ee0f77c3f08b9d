"""Command-line front end.

Exit status: 0 when every check passed, 1 when a check failed, 2 for bad
input (unparsable JSON, malformed arguments, unsupported requests).
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import FractionalIdeal, is_squarefree
from .complement import complement_invariants, complement_space
from .ideals import NotRepresentedError, discriminant_data, discriminant_ideal, section_ideal
from .inputs import InputError, load_space, parse_rational, parse_vector
from .qspace import candidate_primes, core_dimension_local, invariants

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
        return
    _print_table(obj)


def _print_table(obj, indent: str = "") -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                print(f"{indent}{k}:")
                _print_table(v, indent + "  ")
            else:
                print(f"{indent}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                print(indent + "  ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
            else:
                print(f"{indent}{_scalar(item)}")
    else:
        print(f"{indent}{_scalar(obj)}")


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _invariants_json(space) -> dict:
    inv = invariants(space)
    out = inv.to_json()
    out["t_p"] = {str(p): core_dimension_local(space, p) for p in candidate_primes(space)}
    return out


def cmd_invariants(args) -> int:
    space = load_space(args.space)
    _emit(_invariants_json(space), args.format)
    return EXIT_OK


def cmd_complement(args) -> int:
    space = load_space(args.space)
    inv = invariants(space)
    if args.h is not None:
        h = parse_vector(args.h)
        q = space.norm(h)
        formula = complement_invariants(inv, q)
        restricted = invariants(complement_space(space, h))
        out = {"q": str(q), "formula": formula.to_json(), "restriction": restricted.to_json(),
               "match": formula == restricted}
        _emit(out, args.format)
        return EXIT_OK if out["match"] else EXIT_FAIL
    q = parse_rational(args.q)
    _emit({"q": str(q), "formula": complement_invariants(inv, q).to_json()}, args.format)
    return EXIT_OK


def cmd_disc_ideal(args) -> int:
    space = load_space(args.space)
    inv = invariants(space)
    out = {"invariants": inv.to_json(), "formula": discriminant_ideal(inv).to_json()}
    status = EXIT_OK
    if not args.no_constructive:
        from .lattice import maximal_lattice
        out["constructive"] = maximal_lattice(space).discriminant().to_json()
        out["match"] = out["constructive"] == out["formula"]
        status = EXIT_OK if out["match"] else EXIT_FAIL
    _emit(out, args.format)
    return status


def cmd_bq(args) -> int:
    space = load_space(args.space)
    inv = invariants(space)
    q = parse_rational(args.q)
    data = discriminant_data(inv, q)
    out = {"q": str(q), "complement": complement_invariants(inv, q).to_json()}
    out.update(data.to_json())
    _emit(out, args.format)
    return EXIT_OK


def cmd_section(args) -> int:
    space = load_space(args.space)
    inv = invariants(space)
    if args.h is not None:
        from .lattice import verify_section_formula
        check = verify_section_formula(space, parse_vector(args.h), inv=inv)
        _emit(check.to_json(), args.format)
        return EXIT_OK if check.match else EXIT_FAIL
    if args.q is None or args.two_phi is None:
        raise InputError("section needs --h, or both --q and --two-phi")
    rep = section_ideal(inv, parse_rational(args.q), FractionalIdeal.of(parse_rational(args.two_phi)))
    _emit({"q": args.q, **rep.to_json()}, args.format)
    return EXIT_OK


def cmd_maximal(args) -> int:
    from .lattice import maximal_lattice
    space = load_space(args.space)
    lat = maximal_lattice(space)
    out = lat.to_json()
    out["discriminant"] = lat.discriminant().to_json()
    out["formula"] = discriminant_ideal(invariants(space)).to_json()
    _emit(out, args.format)
    return EXIT_OK if out["discriminant"] == out["formula"] else EXIT_FAIL


def _definite_lattice(space, which: str):
    from .lattice import ZLattice, maximal_lattice
    from .qspace import signature
    i, j = signature(space)
    if j:
        raise InputError("enumeration needs a positive definite space")
    return ZLattice.standard(space) if which == "standard" else maximal_lattice(space)


def cmd_enumerate(args) -> int:
    from .lattice.enumerate import enumerate_coordinates, to_ambient
    space = load_space(args.space)
    lat = _definite_lattice(space, args.lattice)
    q = parse_rational(args.q)
    coords = enumerate_coordinates(lat.gram, q)
    out = {"q": str(q), "count": len(coords)}
    shown = coords if args.limit is None else coords[: args.limit]
    out["vectors"] = [{"coords": [int(v) for v in row],
                       "ambient": [str(x) for x in to_ambient(lat, row)]} for row in shown]
    _emit(out, args.format)
    return EXIT_OK


def _sweep_values(kind: str, bound: int) -> list[int]:
    from sympy import primerange
    if kind == "primes":
        return list(primerange(2, bound + 1))
    return [q for q in range(1, bound + 1) if is_squarefree(q)]


def cmd_verify(args) -> int:
    from .lattice import verify_section_formula
    from .lattice.enumerate import enumerate_coordinates, to_ambient
    from .lattice.verify import sweep
    space = load_space(args.space)
    lat = _definite_lattice(space, "maximal")
    inv = invariants(space)
    if args.sweep:
        qs = _sweep_values(args.sweep, args.bound)
        all_h = True
    else:
        if not args.q:
            raise InputError("verify needs --q or --sweep")
        qs = [parse_rational(x) for x in args.q.split(",")]
        all_h = args.all_h
    rows = []
    ok = True
    if all_h:
        for res in sweep(space, qs, samples=args.samples):
            rows.extend(res.rows())
            ok = ok and res.match
    else:
        for q in qs:
            coords = enumerate_coordinates(lat.gram, q)
            if len(coords) == 0:
                rows.append({"q": str(q), "count": 0, "match": None})
                continue
            check = verify_section_formula(space, to_ambient(lat, coords[0]), lat, inv)
            rows.append({"q": str(q), "phi_h_L": str(check.two_phi_hL / 2), "count": 1,
                         "formula": check.formula.index_ideal.to_json(),
                         "oracle": check.oracle_index.to_json(), "match": check.match})
            ok = ok and check.match
    _emit({"rows": rows, "all_match": ok}, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fixtures(args) -> int:
    from .fixtures import load_fixtures, run_all
    if args.list:
        for f in load_fixtures(args.file):
            print(f"{f.name}\t{f.anchor}")
        return EXIT_OK
    results = run_all(args.file)
    passed = sum(r.passed for r in results)
    for r in results:
        if not r.passed:
            detail = r.error or f"got {json.dumps(r.got)}"
            print(f"FAIL {r.fixture.name}: {detail}")
    print(f"{passed}/{len(results)} fixtures pass")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qflat", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def space_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--space", required=True,
                       help="JSON file, inline JSON, identity:n, diag:a,b,... or hyperbolic:")
        p.set_defaults(func=fn)
        return p

    space_cmd("invariants", cmd_invariants, "invariants (n, d, ram, s_inf) and core dimensions")
    p = space_cmd("complement", cmd_complement, "invariants of the complement of q or of h")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--q")
    g.add_argument("--h", help='comma separated vector, e.g. "1,1,0"')
    p = space_cmd("disc-ideal", cmd_disc_ideal, "discriminant ideal of maximal lattices")
    p.add_argument("--no-constructive", action="store_true")
    p = space_cmd("bq", cmd_bq, "the ideal b(q)")
    p.add_argument("--q", required=True)
    p = space_cmd("section", cmd_section, "the index [M / L cap W]")
    p.add_argument("--q")
    p.add_argument("--two-phi", help="generator of 2 phi(h, L)")
    p.add_argument("--h")
    space_cmd("maximal", cmd_maximal, "a maximal integral lattice")
    p = space_cmd("enumerate", cmd_enumerate, "vectors of norm q in a definite lattice")
    p.add_argument("--q", required=True)
    p.add_argument("--lattice", choices=("maximal", "standard"), default="maximal")
    p.add_argument("--limit", type=int)
    p = space_cmd("verify", cmd_verify, "section formula against the lattice construction")
    p.add_argument("--q", help="comma separated values of q")
    p.add_argument("--all-h", action="store_true", help="check every h of norm q")
    p.add_argument("--sweep", choices=("primes", "squarefree"))
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--samples", type=int, default=3,
                   help="explicit constructions per class of phi(h, L)")
    p = sub.add_parser("fixtures", help="check the shipped reference values")
    p.add_argument("--list", action="store_true")
    p.add_argument("--file")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotRepresentedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
