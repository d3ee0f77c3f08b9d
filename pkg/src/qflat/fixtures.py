"""Reference values shipped with the package and the code that checks them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arith import as_fraction, sorted_places, xi
from .complement import complement_invariants
from .ideals import b_of_q, b_scaling_check, discriminant_data, discriminant_ideal, section_ideal
from .inputs import load_space
from .qspace import characteristic_algebra, core_dimension_local, invariants


@dataclass(frozen=True)
class Fixture:
    name: str
    anchor: str
    kind: str
    args: dict
    expected: object


@dataclass(frozen=True)
class FixtureResult:
    fixture: Fixture
    passed: bool
    got: object
    error: str | None = None


def default_path():
    return resources.files("qflat") / "data" / "fixtures.json"


def load_fixtures(path=None) -> list[Fixture]:
    text = Path(path).read_text() if path else default_path().read_text()
    data = json.loads(text)
    return [Fixture(f["name"], f.get("anchor", ""), f["kind"], f["args"], f["expected"])
            for f in data["fixtures"]]


def _ram_json(ram) -> list:
    return sorted_places(ram)


def _eval_xi(args):
    return xi(as_fraction(args["b"]), int(args["p"]))


def _eval_invariants(args):
    return invariants(load_space(args["space"])).to_json()


def _eval_core_dims(args):
    space = load_space(args["space"])
    return {str(p): core_dimension_local(space, p) for p in args["primes"]}


def _eval_ram(args):
    return _ram_json(characteristic_algebra(load_space(args["space"])))


def _eval_complement(args):
    inv = invariants(load_space(args["space"]))
    return {str(q): complement_invariants(inv, q).to_json() for q in args["qs"]}


def _eval_disc(args):
    return discriminant_ideal(invariants(load_space(args["space"]))).to_json()


def _eval_disc_complement(args):
    inv = invariants(load_space(args["space"]))
    return {str(q): discriminant_data(inv, q).disc_W.to_json() for q in args["qs"]}


def _eval_b(args):
    inv = invariants(load_space(args["space"]))
    return {str(q): b_of_q(inv, q).to_json() for q in args["qs"]}


def _eval_scaling(args):
    return [b_scaling_check(invariants(load_space(c["space"])), as_fraction(c["q"]), as_fraction(c["c"]))
            for c in args["cases"]]


def _eval_section(args):
    out = []
    for c in args["cases"]:
        rep = section_ideal(invariants(load_space(c["space"])), as_fraction(c["q"]), as_fraction(c["two_phi"]))
        out.append({"index": rep.index_ideal.to_json(), "maximal": rep.maximal})
    return out


EVALUATORS = {
    "xi": _eval_xi,
    "invariants": _eval_invariants,
    "core_dims": _eval_core_dims,
    "ram": _eval_ram,
    "complement": _eval_complement,
    "disc": _eval_disc,
    "disc_complement": _eval_disc_complement,
    "b_of_q": _eval_b,
    "scaling": _eval_scaling,
    "section": _eval_section,
}


def run_fixture(fx: Fixture) -> FixtureResult:
    fn = EVALUATORS.get(fx.kind)
    if fn is None:
        return FixtureResult(fx, False, None, f"unknown fixture kind {fx.kind!r}")
    try:
        got = fn(fx.args)
    except Exception as exc:  # a fixture failure must be reported, not raised
        return FixtureResult(fx, False, None, f"{type(exc).__name__}: {exc}")
    return FixtureResult(fx, got == fx.expected, got)


def run_all(path=None) -> list[FixtureResult]:
    return [run_fixture(f) for f in load_fixtures(path)]
