"""Versioned regression fixtures, regenerated from seeds.

``python -m lra.fixtures DIR`` writes every fixture into ``DIR``; the test
suite compares the committed files under ``fixtures/v1`` byte for byte with
freshly generated ones.
"""
from __future__ import annotations

import sys
from pathlib import Path

from . import io
from .algebra import LeibnizAlgebra, Representation
from .deformation import transported_deformation
from .generate import STRATEGIES, Profile, gen_leibniz, gen_nijenhuis_element, gen_twisted_rb
from .linalg import qeye
from .ns import ns_from_nijenhuis

VERSION = "v1"
SEED = 42
# deliberate negative witnesses: checking these must fail
EXPECTED_FAILURES = frozenset({"algebra-idempotent-dim1.json"})


def _deformation_fixture() -> tuple[dict, dict] | None:
    for seed in range(SEED, SEED + 50):
        d = gen_twisted_rb(seed, Profile(2, 2))
        x = gen_nijenhuis_element(d, seed)
        if x is not None:
            tfd = transported_deformation(d, x, 3)
            return io.deformation_to_json(tfd), {"x": io.encode_array(x), "seed": seed}
    return None


def fixture_set() -> dict[str, dict]:
    nil2 = LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}})
    abelian1 = LeibnizAlgebra.abelian(1)
    out = {
        "algebra-abelian-dim3.json": io.algebra_to_json(LeibnizAlgebra.abelian(3)),
        "algebra-nilpotent-dim2.json": io.algebra_to_json(nil2),
        "algebra-idempotent-dim1.json": io.algebra_to_json(LeibnizAlgebra.from_products(1, {(0, 0): {0: 1}})),
        "rep-abelian-dim1-scalar.json": {
            "algebra": io.algebra_to_json(abelian1),
            "rep": io.rep_to_json(Representation.zero(abelian1, 1)),
        },
        f"algebra-seed{SEED}-dim2.json": io.algebra_to_json(gen_leibniz(SEED, Profile(2, 2))),
        "ns-nilpotent-dim2-twice-identity.json": io.ns_to_json(ns_from_nijenhuis(nil2, 2 * qeye(2))),
    }
    for strategy in STRATEGIES:
        dims = (2, 3) if strategy == "pad" else (2, 2)
        d = gen_twisted_rb(SEED, Profile(*dims), strategy)
        out[f"trb-{strategy.replace('_', '-')}-seed{SEED}.json"] = io.trb_to_json(d)
    deformation = _deformation_fixture()
    if deformation is not None:
        tfd, x = deformation
        out[f"deformation-transported-seed{x['seed']}.json"] = tfd
        out[f"nijenhuis-element-seed{x['seed']}.json"] = {"x": x["x"]}
    return out


def write_fixtures(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, obj in sorted(fixture_set().items()):
        path = directory / name
        path.write_text(io.dumps(obj))
        written.append(path)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else f"fixtures/{VERSION}"
    for p in write_fixtures(target):
        print(p)
