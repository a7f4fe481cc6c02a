"""Acceptance criteria 1-10.

Each criterion is a function returning a JSON-serializable summary (counts,
verdicts and digests of the instances it ran on). The tests assert on the
summaries, enforce the runtime budgets and print one pass/fail line per
criterion; criterion 10 recomputes every summary and compares the written
report files byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import time

import numpy as np
from conftest import ACCEPTANCE_LINES
from oracles import cochain_dict, coboundary as oracle_coboundary, tolist, twisted_rb_holds

from lra import io
from lra.algebra import (
    Cochain,
    LeibnizAlgebra,
    Representation,
    check_leibniz,
    check_representation,
    deformed_bracket,
)
from lra.cli import main as cli_main
from lra.cohomology import coboundary, cohomology_dims, is_cocycle
from lra.deformation import (
    EquivalenceDatum,
    LinearDeformation,
    check_equivalence,
    check_formal_deformation,
    check_linear_deformation,
    infinitesimal_is_cocycle,
    transported_deformation,
    trivialization_step,
)
from lra.generate import (
    Profile,
    gen_cochain,
    gen_cocycle,
    gen_equivalent_pair,
    gen_leibniz,
    gen_linear_deformation,
    gen_negative_trb,
    gen_nijenhuis,
    gen_nijenhuis_element,
    gen_representation,
    gen_twisted_rb,
    rand_invertible,
    rng_for,
)
from lra.ns import (
    canonical_trb,
    check_ns_axioms,
    compatible_ns_from_invertible,
    ns_from_nijenhuis,
    ns_from_twisted_rb,
    subadjacent,
)
from lra.rota_baxter import (
    check_twisted_rb,
    dk_coboundary,
    dk_coboundary_generic,
    dk_of_element,
    from_invertible_cochain,
    from_nijenhuis,
    gauge_bracket_isomorphism,
    gauge_transform,
    graph_is_subalgebra,
    induced_bracket,
    induced_representation,
    intertwines,
    psi_h_isomorphism,
    shift_by_cochain,
)

BUDGET_S = {1: 10, 2: 30, 3: 60}


def _digest(*objs) -> str:
    h = hashlib.sha256()
    for obj in objs:
        h.update(io.dumps(obj).encode())
    return h.hexdigest()[:16]


def _all_zero(a) -> bool:
    return all(v == 0 for v in np.asarray(a).flat)


def _profiles():
    """Dimension profiles cycled through by the suites (dim_g, dim_v <= 3)."""
    return [Profile(g, v) for g in (1, 2, 3) for v in (1, 2, 3)]


# ----------------------------------------------------------------- criteria


def criterion_1() -> dict:
    """d o d = 0 on 50 (algebra, rep, cochain) instances; d also matches the loop oracle."""
    profiles = _profiles()
    results, digests = [], []
    for i in range(50):
        p = profiles[i % len(profiles)]
        degree = i % 3
        g = gen_leibniz(1000 + i, p)
        rep = gen_representation(1000 + i, g, p.dim_v)
        f = gen_cochain(rep, degree, 1000 + i)
        df = coboundary(f)
        oracle = oracle_coboundary(
            tolist(g.bracket), tolist(rep.rho_l), tolist(rep.rho_r), cochain_dict(tolist(f.values), degree, g.dim), degree
        )
        matches = all(tolist(df.values[idx]) == val for idx, val in oracle.items())
        results.append(_all_zero(coboundary(df).values) and matches)
        digests.append(_digest(io.algebra_to_json(g), io.rep_to_json(rep), io.cochain_to_json(f)))
    return {"instances": len(results), "passed": sum(results), "digest": _digest(digests)}


def criterion_2() -> dict:
    """check_twisted_rb and graph_is_subalgebra agree on 100 instances, >= 20 of them negative."""
    profiles = _profiles()
    rows = []
    for i in range(100):
        p = profiles[i % len(profiles)]
        if i % 4 == 3:
            d = gen_negative_trb(2000 + i, p)
            assert d is not None
        else:
            d = gen_twisted_rb(2000 + i, p)
        direct = check_twisted_rb(d).holds
        graph = graph_is_subalgebra(d).holds
        oracle = twisted_rb_holds(tolist(d.algebra.bracket), tolist(d.rep.rho_l), tolist(d.rep.rho_r), tolist(d.h.values), tolist(d.k))
        rows.append((direct, graph, oracle, _digest(io.trb_to_json(d))))
    return {
        "instances": len(rows),
        "agree": sum(a == b == c for a, b, c, _ in rows),
        "negatives": sum(not a for a, _, _, _ in rows),
        "digest": _digest([r[3] for r in rows]),
    }


def _verified_bundles(n: int, base_seed: int):
    profiles = [p for p in _profiles() if p.dim_g >= 1]
    return [gen_twisted_rb(base_seed + i, profiles[i % len(profiles)]) for i in range(n)]


def criterion_3() -> dict:
    """Induced bracket is Leibniz, induced representation is one, d_K o d_K = 0 (degrees <= 2)."""
    ok, digests = [], []
    for i, d in enumerate(_verified_bundles(54, 3000)):
        assert check_twisted_rb(d).holds
        ib = induced_bracket(d)
        r = induced_representation(d)
        complex_ok = True
        for degree in (0, 1, 2):
            f = gen_cochain(r, degree, 3000 + i)
            complex_ok &= _all_zero(dk_coboundary_generic(d, dk_coboundary_generic(d, f)))
        ok.append(check_leibniz(ib).holds and check_representation(r).holds and complex_ok)
        digests.append(_digest(io.trb_to_json(d)))
    return {"instances": len(ok), "passed": sum(ok), "digest": _digest(digests)}


def criterion_4() -> dict:
    """Explicit d_K and the generic coboundary of the induced data agree entry-exactly."""
    agree, digests = [], []
    for i, d in enumerate(_verified_bundles(50, 4000)):
        r = induced_representation(d)
        same = True
        for degree in (0, 1, 2):
            f = gen_cochain(r, degree, 4000 + i)
            same &= np.array_equal(dk_coboundary(d, f), dk_coboundary_generic(d, f))
        agree.append(same)
        digests.append(_digest(io.trb_to_json(d)))
    return {"instances": len(agree), "agree": sum(agree), "digest": _digest(digests)}


def criterion_5() -> dict:
    """K = h^{-1} for 25 invertible h and Id: g -> g_N for 25 Nijenhuis N."""
    inv_ok, nij_ok, digests = [], [], []
    for i in range(25):
        p = Profile(1 + i % 3, 1 + i % 3)
        g = gen_leibniz(5000 + i, p)
        rep = gen_representation(5000 + i, g, g.dim)
        h = Cochain.from_matrix(rep, rand_invertible(rng_for(5000 + i), p, g.dim))
        d = from_invertible_cochain(rep, h)
        inv_ok.append(check_twisted_rb(d).holds)
        digests.append(_digest(io.trb_to_json(d)))
    for i in range(25):
        g = gen_leibniz(5100 + i, Profile(1 + i % 3, 1))
        n = gen_nijenhuis(5100 + i, g)
        d = from_nijenhuis(g, n)
        nij_ok.append(check_twisted_rb(d).holds and is_cocycle(d.h).holds)
        digests.append(_digest(io.trb_to_json(d)))
    return {"invertible": [len(inv_ok), sum(inv_ok)], "nijenhuis": [len(nij_ok), sum(nij_ok)], "digest": _digest(digests)}


def criterion_6() -> dict:
    """Psi_h, shift_by_cochain and gauge_transform on 25 admissible instances each."""
    psi_ok, shift_ok, gauge_ok, digests = [], [], [], []
    seed = 6000
    while len(psi_ok) < 25:
        p = _profiles()[seed % 9]
        g = gen_leibniz(seed, p)
        rep = gen_representation(seed, g, p.dim_v)
        hc = gen_cocycle(rep, 2, seed)
        h = gen_cochain(rep, 1, seed + 1)
        src, dst, psi = psi_h_isomorphism(rep, hc, h)
        psi_ok.append(intertwines(src, dst, psi).holds and check_leibniz(dst).holds)
        digests.append(_digest(io.rep_to_json(rep), io.cochain_to_json(h)))
        seed += 1
    seed = 6100
    while len(shift_ok) < 25:
        d = gen_twisted_rb(seed, _profiles()[seed % 9])
        h = gen_cochain(d.rep, 1, seed)
        out = shift_by_cochain(d, h)
        seed += 1
        if out is None:
            continue
        shift_ok.append(check_twisted_rb(out).holds and out.h == d.h + coboundary(h) and is_cocycle(out.h).holds)
        digests.append(_digest(io.trb_to_json(out)))
    seed, nonzero = 6200, 0
    while len(gauge_ok) < 25:
        d = gen_twisted_rb(seed, _profiles()[seed % 9])
        b = gen_cocycle(d.rep, 1, seed)
        out = gauge_transform(d, b)
        seed += 1
        if out is None:
            continue
        nonzero += not b.is_zero()
        gauge_ok.append(check_twisted_rb(out).holds and out.h == d.h and gauge_bracket_isomorphism(d, b).holds)
        digests.append(_digest(io.trb_to_json(out)))
    return {
        "psi_h": [len(psi_ok), sum(psi_ok)],
        "shift": [len(shift_ok), sum(shift_ok)],
        "gauge": [len(gauge_ok), sum(gauge_ok)],
        "gauge_nonzero_b": nonzero,
        "digest": _digest(digests),
    }


def criterion_7() -> dict:
    """Linear deformations are cocycles; successful equivalences differ by d_K(x); trivialization."""
    lin_total = lin_cocycle = 0
    eq_success = eq_exact = 0
    digests = []
    for seed in range(7000, 7060):
        d = gen_twisted_rb(seed, Profile(2, 2))
        k1 = gen_linear_deformation(d, seed)
        if k1 is not None:
            ld = LinearDeformation(d, k1)
            assert check_linear_deformation(ld).holds
            lin_total += 1
            lin_cocycle += infinitesimal_is_cocycle(ld).holds
            digests.append(_digest(io.encode_array(k1)))
        pair = gen_equivalent_pair(d, seed)
        if pair is not None:
            ka, kb, x = pair
            rep = check_equivalence(LinearDeformation(d, ka), LinearDeformation(d, kb), EquivalenceDatum(x))
            if rep.holds:
                eq_success += 1
                eq_exact += np.array_equal(ka - kb, dk_of_element(d, x))
                digests.append(_digest(io.encode_array(x)))
    triv_ok, seed = [], 7100
    while len(triv_ok) < 10:
        d = gen_twisted_rb(seed, Profile(2, 2))
        x = gen_nijenhuis_element(d, seed)
        seed += 1
        if x is None:
            continue
        tfd = transported_deformation(d, x, 3)
        assert np.array_equal(tfd.k1, -dk_of_element(d, x))
        out = trivialization_step(tfd, x)
        triv_ok.append(_all_zero(out.k1) and check_formal_deformation(tfd).holds and check_formal_deformation(out).holds)
        digests.append(_digest(io.deformation_to_json(out)))
    return {
        "linear": [lin_total, lin_cocycle],
        "equivalence": [eq_success, eq_exact],
        "trivialization": [len(triv_ok), sum(triv_ok)],
        "digest": _digest(digests),
    }


def criterion_8() -> dict:
    """NS-Leibniz constructions: axioms, subadjacent brackets, round trip, compatible structure."""
    rows, digests = [], []
    for i in range(25):
        g = gen_leibniz(8000 + i, Profile(1 + i % 3, 1))
        n = gen_nijenhuis(8000 + i, g)
        a = ns_from_nijenhuis(g, n)
        rows.append(check_ns_axioms(a).holds and subadjacent(a) == deformed_bracket(g, n))
        digests.append(_digest(io.ns_to_json(a)))
    round_trips = compatible = compatible_total = 0
    for i, d in enumerate(_verified_bundles(25, 8100)):
        a = ns_from_twisted_rb(d)
        rows.append(check_ns_axioms(a).holds and subadjacent(a) == induced_bracket(d))
        round_trips += ns_from_twisted_rb(canonical_trb(a)) == a
        if d.dim_g == d.dim_v:
            c = compatible_ns_from_invertible(d)
            if c is not None:
                compatible_total += 1
                compatible += check_ns_axioms(c).holds and np.array_equal(c.star, d.algebra.bracket)
        digests.append(_digest(io.ns_to_json(a)))
    return {
        "instances": len(rows),
        "passed": sum(rows),
        "round_trips": round_trips,
        "compatible": [compatible_total, compatible],
        "digest": _digest(digests),
    }


def criterion_9() -> dict:
    """Known values."""
    rep = Representation.zero(LeibnizAlgebra.abelian(1), 1)
    dims = [cohomology_dims(rep, n).dim_cohomology for n in range(4)]
    nil = check_leibniz(LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}}))
    idem = check_leibniz(LeibnizAlgebra.from_products(1, {(0, 0): {0: 1}}))
    return {
        "abelian_scalar_h": dims,
        "nilpotent_dim2_holds": nil.holds,
        "idempotent_dim1_holds": idem.holds,
        "idempotent_witness": idem.first_failure["indices"] if idem.first_failure else None,
    }


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}
_SUMMARIES: dict[int, dict] = {}


def _record(n: int, ok: bool, text: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _evaluate(n: int) -> tuple[dict, float]:
    start = time.perf_counter()
    summary = CRITERIA[n]()
    elapsed = time.perf_counter() - start
    _SUMMARIES[n] = summary
    return summary, elapsed


def _check(n: int, predicate, describe) -> None:
    summary, elapsed = _evaluate(n)
    ok = bool(predicate(summary))
    budget = BUDGET_S.get(n)
    in_time = budget is None or elapsed < budget
    _record(n, ok and in_time, f"{describe(summary)} [{elapsed:.1f}s{f' / {budget}s' if budget else ''}]")
    assert ok, summary
    assert in_time, f"criterion {n} took {elapsed:.1f}s (budget {budget}s)"


# -------------------------------------------------------------------- tests


def test_criterion_1_complex():
    _check(1, lambda s: s["instances"] == 50 and s["passed"] == 50, lambda s: f"dd = 0 on {s['passed']}/{s['instances']} instances")


def test_criterion_2_graph_equivalence():
    _check(
        2,
        lambda s: s["instances"] == 100 and s["agree"] == 100 and s["negatives"] >= 20,
        lambda s: f"direct/graph/oracle agree on {s['agree']}/{s['instances']} ({s['negatives']} negatives)",
    )


def test_criterion_3_induced_structures():
    _check(
        3,
        lambda s: s["instances"] >= 50 and s["passed"] == s["instances"],
        lambda s: f"induced bracket, representation and d_K complex on {s['passed']}/{s['instances']}",
    )


def test_criterion_4_dual_path():
    _check(4, lambda s: s["instances"] == 50 and s["agree"] == 50, lambda s: f"explicit and generic d_K agree on {s['agree']}/{s['instances']}")


def test_criterion_5_examples():
    _check(
        5,
        lambda s: s["invertible"] == [25, 25] and s["nijenhuis"] == [25, 25],
        lambda s: f"h^-1: {s['invertible'][1]}/25, Nijenhuis: {s['nijenhuis'][1]}/25",
    )


def test_criterion_6_shift_and_gauge():
    _check(
        6,
        lambda s: s["psi_h"] == [25, 25] and s["shift"] == [25, 25] and s["gauge"] == [25, 25] and s["gauge_nonzero_b"] > 0,
        lambda s: f"Psi_h {s['psi_h'][1]}/25, shift {s['shift'][1]}/25, gauge {s['gauge'][1]}/25 ({s['gauge_nonzero_b']} with B != 0)",
    )


def test_criterion_7_deformations():
    _check(
        7,
        lambda s: s["linear"][0] > 0
        and s["linear"][0] == s["linear"][1]
        and s["equivalence"][0] > 0
        and s["equivalence"][0] == s["equivalence"][1]
        and s["trivialization"] == [10, 10],
        lambda s: (
            f"{s['linear'][1]}/{s['linear'][0]} linear deformations are cocycles, "
            f"{s['equivalence'][1]}/{s['equivalence'][0]} equivalences exact, "
            f"{s['trivialization'][1]}/10 trivializations"
        ),
    )


def test_criterion_8_ns():
    _check(
        8,
        lambda s: s["instances"] == 50 and s["passed"] == 50 and s["round_trips"] == 25 and s["compatible"][0] > 0 and s["compatible"][0] == s["compatible"][1],
        lambda s: f"{s['passed']}/{s['instances']} NS structures, {s['round_trips']}/25 round trips, {s['compatible'][1]}/{s['compatible'][0]} compatible",
    )


def test_criterion_9_known_values():
    _check(
        9,
        lambda s: s["abelian_scalar_h"] == [1, 1, 1, 1]
        and s["nilpotent_dim2_holds"]
        and not s["idempotent_dim1_holds"]
        and s["idempotent_witness"] == [0, 0, 0],
        lambda s: f"H^n = {s['abelian_scalar_h']}, witness {s['idempotent_witness']}",
    )


CLI_RUNS = [
    ("check", "leibniz", "--algebra", "algebra-seed42-dim2.json"),
    ("check", "trb", "--bundle", "trb-nijenhuis-seed42.json"),
    ("check", "graph", "--bundle", "trb-shift-seed42.json"),
    ("cohomology", "--bundle", "rep-abelian-dim1-scalar.json", "--degree", "2"),
    ("cohomology", "--of-k", "--bundle", "trb-invertible-cochain-seed42.json", "--degree", "1"),
    ("build", "ns-from-trb", "--bundle", "trb-pad-seed42.json"),
    ("deform", "check-formal", "--deformation", "deformation-transported-seed43.json"),
    ("gen", "trb", "--seed", "42"),
]


def _write_reports(directory, fixtures_dir, capsys) -> list:
    directory.mkdir()
    summaries = {n: CRITERIA[n]() for n in CRITERIA}
    (directory / "acceptance.json").write_text(io.dumps({str(k): v for k, v in summaries.items()}))
    for i, argv in enumerate(CLI_RUNS):
        resolved = [str(fixtures_dir / a) if a.endswith(".json") else a for a in argv]
        cli_main(["--no-timing", *resolved])
        (directory / f"cli-{i}.json").write_text(capsys.readouterr().out)
    return sorted(directory.iterdir())


def test_criterion_10_determinism(tmp_path, fixtures_dir, capsys):
    start = time.perf_counter()
    first = _write_reports(tmp_path / "run1", fixtures_dir, capsys)
    second = _write_reports(tmp_path / "run2", fixtures_dir, capsys)
    identical = [a.name == b.name and a.read_bytes() == b.read_bytes() for a, b in zip(first, second)]
    ok = len(first) == len(second) == len(CLI_RUNS) + 1 and all(identical)
    # the summaries from the criterion tests above must match the rerun too
    rerun = {int(k): v for k, v in json.loads((tmp_path / "run2" / "acceptance.json").read_text()).items()}
    consistent = all(rerun[n] == _SUMMARIES[n] for n in _SUMMARIES)
    ok = ok and consistent
    _record(
        10,
        ok,
        f"{sum(identical)}/{len(identical)} report files byte-identical across two runs"
        f"{'' if consistent else ' (summaries differ from first pass)'} [{time.perf_counter() - start:.1f}s]",
    )
    capsys.readouterr()
    assert ok
