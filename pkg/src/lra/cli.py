"""Command-line front end.

Every command prints one JSON report on stdout::

    {"command": ..., "holds": ..., "details": {...}, "elapsed_ms": ...}

Exit status: 0 when the check holds or the construction succeeded, 1 when a
check fails or a mathematical precondition is not met, 2 on unreadable or
malformed input. Constructions put their output under
``details["result"]``; such reports can be fed back to any command in place
of the object they carry.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import io
from .algebra import (
    Cochain,
    check_leibniz,
    check_nijenhuis,
    check_representation,
    deformed_bracket,
    regular_representation,
    twisted_semidirect,
)
from .cohomology import CONVENTIONS, cohomology_dims, is_cocycle, two_cocycle_condition
from .deformation import (
    LinearDeformation,
    check_equivalence,
    check_formal_deformation,
    check_formal_equivalence,
    check_linear_deformation,
    check_nijenhuis_element,
    infinitesimal_is_cocycle,
    trivialization_step,
)
from .fixtures import EXPECTED_FAILURES, VERSION
from .generate import STRATEGIES, GenerationError, Profile, gen_leibniz, gen_representation, gen_twisted_rb
from .ns import (
    canonical_trb,
    check_ns_axioms,
    compatible_ns_from_invertible,
    ns_from_nijenhuis,
    ns_from_twisted_rb,
)
from .report import CheckReport
from .rota_baxter import (
    NotACocycleError,
    check_morphism,
    check_twisted_rb,
    gauge_bracket_isomorphism,
    gauge_transform,
    graph_is_subalgebra,
    induced_bracket,
    induced_representation,
    k_cohomology_dims,
    shift_by_cochain,
)


class PreconditionError(Exception):
    """A mathematical hypothesis of the requested operation does not hold."""


def _bundle(args, *parts: str) -> io.Bundle:
    """Merge ``--bundle`` with per-part files given on the command line."""
    b = io.Bundle.load(args.bundle) if getattr(args, "bundle", None) else io.Bundle()
    for part in parts:
        src = getattr(args, part, None)
        if src is not None:
            obj, _ = io.read_json(src)
            b.set(part, io.unwrap_report(obj))
    return b


def _require(rep: CheckReport, what: str) -> None:
    if not rep.holds:
        raise PreconditionError(f"{what} (failed {rep.which}: {rep.to_dict()['first_failure']})")


def _verified_trb(b: io.Bundle):
    d = b.trb()
    _require(check_representation(d.rep), "the representation axioms fail")
    _require(is_cocycle(d.h), "H is not a 2-cocycle")
    return d


def _verified_trb_operator(b: io.Bundle):
    d = _verified_trb(b)
    _require(check_twisted_rb(d), "K is not a twisted Rota-Baxter operator")
    return d


def _map(b: io.Bundle, key: str, rows: int, cols: int):
    return io.linear_map_from_json(b.raw(key), rows, cols, key)


def _cochain(b: io.Bundle, key: str, rep, degree: int | None = None) -> Cochain:
    f = io.guarded(io.cochain_from_json, b.raw(key), rep)
    if degree is not None and f.degree != degree:
        raise io.InputError(f"{key} must be a {degree}-cochain, got degree {f.degree}")
    return f


# ------------------------------------------------------------------- checks


def cmd_check_leibniz(args):
    return check_leibniz(_bundle(args, "algebra").algebra()), {}


def cmd_check_rep(args):
    b = _bundle(args, "algebra", "rep")
    return check_representation(b.rep()), {}


def cmd_check_nijenhuis(args):
    b = _bundle(args, "algebra", "n")
    g = b.algebra()
    return check_nijenhuis(g, _map(b, "n", g.dim, g.dim)), {}


def cmd_check_cocycle(args):
    b = _bundle(args, "algebra", "rep", "cochain", "cocycle")
    rep = b.rep()
    if b.has("cochain"):
        f = _cochain(b, "cochain", rep)
    else:
        f = io.guarded(io.bicochain_from_json, b.raw("cocycle"), rep)
    report = is_cocycle(f, args.convention)
    extra = {"degree": f.degree}
    if f.degree == 2:
        extra["six_term_condition"] = two_cocycle_condition(f).holds
    return report, extra


def cmd_check_trb(args):
    d = _verified_trb(_bundle(args, "algebra", "rep", "cocycle", "k"))
    return check_twisted_rb(d), {}


def cmd_check_graph(args):
    d = _verified_trb(_bundle(args, "algebra", "rep", "cocycle", "k"))
    rep = graph_is_subalgebra(d)
    return rep, {"agrees_with_direct_check": rep.holds == check_twisted_rb(d).holds}


def cmd_check_morphism(args):
    src = _verified_trb_operator(io.Bundle.load(args.src))
    dst = _verified_trb_operator(io.Bundle.load(args.dst))
    obj, _ = io.read_json(args.morphism)
    m = io.morphism_from_json(io.unwrap_report(obj), src, dst)
    return check_morphism(src, dst, m), {}


def cmd_check_ns(args):
    obj, _ = io.read_json(args.ns)
    return check_ns_axioms(io.guarded(io.ns_from_json, io.unwrap_report(obj))), {}


def cmd_check_nijenhuis_element(args):
    b = _bundle(args, "algebra", "rep", "cocycle", "k", "x")
    d = _verified_trb_operator(b)
    x = io.vector_from_json(b.raw("x"), d.dim_g, "x")
    return check_nijenhuis_element(d, x, args.literal_h_condition), {}


_FIXTURE_CHECKS = (
    ("algebra-", "leibniz", lambda obj, base: check_leibniz(io.algebra_from_json(obj))),
    ("rep-", "rep", lambda obj, base: check_representation(io.Bundle(obj, base).rep())),
    ("trb-", "trb", lambda obj, base: check_twisted_rb(io.trb_from_json(obj, base))),
    ("ns-", "ns", lambda obj, base: check_ns_axioms(io.ns_from_json(obj))),
    ("deformation-", "formal", lambda obj, base: check_formal_deformation(io.deformation_from_json(obj, base))),
)


def _check_fixture(path: Path) -> tuple[str, CheckReport] | None:
    obj, base = io.read_json(path)
    obj = io.unwrap_report(obj)
    if path.name.startswith("nijenhuis-element-"):
        # paired with the deformation fixture of the same seed
        partner = path.with_name(path.name.replace("nijenhuis-element-", "deformation-transported-"))
        if not partner.exists():
            return None
        tfd = io.deformation_from_json(*io.read_json(partner))
        x = io.vector_from_json(obj["x"], tfd.base.dim_g, "x")
        return "nijenhuis-element", check_nijenhuis_element(tfd.base, x)
    for prefix, label, fn in _FIXTURE_CHECKS:
        if path.name.startswith(prefix):
            return label, io.guarded(fn, obj, base)
    return None


def cmd_check_all_fixtures(args):
    if args.all_fixtures is None:
        raise io.InputError("check: give a subcommand or --all-fixtures")
    directory = Path(args.all_fixtures)
    if not directory.is_dir():
        raise io.InputError(f"{directory}: not a directory")
    results, ok = {}, True
    for path in sorted(directory.glob("*.json")):
        outcome = _check_fixture(path)
        if outcome is None:
            results[path.name] = {"check": None}
            continue
        label, rep = outcome
        expected = path.name not in EXPECTED_FAILURES
        ok &= rep.holds == expected
        results[path.name] = {"check": label, "holds": rep.holds, "expected": expected, "which": rep.which}
    return CheckReport(ok), {"fixtures": results}


# ------------------------------------------------------------------- builds


def _built(result) -> tuple[CheckReport, dict]:
    return CheckReport(True), {"result": result}


def cmd_build_regular_rep(args):
    g = _bundle(args, "algebra").algebra()
    _require(check_leibniz(g), "not a Leibniz algebra")
    return _built({"algebra": io.algebra_to_json(g), "rep": io.rep_to_json(regular_representation(g))})


def cmd_build_semidirect(args):
    b = _bundle(args, "algebra", "rep", "cocycle")
    rep = b.rep()
    _require(check_representation(rep), "the representation axioms fail")
    h = io.guarded(io.bicochain_from_json, b.raw("cocycle"), rep)
    _require(is_cocycle(h), "H is not a 2-cocycle")
    return _built(io.algebra_to_json(twisted_semidirect(rep, h)))


def cmd_build_deformed(args):
    b = _bundle(args, "algebra", "n")
    g = b.algebra()
    n = _map(b, "n", g.dim, g.dim)
    _require(check_nijenhuis(g, n), "N is not a Nijenhuis operator")
    return _built(io.algebra_to_json(deformed_bracket(g, n)))


def cmd_build_induce_bracket(args):
    d = _verified_trb_operator(_bundle(args, "algebra", "rep", "cocycle", "k"))
    return _built(io.algebra_to_json(induced_bracket(d)))


def cmd_build_induce_rep(args):
    d = _verified_trb_operator(_bundle(args, "algebra", "rep", "cocycle", "k"))
    r = induced_representation(d)
    return _built({"algebra": io.algebra_to_json(r.algebra), "rep": io.rep_to_json(r)})


def cmd_build_ns_from_nijenhuis(args):
    b = _bundle(args, "algebra", "n")
    g = b.algebra()
    n = _map(b, "n", g.dim, g.dim)
    _require(check_nijenhuis(g, n), "N is not a Nijenhuis operator")
    return _built(io.ns_to_json(ns_from_nijenhuis(g, n)))


def cmd_build_ns_from_trb(args):
    d = _verified_trb_operator(_bundle(args, "algebra", "rep", "cocycle", "k"))
    return _built(io.ns_to_json(ns_from_twisted_rb(d)))


def cmd_build_canonical_trb(args):
    obj, _ = io.read_json(args.ns)
    a = io.guarded(io.ns_from_json, io.unwrap_report(obj))
    _require(check_ns_axioms(a), "not an NS-Leibniz algebra")
    return _built(io.trb_to_json(canonical_trb(a)))


def cmd_build_compatible_ns(args):
    d = _verified_trb_operator(_bundle(args, "algebra", "rep", "cocycle", "k"))
    if d.dim_g != d.dim_v:
        raise io.InputError(f"K must be square, got {d.dim_g}x{d.dim_v}")
    a = compatible_ns_from_invertible(d)
    if a is None:
        return CheckReport(False, "invertibility", notes=["K is singular"]), {}
    return _built(io.ns_to_json(a))


def cmd_build_shift(args):
    b = _bundle(args, "algebra", "rep", "cocycle", "k", "h")
    d = _verified_trb_operator(b)
    out = shift_by_cochain(d, _cochain(b, "h", d.rep, 1))
    if out is None:
        return CheckReport(False, "invertibility", notes=["Id - hK is singular"]), {}
    return _built(io.trb_to_json(out))


def cmd_build_gauge(args):
    b = _bundle(args, "algebra", "rep", "cocycle", "k", "b")
    d = _verified_trb_operator(b)
    cochain = _cochain(b, "b", d.rep, 1)
    try:
        out = gauge_transform(d, cochain)
    except NotACocycleError as exc:
        raise PreconditionError(str(exc)) from exc
    if out is None:
        return CheckReport(False, "admissibility", notes=["Id + BK is singular"]), {}
    report, extra = _built(io.trb_to_json(out))
    extra["bracket_isomorphism"] = gauge_bracket_isomorphism(d, cochain).holds
    return report, extra


def cmd_build_trivialize(args):
    obj, base = io.read_json(args.deformation)
    tfd = io.deformation_from_json(obj, base)
    _require(check_twisted_rb(tfd.base), "the base is not a twisted Rota-Baxter operator")
    xobj, _ = io.read_json(args.x)
    xobj = io.unwrap_report(xobj)
    x = io.vector_from_json(xobj["x"] if isinstance(xobj, dict) else xobj, tfd.base.dim_g, "x")
    try:
        out = trivialization_step(tfd, x)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    return _built(io.deformation_to_json(out))


# ------------------------------------------------------ cohomology, deform


def cmd_cohomology(args):
    if args.of_k:
        d = _verified_trb_operator(_bundle(args, "algebra", "rep", "cocycle", "k"))
        res = k_cohomology_dims(d, args.degree, args.cap)
    else:
        b = _bundle(args, "algebra", "rep")
        rep = b.rep()
        _require(check_representation(rep), "the representation axioms fail")
        res = cohomology_dims(rep, args.degree, args.cap, args.convention)
    return CheckReport(True), res.to_dict()


def _load_deformation(source):
    obj, base = io.read_json(source)
    tfd = io.deformation_from_json(obj, base)
    _require(check_twisted_rb(tfd.base), "the base is not a twisted Rota-Baxter operator")
    return tfd


def cmd_deform_check_linear(args):
    tfd = _load_deformation(args.deformation)
    if tfd.order != 1:
        raise io.InputError(f"a linear deformation has exactly one term, got {tfd.order}")
    ld = LinearDeformation(tfd.base, tfd.k1)
    rep = check_linear_deformation(ld)
    extra = {}
    if rep.holds:
        extra["infinitesimal_is_cocycle"] = infinitesimal_is_cocycle(ld).holds
    return rep, extra


def cmd_deform_check_formal(args):
    tfd = _load_deformation(args.deformation)
    rep = check_formal_deformation(tfd, args.order)
    extra = {"order": tfd.order if args.order is None else args.order}
    if rep.holds:
        extra["infinitesimal_is_cocycle"] = infinitesimal_is_cocycle(tfd).holds
    return rep, extra


def cmd_deform_check_equivalence(args):
    a = _load_deformation(args.deformation)
    b = _load_deformation(args.other)
    if not a.base == b.base:
        raise io.InputError("the two deformations have different bases")
    obj, _ = io.read_json(args.equivalence)
    e = io.equivalence_from_json(io.unwrap_report(obj), a.base)
    if args.order is None:
        if a.order != 1 or b.order != 1:
            raise io.InputError("without --order both deformations must be linear")
        rep = check_equivalence(
            LinearDeformation(a.base, a.k1), LinearDeformation(b.base, b.k1), e, args.literal_h_condition
        )
    else:
        try:
            rep = check_formal_equivalence(a, b, e, args.order)
        except ValueError as exc:
            raise io.InputError(str(exc)) from exc
    return rep, {}


# ----------------------------------------------------------------------- gen


def cmd_gen(args):
    profile = Profile(args.dim_g, args.dim_v, args.max_numerator, args.max_denominator)
    try:
        if args.kind == "leibniz":
            result = io.algebra_to_json(gen_leibniz(args.seed, profile, args.strategy))
        elif args.kind == "rep":
            g = gen_leibniz(args.seed, profile)
            r = gen_representation(args.seed, g, profile.dim_v)
            result = {"algebra": io.algebra_to_json(g), "rep": io.rep_to_json(r)}
        else:
            result = io.trb_to_json(gen_twisted_rb(args.seed, profile, args.strategy))
    except GenerationError as exc:
        raise PreconditionError(str(exc)) from exc
    return CheckReport(True), {"result": result, "seed": args.seed}


# -------------------------------------------------------------------- parser


def _add_parts(p, *parts: str) -> None:
    p.add_argument("--bundle", help="JSON bundle holding the parts below (path or -)")
    helps = {
        "algebra": "algebra file",
        "rep": "representation file",
        "cocycle": "2-cocycle file",
        "cochain": "cochain file",
        "k": "linear map V -> g",
        "n": "linear map g -> g",
        "x": "element of g (JSON array)",
        "h": "1-cochain file",
        "b": "1-cocycle file",
    }
    for part in parts:
        p.add_argument(f"--{part}", help=helps[part])


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--quiet", action="store_true", default=argparse.SUPPRESS, help="print nothing; only set the exit status"
    )
    common.add_argument(
        "--no-timing",
        action="store_true",
        default=argparse.SUPPRESS,
        help="report elapsed_ms as null so reports are byte-reproducible",
    )
    parser = argparse.ArgumentParser(
        prog="lra", description="Exact checks and constructions for Leibniz algebras.", parents=[common]
    )
    top = parser.add_subparsers(dest="group", required=True)

    check_parser = top.add_parser("check", help="verify an identity", parents=[common])
    check_parser.add_argument(
        "--all-fixtures",
        nargs="?",
        const=f"fixtures/{VERSION}",
        default=None,
        metavar="DIR",
        help=f"check every fixture file in DIR (default fixtures/{VERSION}) against its expected verdict",
    )
    check_parser.set_defaults(func=cmd_check_all_fixtures)
    check = check_parser.add_subparsers(dest="what")
    trb_parts = ("algebra", "rep", "cocycle", "k")
    for name, fn, parts in (
        ("leibniz", cmd_check_leibniz, ("algebra",)),
        ("rep", cmd_check_rep, ("algebra", "rep")),
        ("nijenhuis", cmd_check_nijenhuis, ("algebra", "n")),
        ("cocycle", cmd_check_cocycle, ("algebra", "rep", "cochain", "cocycle")),
        ("trb", cmd_check_trb, trb_parts),
        ("graph", cmd_check_graph, trb_parts),
        ("nijenhuis-element", cmd_check_nijenhuis_element, (*trb_parts, "x")),
    ):
        p = check.add_parser(name, parents=[common])
        _add_parts(p, *parts)
        p.set_defaults(func=fn)
        if name == "cocycle":
            p.add_argument("--convention", choices=CONVENTIONS, default="literal")
        if name == "nijenhuis-element":
            p.add_argument("--literal-h-condition", action="store_true")
    p = check.add_parser("morphism", parents=[common])
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--morphism", required=True, help='{"phi": ..., "psi": ...}')
    p.set_defaults(func=cmd_check_morphism)
    p = check.add_parser("ns", parents=[common])
    p.add_argument("--ns", required=True)
    p.set_defaults(func=cmd_check_ns)

    build = top.add_parser("build", help="construct an object").add_subparsers(dest="what", required=True)
    for name, fn, parts in (
        ("regular-rep", cmd_build_regular_rep, ("algebra",)),
        ("semidirect", cmd_build_semidirect, ("algebra", "rep", "cocycle")),
        ("deformed", cmd_build_deformed, ("algebra", "n")),
        ("induce-bracket", cmd_build_induce_bracket, trb_parts),
        ("induce-rep", cmd_build_induce_rep, trb_parts),
        ("ns-from-nijenhuis", cmd_build_ns_from_nijenhuis, ("algebra", "n")),
        ("ns-from-trb", cmd_build_ns_from_trb, trb_parts),
        ("compatible-ns", cmd_build_compatible_ns, trb_parts),
        ("shift", cmd_build_shift, (*trb_parts, "h")),
        ("gauge", cmd_build_gauge, (*trb_parts, "b")),
    ):
        p = build.add_parser(name, parents=[common])
        _add_parts(p, *parts)
        p.set_defaults(func=fn)
    p = build.add_parser("canonical-trb", parents=[common])
    p.add_argument("--ns", required=True)
    p.set_defaults(func=cmd_build_canonical_trb)
    p = build.add_parser("trivialize", parents=[common])
    p.add_argument("--deformation", required=True)
    p.add_argument("--x", required=True, help="element of g, or an equivalence datum")
    p.set_defaults(func=cmd_build_trivialize)

    p = top.add_parser("cohomology", help="cohomology dimensions", parents=[common])
    _add_parts(p, *trb_parts)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--of-k", action="store_true", help="cohomology of the operator K in the bundle")
    p.add_argument("--convention", choices=CONVENTIONS, default="literal")
    p.add_argument("--cap", type=int, default=None, help="degree cap (default: LRA_DEGREE_CAP or 3)")
    p.set_defaults(func=cmd_cohomology)

    deform = top.add_parser("deform", help="deformation checks").add_subparsers(dest="what", required=True)
    p = deform.add_parser("check-linear", parents=[common])
    p.add_argument("--deformation", required=True)
    p.set_defaults(func=cmd_deform_check_linear)
    p = deform.add_parser("check-formal", parents=[common])
    p.add_argument("--deformation", required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_deform_check_formal)
    p = deform.add_parser("check-equivalence", parents=[common])
    p.add_argument("--deformation", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--equivalence", required=True)
    p.add_argument("--order", type=int, default=None, help="check as formal deformations up to this order")
    p.add_argument("--literal-h-condition", action="store_true")
    p.set_defaults(func=cmd_deform_check_equivalence)

    p = top.add_parser("gen", help="seeded verified instance", parents=[common])
    p.add_argument("kind", choices=("leibniz", "rep", "trb"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim-g", type=int, default=2)
    p.add_argument("--dim-v", type=int, default=2)
    p.add_argument("--max-numerator", type=int, default=2)
    p.add_argument("--max-denominator", type=int, default=2)
    p.add_argument("--strategy", default=None, help=f"trb: one of {', '.join(STRATEGIES)}")
    p.set_defaults(func=cmd_gen)
    return parser


def _command_name(args) -> str:
    what = getattr(args, "what", None)
    return f"{args.group} {what}" if what else args.group


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    no_timing = getattr(args, "no_timing", False) or os.environ.get("LRA_NO_TIMING") == "1"
    start = time.perf_counter()
    try:
        report, extra = args.func(args)
        code = 0 if report.holds else 1
        out = report.to_dict()
        holds = out.pop("holds")
        details = {**out, **extra}
    except PreconditionError as exc:
        holds, code, details = False, 1, {"error": str(exc)}
    except io.InputError as exc:
        print(f"lra: {exc}", file=sys.stderr)
        holds, code, details = None, 2, {"error": str(exc)}
    except ValueError as exc:
        # raised by library preconditions (cap exceeded, singular input...)
        print(f"lra: {exc}", file=sys.stderr)
        holds, code, details = None, 2, {"error": str(exc)}
    elapsed = None if no_timing else round((time.perf_counter() - start) * 1000, 3)
    if not getattr(args, "quiet", False):
        sys.stdout.write(
            io.dumps({"command": _command_name(args), "holds": holds, "details": details, "elapsed_ms": elapsed})
        )
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
