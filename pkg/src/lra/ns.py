"""NS-Leibniz algebras ``(A, >, <, o)`` and their relation to twisted operators.

The three operations are stored as structure tensors ``tri`` (``x > y``),
``tli`` (``x < y``) and ``dia`` (``x o y``) with the same index convention as
:class:`~lra.algebra.LeibnizAlgebra`. The sum ``x * y`` is always derived.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Cochain,
    LeibnizAlgebra,
    Representation,
    _check_square_tensor,
    apply,
    check_nijenhuis,
    deformed_tensor,
    ein,
    nest_left,
    nest_right,
    nest_swap,
)
from .linalg import invert, is_zero, qarray, qeye
from .report import CheckReport, compare
from .rota_baxter import TwistedRBData, induced_bracket_tensor


@dataclass(frozen=True, eq=False)
class NSLeibnizAlgebra:
    tri: np.ndarray
    tli: np.ndarray
    dia: np.ndarray

    def __post_init__(self):
        dims = set()
        for name in ("tri", "tli", "dia"):
            t = qarray(getattr(self, name))
            dims.add(_check_square_tensor(t, name))
            object.__setattr__(self, name, t)
        if len(dims) > 1:
            raise ValueError(f"the three operations act on spaces of different dimensions {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.tri.shape[0]

    @property
    def star(self) -> np.ndarray:
        return self.tri + self.tli + self.dia

    @property
    def is_leibniz_dendriform(self) -> bool:
        return is_zero(self.dia)

    def __eq__(self, other):
        if not isinstance(other, NSLeibnizAlgebra):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k)) for k in ("tri", "tli", "dia"))


def ns_axiom_sides(a: NSLeibnizAlgebra) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Both sides of A1..A4 on basis triples ``(x, y, z)``."""
    tri, tli, dia, star = a.tri, a.tli, a.dia, a.star
    return [
        ("A1", nest_left(tri, star), nest_right(tri, tri) + nest_swap(tli, tri)),
        ("A2", nest_left(tli, tri), nest_right(tli, tri) + nest_swap(tri, star)),
        ("A3", nest_left(tli, tli), nest_right(star, tli) + nest_swap(tli, tli)),
        (
            "A4",
            nest_left(tli, dia) + nest_left(dia, star),
            nest_right(dia, tri) + nest_right(star, dia) + nest_swap(tli, dia) + nest_swap(dia, star),
        ),
    ]


def check_ns_axioms(a: NSLeibnizAlgebra) -> CheckReport:
    """A1..A4 on all basis triples; ``which`` names the failing axiom."""
    for label, lhs, rhs in ns_axiom_sides(a):
        rep = compare(lhs, rhs, which=label, labels=("x", "y", "z"))
        if not rep.holds:
            return rep
    notes = ["the diamond operation vanishes: Leibniz-dendriform algebra"] if a.is_leibniz_dendriform else []
    return CheckReport(True, notes=notes, details={"leibniz_dendriform": a.is_leibniz_dendriform})


def _require(rep: CheckReport, what: str) -> None:
    if not rep.holds:
        raise ValueError(f"{what} (fails {rep.which}: {rep.first_failure})")


def subadjacent(a: NSLeibnizAlgebra, verify: bool = True) -> LeibnizAlgebra:
    """The Leibniz algebra ``(A, *)``."""
    if verify:
        _require(check_ns_axioms(a), "not an NS-Leibniz algebra")
    return LeibnizAlgebra(a.star)


def ns_from_nijenhuis(g: LeibnizAlgebra, n) -> NSLeibnizAlgebra:
    """``x > y = [x, Ny]``, ``x < y = [Nx, y]``, ``x o y = -N[x, y]``."""
    n = qarray(n)
    _require(check_nijenhuis(g, n), "not a Nijenhuis operator")
    c = g.bracket
    return NSLeibnizAlgebra(ein("bj,ibk->ijk", n, c), ein("ai,ajk->ijk", n, c), -apply(n, c))


def nijenhuis_compatibility(g: LeibnizAlgebra, n) -> CheckReport:
    """The identity saying that ``[.,.] + [.,.]_N`` is again a Leibniz bracket.

    [x,[y,z]]_N + [x,[y,z]_N] = [[x,y],z]_N + [[x,y]_N,z] + [y,[x,z]]_N + [y,[x,z]_N]
    """
    c = g.bracket
    cn = deformed_tensor(c, qarray(n))
    lhs = nest_left(cn, c) + nest_left(c, cn)
    rhs = nest_right(c, cn) + nest_right(cn, c) + nest_swap(cn, c) + nest_swap(c, cn)
    return compare(lhs, rhs, labels=("x", "y", "z"))


def canonical_trb(a: NSLeibnizAlgebra, verify: bool = True) -> TwistedRBData:
    """``Id: A -> A`` over ``(A, *)`` with representation ``(L_<, R_>)`` and ``H = o``."""
    g = subadjacent(a, verify)
    rho_l = ein("xyk->xky", a.tli)
    rho_r = ein("yxk->xky", a.tri)
    rep = Representation(g, rho_l, rho_r)
    return TwistedRBData(rep, Cochain(rep, a.dia), qeye(a.dim))


def ns_from_twisted_rb(d: TwistedRBData) -> NSLeibnizAlgebra:
    """``u > v = rho^R(Kv)u``, ``u < v = rho^L(Ku)v``, ``u o v = H(Ku, Kv)`` on V."""
    k, rl, rr, hv = d.k, d.rep.rho_l, d.rep.rho_r, d.h.values
    tri = ein("iv,iwu->uvw", k, rr)
    tli = ein("iu,iwv->uvw", k, rl)
    dia = ein("iu,jv,ijw->uvw", k, k, hv)
    return NSLeibnizAlgebra(tri, tli, dia)


def compatible_ns_from_invertible(d: TwistedRBData) -> NSLeibnizAlgebra | None:
    """The structure on g transported along an invertible K; ``None`` if K is singular.

    ``x > y = K rho^R(y) K^{-1} x``, ``x < y = K rho^L(x) K^{-1} y``,
    ``x o y = K H(x, y)``; its sum reproduces the bracket of g.
    """
    if d.dim_g != d.dim_v:
        raise ValueError(f"K must be square, got {d.dim_g}x{d.dim_v}")
    k = d.k
    kinv = invert(k)
    if kinv is None:
        return None
    rl, rr, hv = d.rep.rho_l, d.rep.rho_r, d.h.values
    tri = ein("ka,yab,bx->xyk", k, rr, kinv)
    tli = ein("ka,xab,by->xyk", k, rl, kinv)
    dia = apply(k, hv)
    return NSLeibnizAlgebra(tri, tli, dia)


def subadjacent_matches_induced(d: TwistedRBData) -> CheckReport:
    """The subadjacent bracket of :func:`ns_from_twisted_rb` against the induced bracket on V."""
    return compare(ns_from_twisted_rb(d).star, induced_bracket_tensor(d), labels=("u", "v"))
