"""H-twisted relative Rota-Baxter operators and the structures they induce.

A linear map ``K: V -> g`` is an H-twisted relative Rota-Baxter operator when

    [Ku, Kv] = K(rho^L(Ku)v + rho^R(Kv)u + H(Ku, Kv))    for u, v in V.

``K`` is stored as a ``dim_g x dim_v`` matrix. ``H`` is evaluated on the
non-basis arguments ``Ku, Kv`` by bilinear expansion in coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import (
    Cochain,
    LeibnizAlgebra,
    Representation,
    apply,
    check_nijenhuis,
    deformed_bracket,
    ein,
    semidirect_tensor,
)
from .cohomology import CohomologyReport, coboundary, cohomology_dims, is_cocycle
from .linalg import invert, qarray, qeye, qzeros, rank
from .report import CheckReport, compare


class NotACocycleError(ValueError):
    """A cochain required to be a cocycle is not one."""


@dataclass(frozen=True, eq=False)
class TwistedRBData:
    rep: Representation
    h: Cochain
    k: np.ndarray

    def __post_init__(self):
        k = qarray(self.k)
        if k.shape != (self.rep.dim_g, self.rep.dim_v):
            raise ValueError(f"K must be {self.rep.dim_g}x{self.rep.dim_v}, got {k.shape}")
        if self.h.degree != 2 or self.h.rep is not self.rep and not (self.h.rep == self.rep):
            raise ValueError("H must be a 2-cochain on the same representation")
        object.__setattr__(self, "k", k)

    @property
    def algebra(self) -> LeibnizAlgebra:
        return self.rep.algebra

    @property
    def dim_g(self) -> int:
        return self.rep.dim_g

    @property
    def dim_v(self) -> int:
        return self.rep.dim_v

    def with_k(self, k) -> TwistedRBData:
        return TwistedRBData(self.rep, self.h, k)

    def __eq__(self, other):
        return (
            isinstance(other, TwistedRBData)
            and self.rep == other.rep
            and self.h == other.h
            and np.array_equal(self.k, other.k)
        )

    __hash__ = None


@dataclass(frozen=True)
class TRBMorphism:
    phi: np.ndarray
    psi: np.ndarray


def h_on_images(h: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``T[p, q] = H(a e_p, b e_q)`` for linear maps ``a``, ``b`` into g."""
    return ein("ip,jq,ijv->pqv", a, b, h)


def _rho_on_image(rho: np.ndarray, a: np.ndarray) -> np.ndarray:
    """``T[p, q] = rho(a e_p) e_q``."""
    return ein("ip,ivq->pqv", a, rho)


def _rho_swapped(rho: np.ndarray, a: np.ndarray) -> np.ndarray:
    """``T[p, q] = rho(a e_q) e_p``."""
    return ein("iq,ivp->pqv", a, rho)


def _bracket_of_images(c: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``T[p, q] = [a e_p, b e_q]``."""
    return ein("ip,jq,ijk->pqk", a, b, c)


def trb_sides(d: TwistedRBData, k: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    k = d.k if k is None else k
    lhs = _bracket_of_images(d.algebra.bracket, k, k)
    inner = _rho_on_image(d.rep.rho_l, k) + _rho_swapped(d.rep.rho_r, k) + h_on_images(d.h.values, k, k)
    return lhs, apply(k, inner)


def check_twisted_rb(d: TwistedRBData) -> CheckReport:
    lhs, rhs = trb_sides(d)
    return compare(lhs, rhs, labels=("u", "v"))


def make_data(rep: Representation, h, k) -> TwistedRBData:
    h = h if isinstance(h, Cochain) else Cochain(rep, h)
    return TwistedRBData(rep, h, k)


def from_invertible_cochain(rep: Representation, h: Cochain) -> TwistedRBData:
    """``K = h^{-1}`` twisted by ``H = -dh`` for an invertible 1-cochain ``h``."""
    if h.degree != 1:
        raise ValueError("h must be a 1-cochain")
    hinv = invert(h.as_matrix()) if rep.dim_g == rep.dim_v else None
    if hinv is None:
        raise ValueError("the 1-cochain is not invertible")
    return TwistedRBData(rep, -coboundary(h), hinv)


def nijenhuis_representation(g: LeibnizAlgebra, n: np.ndarray) -> Representation:
    """``rho^L(x)y = [Nx, y]``, ``rho^R(x)y = [y, Nx]`` as a representation of ``g_N`` on ``g``."""
    gn = deformed_bracket(g, n)
    c = g.bracket
    rho_l = ein("ai,ajk->ikj", n, c)
    rho_r = ein("ai,jak->ikj", n, c)
    return Representation(gn, rho_l, rho_r)


def from_nijenhuis(g: LeibnizAlgebra, n) -> TwistedRBData:
    """``Id: g -> g_N`` twisted by ``H(x, y) = -N[x, y]``."""
    n = qarray(n)
    rep = check_nijenhuis(g, n)
    if not rep.holds:
        raise ValueError(f"not a Nijenhuis operator: {rep.first_failure}")
    r = nijenhuis_representation(g, n)
    return TwistedRBData(r, Cochain(r, -apply(n, g.bracket)), qeye(g.dim))


def graph_generators(d: TwistedRBData) -> np.ndarray:
    """Columns ``(K e_a, e_a)`` spanning the graph inside ``g + V``."""
    return np.concatenate([d.k, qeye(d.dim_v)], axis=0)


def graph_is_subalgebra(d: TwistedRBData) -> CheckReport:
    """Whether the graph of ``K`` is closed under the twisted semidirect bracket.

    Span membership is decided by ranks, independently of the operator
    identity itself.
    """
    t = semidirect_tensor(d.rep, d.h.values)
    gens = graph_generators(d)
    base = rank(gens)
    for a, b in itertools.product(range(d.dim_v), repeat=2):
        z = ein("i,j,ijk->k", gens[:, a], gens[:, b], t)
        if rank(np.concatenate([gens, z.reshape(-1, 1)], axis=1)) != base:
            return CheckReport(False, None, {"indices": [a, b], "bracket": z, "labels": ["u", "v"]})
    return CheckReport(True)


def induced_bracket_tensor(d: TwistedRBData) -> np.ndarray:
    k = d.k
    return _rho_on_image(d.rep.rho_l, k) + _rho_swapped(d.rep.rho_r, k) + h_on_images(d.h.values, k, k)


def induced_bracket(d: TwistedRBData, verify: bool = True) -> LeibnizAlgebra:
    """``[u, v]_K = rho^L(Ku)v + rho^R(Kv)u + H(Ku, Kv)`` on V."""
    if verify:
        rep = check_twisted_rb(d)
        if not rep.holds:
            raise ValueError(f"not a twisted Rota-Baxter operator: {rep.first_failure}")
    return LeibnizAlgebra(induced_bracket_tensor(d))


def induced_representation(d: TwistedRBData, verify: bool = True) -> Representation:
    """Representation of ``(V, [.,.]_K)`` on ``g``.

    rho_bar^L(u)x = [Ku, x] - K(rho^R(x)u) - KH(Ku, x)
    rho_bar^R(u)x = [x, Ku] - K(rho^L(x)u) - KH(x, Ku)
    """
    k, c, hv = d.k, d.algebra.bracket, d.h.values
    # entries are (u, x, out) before transposing to matrices
    left = ein("ia,ixk->axk", k, c) - ein("kv,xva->axk", k, d.rep.rho_r) - ein("kv,ia,ixv->axk", k, k, hv)
    right = ein("ia,xik->axk", k, c) - ein("kv,xva->axk", k, d.rep.rho_l) - ein("kv,ia,xiv->axk", k, k, hv)
    return Representation(
        induced_bracket(d, verify=verify),
        ein("axk->akx", left),
        ein("axk->akx", right),
    )


def psi_h_isomorphism(rep: Representation, h_cocycle: Cochain, h: Cochain) -> tuple[LeibnizAlgebra, LeibnizAlgebra, np.ndarray]:
    """Both twisted semidirect products and ``Psi_h(x, u) = (x, u - h(x))``."""
    if h.degree != 1:
        raise ValueError("h must be a 1-cochain")
    n, m = rep.dim_g, rep.dim_v
    src = LeibnizAlgebra(semidirect_tensor(rep, h_cocycle.values))
    dst = LeibnizAlgebra(semidirect_tensor(rep, (h_cocycle + coboundary(h)).values))
    psi = qeye(n + m)
    psi[n:, :n] = -h.as_matrix()
    return src, dst, psi


def intertwines(src: LeibnizAlgebra, dst: LeibnizAlgebra, m: np.ndarray) -> CheckReport:
    """``m[p, q]_src = [m p, m q]_dst`` on basis pairs."""
    lhs = apply(m, src.bracket)
    rhs = _bracket_of_images(dst.bracket, m, m)
    return compare(lhs, rhs, labels=("p", "q"))


def shift_by_cochain(d: TwistedRBData, h: Cochain) -> TwistedRBData | None:
    """``K (Id - hK)^{-1}``, twisted by ``H + dh``; ``None`` if ``Id - hK`` is singular."""
    if h.degree != 1:
        raise ValueError("h must be a 1-cochain")
    inv = invert(qeye(d.dim_v) - h.as_matrix() @ d.k)
    if inv is None:
        return None
    return TwistedRBData(d.rep, d.h + coboundary(h), d.k @ inv)


def gauge_transform(d: TwistedRBData, b: Cochain) -> TwistedRBData | None:
    """``K_B = K (Id + BK)^{-1}`` for a 1-cocycle ``B``; ``None`` if not K-admissible."""
    if b.degree != 1:
        raise ValueError("B must be a 1-cochain")
    if not is_cocycle(b).holds:
        raise NotACocycleError("B is not a 1-cocycle")
    inv = invert(qeye(d.dim_v) + b.as_matrix() @ d.k)
    if inv is None:
        return None
    return d.with_k(d.k @ inv)


def gauge_bracket_isomorphism(d: TwistedRBData, b: Cochain) -> CheckReport:
    """``(Id + BK)`` maps ``[.,.]_K`` onto ``[.,.]_{K_B}``."""
    db = gauge_transform(d, b)
    if db is None:
        raise ValueError("B is not K-admissible")
    m = qeye(d.dim_v) + b.as_matrix() @ d.k
    return intertwines(induced_bracket(d, verify=False), induced_bracket(db, verify=False), m)


def check_leibniz_morphism(src: LeibnizAlgebra, dst: LeibnizAlgebra, phi: np.ndarray) -> CheckReport:
    return intertwines(src, dst, phi)


def check_morphism(src: TwistedRBData, dst: TwistedRBData, m: TRBMorphism) -> CheckReport:
    """The conditions for ``(phi, psi)`` to be a morphism from ``src`` to ``dst``.

    ``which`` is one of ``leibniz_morphism``, ``k_intertwining``,
    ``left_action``, ``right_action``, ``cocycle``.
    """
    phi, psi = qarray(m.phi), qarray(m.psi)
    if phi.shape != (dst.dim_g, src.dim_g) or psi.shape != (dst.dim_v, src.dim_v):
        raise ValueError("morphism shapes do not match the data")
    rep = check_leibniz_morphism(src.algebra, dst.algebra, phi)
    if not rep.holds:
        rep.which = "leibniz_morphism"
        return rep
    checks = [
        ("k_intertwining", (phi @ src.k).T, (dst.k @ psi).T),
        (
            "left_action",
            ein("ab,xbc->xac", psi, src.rep.rho_l),
            ein("yx,yab,bc->xac", phi, dst.rep.rho_l, psi),
        ),
        (
            "right_action",
            ein("ab,xbc->xac", psi, src.rep.rho_r),
            ein("yx,yab,bc->xac", phi, dst.rep.rho_r, psi),
        ),
        ("cocycle", apply(psi, src.h.values), h_on_images(dst.h.values, phi, phi)),
    ]
    for label, lhs, rhs in checks:
        rep = compare(lhs, rhs, which=label)
        if not rep.holds:
            return rep
    return CheckReport(True)


def k_cochain(d: TwistedRBData, values) -> Cochain:
    """Cochain in ``C^n(V, g)``, i.e. over the induced algebra with values in g."""
    return Cochain(induced_representation(d, verify=False), values)


def dk_coboundary(d: TwistedRBData, f: np.ndarray | Cochain) -> np.ndarray:
    """The differential of ``C^n(V, g)`` written out term by term.

    ``f`` holds values of shape ``(dim_v,) * n + (dim_g,)``. Evaluated with
    explicit loops over basis tuples, independently of :func:`coboundary`.
    """
    vals = f.values if isinstance(f, Cochain) else qarray(f)
    n = vals.ndim - 1
    m, ng = d.dim_v, d.dim_g
    if vals.shape != (m,) * n + (ng,):
        raise ValueError(f"expected values of shape {(m,) * n + (ng,)}, got {vals.shape}")
    k, c, rl, rr, hv = d.k, d.algebra.bracket, d.rep.rho_l, d.rep.rho_r, d.h.values
    e_v = qeye(m)

    def br(x, y):
        return ein("i,j,ijk->k", x, y, c)

    def hh(x, y):
        return ein("i,j,ijv->v", x, y, hv)

    def induced(u, v):
        ku, kv = k @ u, k @ v
        return ein("i,iab,b->a", ku, rl, v) + ein("i,iab,b->a", kv, rr, u) + hh(ku, kv)

    def f_at(args):
        out = vals
        for a in args:
            out = np.tensordot(a, out, axes=(0, 0))
        return out

    out = qzeros((m,) * (n + 1) + (ng,))
    for idx in itertools.product(range(m), repeat=n + 1):
        us = [e_v[i] for i in idx]
        total = qzeros(ng)
        for i in range(n):
            s = (-1) ** i
            fv = f_at(us[:i] + us[i + 1 :])
            ku = k @ us[i]
            total = total + s * br(ku, fv)
            total = total - s * (k @ (ein("i,iab->ab", fv, rr) @ us[i]))
            total = total - s * (k @ hh(ku, fv))
        fv = f_at(us[:n])
        kl = k @ us[n]
        total = total + (-1) ** (n + 1) * br(fv, kl)
        total = total + (-1) ** n * (k @ (ein("i,iab->ab", fv, rl) @ us[n]))
        total = total + (-1) ** n * (k @ hh(fv, kl))
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                args = us[:j] + [induced(us[i], us[j])] + us[j + 1 :]
                del args[i]
                total = total + (-1) ** (i + 1) * f_at(args)
        out[idx] = total
    return out


def dk_coboundary_generic(d: TwistedRBData, f: np.ndarray | Cochain) -> np.ndarray:
    """Same differential, via the generic complex of the induced structures."""
    vals = f.values if isinstance(f, Cochain) else qarray(f)
    return coboundary(k_cochain(d, vals)).values


def dk_of_element(d: TwistedRBData, x) -> np.ndarray:
    """``d_K(x)(u) = K(rho^L(x)u + H(x, Ku)) - [x, Ku]`` as a ``dim_g x dim_v`` matrix."""
    return dk_coboundary(d, qarray(x)).T


def k_cohomology_dims(d: TwistedRBData, degree: int, cap: int | None = None) -> CohomologyReport:
    return cohomology_dims(induced_representation(d, verify=False), degree, cap)
