"""Linear and truncated formal deformations of twisted Rota-Baxter operators.

Power series in ``t`` are lists of coefficient matrices ``[A_0, A_1, ...]``;
all products are truncated at the requested order. Equivalences between
deformations are given by an element ``x`` of ``g`` through

    phi_t = Id + t L_x (+ higher terms),
    psi_t = Id + t (rho^L(x) + H(x, K-)) (+ higher terms).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import apply, ein
from .linalg import kernel_basis, matrix_power_series, qarray, qeye, qzeros, rank
from .report import CheckReport, compare
from .rota_baxter import (
    TwistedRBData,
    _bracket_of_images,
    _rho_on_image,
    _rho_swapped,
    dk_coboundary,
    dk_of_element,
    h_on_images,
    induced_representation,
)


@dataclass(frozen=True, eq=False)
class LinearDeformation:
    base: TwistedRBData
    k1: np.ndarray

    def __post_init__(self):
        k1 = qarray(self.k1)
        if k1.shape != self.base.k.shape:
            raise ValueError(f"K_1 must have shape {self.base.k.shape}, got {k1.shape}")
        object.__setattr__(self, "k1", k1)

    def as_formal(self) -> TruncatedFormalDeformation:
        return TruncatedFormalDeformation(self.base, (self.k1,))


@dataclass(frozen=True, eq=False)
class TruncatedFormalDeformation:
    """``K_t = K + t K_1 + ... + t^N K_N``; ``terms`` holds ``K_1 .. K_N``."""

    base: TwistedRBData
    terms: tuple

    def __post_init__(self):
        terms = tuple(qarray(t) for t in self.terms)
        if not terms:
            raise ValueError("a truncated deformation needs order N >= 1")
        for t in terms:
            if t.shape != self.base.k.shape:
                raise ValueError(f"deformation terms must have shape {self.base.k.shape}, got {t.shape}")
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    @property
    def k1(self) -> np.ndarray:
        return self.terms[0]

    def series(self) -> list[np.ndarray]:
        return [self.base.k, *self.terms]


@dataclass(frozen=True, eq=False)
class EquivalenceDatum:
    """``x`` plus optional higher terms ``phi_2, phi_3, ...`` and ``psi_2, ...``."""

    x: np.ndarray
    phi: tuple = field(default=())
    psi: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "x", qarray(self.x))
        object.__setattr__(self, "phi", tuple(qarray(p) for p in self.phi))
        object.__setattr__(self, "psi", tuple(qarray(p) for p in self.psi))


def _coeff(series, i, shape):
    return series[i] if i < len(series) else qzeros(shape)


def series_mul(a: list, b: list, order: int) -> list[np.ndarray]:
    """Product of matrix power series, truncated at ``t^order``."""
    shape = (a[0].shape[0], b[0].shape[1])
    out = []
    for n in range(order + 1):
        acc = qzeros(shape)
        for i in range(n + 1):
            if i < len(a) and n - i < len(b):
                acc = acc + a[i] @ b[n - i]
        out.append(acc)
    return out


def order_sides(d: TwistedRBData, series: list, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient of ``t^n`` on both sides of the deformed operator identity."""
    c, rl, rr, hv = d.algebra.bracket, d.rep.rho_l, d.rep.rho_r, d.h.values
    shape = d.k.shape
    m, ng = d.dim_v, d.dim_g
    lhs = qzeros((m, m, ng))
    rhs = qzeros((m, m, ng))
    for i in range(n + 1):
        ki, kj = _coeff(series, i, shape), _coeff(series, n - i, shape)
        lhs = lhs + _bracket_of_images(c, ki, kj)
        rhs = rhs + apply(ki, _rho_on_image(rl, kj) + _rho_swapped(rr, kj))
        for j in range(n - i + 1):
            kk = _coeff(series, n - i - j, shape)
            rhs = rhs + apply(ki, h_on_images(hv, _coeff(series, j, shape), kk))
    return lhs, rhs


def check_formal_deformation(tfd: TruncatedFormalDeformation, up_to: int | None = None) -> CheckReport:
    """Check the identity order by order; ``which`` is the first failing order.

    ``up_to`` defaults to the truncation order. Larger values check the
    higher coefficients of the polynomial ``K_t`` (terms above N are zero).
    """
    up_to = tfd.order if up_to is None else up_to
    series = tfd.series()
    for n in range(up_to + 1):
        lhs, rhs = order_sides(tfd.base, series, n)
        rep = compare(lhs, rhs, which=n, labels=("u", "v"))
        if not rep.holds:
            return rep
    return CheckReport(True)


def linear_deformation_equations(ld: LinearDeformation) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """The coefficients of ``t``, ``t^2`` and ``t^3`` of the identity for ``K + t K_1``, labelled 1, 2, 3."""
    d, k, k1 = ld.base, ld.base.k, ld.k1
    c, rl, rr, hv = d.algebra.bracket, d.rep.rho_l, d.rep.rho_r, d.h.values

    def rho_terms(a):
        return _rho_on_image(rl, a) + _rho_swapped(rr, a)

    eq1 = (
        _bracket_of_images(c, k, k1) + _bracket_of_images(c, k1, k),
        apply(k1, rho_terms(k) + h_on_images(hv, k, k))
        + apply(k, rho_terms(k1) + h_on_images(hv, k1, k) + h_on_images(hv, k, k1)),
    )
    eq2 = (
        _bracket_of_images(c, k1, k1),
        apply(k1, rho_terms(k1) + h_on_images(hv, k, k1) + h_on_images(hv, k1, k)) + apply(k, h_on_images(hv, k1, k1)),
    )
    lhs3 = apply(k1, h_on_images(hv, k1, k1))
    eq3 = (lhs3, qzeros(lhs3.shape))
    return [(1, *eq1), (2, *eq2), (3, *eq3)]


def check_linear_deformation(ld: LinearDeformation) -> CheckReport:
    """The three conditions for ``K + t K_1`` to stay an operator for all ``t``.

    ``which`` is the failed equation: 1 (mixed terms), 2 (quadratic in K_1)
    or 3 (cubic in K_1).
    ``details["series_agrees"]`` records whether the order-by-order
    expansion of ``K + t K_1`` at orders 1..3 gives the same verdicts.
    """
    result = CheckReport(True)
    verdicts = []
    for label, lhs, rhs in linear_deformation_equations(ld):
        rep = compare(lhs, rhs, which=label, labels=("u", "v"))
        verdicts.append(rep.holds)
        if not rep.holds and result.holds:
            result = rep
    series = [ld.base.k, ld.k1]
    by_order = [compare(*order_sides(ld.base, series, n)).holds for n in (1, 2, 3)]
    result.details["series_agrees"] = by_order == verdicts
    return result


def infinitesimal_is_cocycle(deformation: LinearDeformation | TruncatedFormalDeformation) -> CheckReport:
    """Whether ``d_K(K_1) = 0``."""
    k1 = deformation.k1
    dk = dk_coboundary(deformation.base, k1.T)
    return compare(dk, qzeros(dk.shape), labels=("u", "v"))


def _action_matrix(d: TwistedRBData, x: np.ndarray) -> np.ndarray:
    """``rho^L(x) + H(x, K-)`` as a ``dim_v x dim_v`` matrix."""
    return d.rep.left(x) + ein("i,ja,ijv->va", x, d.k, d.h.values)


def _h_left(d: TwistedRBData, x: np.ndarray) -> np.ndarray:
    """Matrix of ``w -> H(x, w)`` on g."""
    return ein("j,jiv->vi", x, d.h.values)


def element_conditions(d: TwistedRBData, x, literal_h_condition: bool = False) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Conditions on ``x`` alone: ``phi_t``, ``psi_t`` preserve bracket, actions and H.

    The first line of the H-compatibility condition is expanded from
    ``psi_t H = H (phi_t x phi_t)``, giving ``H([x,y],z) + H(y,[x,z])`` on the
    right; ``literal_h_condition=True`` uses ``H(x,[y,z]) + H(y,[x,z])``
    instead.
    """
    x = qarray(x)
    g = d.algebra
    c, rl, rr, hv, k = g.bracket, d.rep.rho_l, d.rep.rho_r, d.h.values, d.k
    ng = d.dim_g
    lx = g.left_mult(x)
    hx = _h_left(d, x)
    p = _action_matrix(d, x)
    eye = qeye(ng)

    out = []
    lhs = _bracket_of_images(c, lx, lx)
    out.append(("bracket_square", lhs, qzeros(lhs.shape)))
    for label, rho in (("left_action", rl), ("right_action", rr)):
        out.append((f"{label}_linear", ein("vi,ia,yab->ybv", hx, k, rho), ein("yva,ai,ib->ybv", rho, hx, k)))
        lhs = ein("ky,kab,bu->yua", lx, rho, p)
        out.append((f"{label}_quadratic", lhs, qzeros(lhs.shape)))
    lhs = apply(p, hv)
    if literal_h_condition:
        rhs = ein("yzk,vk->yzv", c, hx) + h_on_images(hv, eye, lx)
    else:
        rhs = h_on_images(hv, lx, eye) + h_on_images(hv, eye, lx)
    out.append(("cocycle_linear", lhs, rhs))
    lhs = h_on_images(hv, lx, lx)
    out.append(("cocycle_quadratic", lhs, qzeros(lhs.shape)))
    return out


def _run(conditions) -> CheckReport:
    for label, lhs, rhs in conditions:
        rep = compare(lhs, rhs, which=label)
        if not rep.holds:
            return rep
    return CheckReport(True)


def check_equivalence(
    lda: LinearDeformation, ldb: LinearDeformation, e: EquivalenceDatum, literal_h_condition: bool = False
) -> CheckReport:
    """Whether ``(phi_t, psi_t)`` built from ``e.x`` maps ``K + tK_1`` to ``K + tK'_1``.

    On success ``details["difference_is_dk_x"]`` confirms
    ``K_1 - K'_1 = d_K(x)``.
    """
    if not lda.base == ldb.base:
        raise ValueError("the two deformations deform different operators")
    d, x = lda.base, e.x
    lx = d.algebra.left_mult(x)
    p = _action_matrix(d, x)
    k, k1, k1b = d.k, lda.k1, ldb.k1
    conds = element_conditions(d, x, literal_h_condition)
    conds.append(("k_linear", (k1 + lx @ k).T, (k @ p + k1b).T))
    conds.append(("k_quadratic", (lx @ k1).T, (k1b @ p).T))
    rep = _run(conds)
    if rep.holds:
        same = np.array_equal(k1 - k1b, dk_of_element(d, x))
        rep.details["difference_is_dk_x"] = same
        rep.holds = same
    return rep


def check_nijenhuis_element(d: TwistedRBData, x, literal_h_condition: bool = False) -> CheckReport:
    """``[x, rho_bar^R(u) x] = 0`` for all u, plus the conditions of :func:`element_conditions`."""
    x = qarray(x)
    lx = d.algebra.left_mult(x)
    rbar = induced_representation(d, verify=False).rho_r
    lhs = ein("ka,uab,b->uk", lx, rbar, x)
    conds = [("bracket", lhs, qzeros(lhs.shape))]
    conds.extend(element_conditions(d, x, literal_h_condition))
    return _run(conds)


def equivalence_series(d: TwistedRBData, e: EquivalenceDatum) -> tuple[list, list]:
    lx = d.algebra.left_mult(e.x)
    phi = [qeye(d.dim_g), lx, *e.phi]
    psi = [qeye(d.dim_v), _action_matrix(d, e.x), *e.psi]
    return phi, psi


def check_formal_equivalence(
    tfda: TruncatedFormalDeformation, tfdb: TruncatedFormalDeformation, e: EquivalenceDatum, order: int
) -> CheckReport:
    """Morphism conditions for ``(phi_t, psi_t)`` coefficient-wise up to ``t^order``.

    ``which`` is the first failing order; ``details["condition"]`` names the
    failed condition there.
    """
    if not tfda.base == tfdb.base:
        raise ValueError("the two deformations deform different operators")
    if order > 1 and (len(e.phi) < order - 1 or len(e.psi) < order - 1):
        raise ValueError(f"order {order} needs phi_i, psi_i for i = 2..{order}")
    d = tfda.base
    g = d.algebra
    c, rl, rr, hv = g.bracket, d.rep.rho_l, d.rep.rho_r, d.h.values
    phi, psi = equivalence_series(d, e)
    ka, kb = tfda.series(), tfdb.series()
    ng, m = d.dim_g, d.dim_v
    for n in range(order + 1):
        ph = lambda i: _coeff(phi, i, (ng, ng))  # noqa: E731
        ps = lambda i: _coeff(psi, i, (m, m))  # noqa: E731
        pairs = range(n + 1)
        conds = [
            ("leibniz_morphism", apply(ph(n), c), sum((_bracket_of_images(c, ph(i), ph(n - i)) for i in pairs), qzeros((ng, ng, ng)))),
            (
                "left_action",
                ein("ab,xbc->xac", ps(n), rl),
                sum((ein("yx,yab,bc->xac", ph(i), rl, ps(n - i)) for i in pairs), qzeros((ng, m, m))),
            ),
            (
                "right_action",
                ein("ab,xbc->xac", ps(n), rr),
                sum((ein("yx,yab,bc->xac", ph(i), rr, ps(n - i)) for i in pairs), qzeros((ng, m, m))),
            ),
            ("cocycle", apply(ps(n), hv), sum((h_on_images(hv, ph(i), ph(n - i)) for i in pairs), qzeros((ng, ng, m)))),
            (
                "k_intertwining",
                sum((ph(i) @ _coeff(ka, n - i, d.k.shape) for i in pairs), qzeros(d.k.shape)).T,
                sum((_coeff(kb, i, d.k.shape) @ ps(n - i) for i in pairs), qzeros(d.k.shape)).T,
            ),
        ]
        for label, lhs, rhs in conds:
            rep = compare(lhs, rhs, which=n)
            if not rep.holds:
                rep.details["condition"] = label
                return rep
    rep = CheckReport(True)
    if order >= 1:
        same = np.array_equal(tfda.k1 - _coeff(kb, 1, d.k.shape), dk_of_element(d, e.x))
        rep.details["difference_is_dk_x"] = same
        rep.holds = same
    return rep


def trivialization_datum(d: TwistedRBData, x, order: int) -> EquivalenceDatum:
    """Datum of the equivalence used by :func:`trivialization_step` (built from ``-x``)."""
    pad = order - 1
    return EquivalenceDatum(
        -qarray(x),
        tuple(qzeros((d.dim_g, d.dim_g)) for _ in range(pad)),
        tuple(qzeros((d.dim_v, d.dim_v)) for _ in range(pad)),
    )


def trivialization_step(tfd: TruncatedFormalDeformation, x) -> TruncatedFormalDeformation:
    """Remove the linear term of ``K_t`` when ``K_1 = -d_K(x)`` for a Nijenhuis element ``x``.

    Returns ``K'_t = phi_t K_t psi_t^{-1}`` with ``phi_t = Id - t L_x`` and
    ``psi_t = Id - t(rho^L(x) + H(x, K-))``, truncated at the same order;
    its linear term vanishes.
    """
    d = tfd.base
    x = qarray(x)
    if not np.array_equal(dk_of_element(d, x), -tfd.k1):
        raise ValueError("d_K(x) does not equal -K_1")
    rep = check_nijenhuis_element(d, x)
    if not rep.holds:
        raise ValueError(f"x is not a Nijenhuis element (fails {rep.which})")
    order = tfd.order
    psi_inv = matrix_power_series(_action_matrix(d, x), order)
    phi = [qeye(d.dim_g), -d.algebra.left_mult(x)]
    out = series_mul(series_mul(phi, tfd.series(), order), psi_inv, order)
    return TruncatedFormalDeformation(d, tuple(out[1:]))


def transported_deformation(d: TwistedRBData, x, order: int) -> TruncatedFormalDeformation:
    """``phi_t^{-1} K psi_t`` for the datum of ``-x``: a deformation with ``K_1 = -d_K(x)``.

    It is a formal deformation whenever ``x`` is a Nijenhuis element.
    """
    x = qarray(x)
    lx = d.algebra.left_mult(x)
    phi_inv = matrix_power_series(lx, order)
    psi = [qeye(d.dim_v), -_action_matrix(d, x)]
    out = series_mul(series_mul(phi_inv, [d.k], order), psi, order)
    return TruncatedFormalDeformation(d, tuple(out[1:]))


def rigidity_hypothesis(d: TwistedRBData, candidates) -> CheckReport:
    """Whether ``Z^1_K`` is spanned by ``d_K`` of the supplied Nijenhuis elements.

    Every candidate must pass :func:`check_nijenhuis_element`; the images
    ``d_K(x)`` must span the whole space of 1-cocycles.
    """
    from .cohomology import coboundary_matrix

    images = []
    for i, x in enumerate(candidates):
        rep = check_nijenhuis_element(d, x)
        if not rep.holds:
            rep.details["candidate"] = i
            return rep
        images.append(dk_of_element(d, x).T.reshape(-1))
    d1 = coboundary_matrix(induced_representation(d, verify=False), 1)
    z1 = d1.shape[1] - rank(d1)
    spanned = rank(np.stack(images, axis=1)) if images else 0
    return CheckReport(spanned == z1, None if spanned == z1 else "span", details={"z1": z1, "spanned": spanned})


def linear_deformation_candidates(d: TwistedRBData) -> list[np.ndarray]:
    """Basis of 1-cocycles ``K_1`` of ``d_K``, i.e. solutions of the linear condition."""
    from .cohomology import coboundary_matrix

    d1 = coboundary_matrix(induced_representation(d, verify=False), 1)
    return [v.reshape(d.dim_v, d.dim_g).T for v in kernel_basis(d1)]


def nijenhuis_element_candidates(d: TwistedRBData, literal_h_condition: bool = False) -> list[np.ndarray]:
    """Basis of the solution space of the conditions that are linear in ``x``.

    Every Nijenhuis element lies in this span; members still have to pass
    :func:`check_nijenhuis_element` for the quadratic conditions.
    """
    ng = d.dim_g
    rows = []
    for i in range(ng):
        e = qzeros(ng)
        e[i] = 1
        conds = element_conditions(d, e, literal_h_condition)
        linear = [conds[1], conds[3], conds[5]]
        rows.append(np.concatenate([(lhs - rhs).reshape(-1) for _, lhs, rhs in linear]))
    mat = np.stack(rows, axis=1) if rows else qzeros((0, 0))
    return kernel_basis(mat)
