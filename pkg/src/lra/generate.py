"""Seeded generation of verified instances.

Random structure tensors almost never satisfy the Leibniz identity, so the
generators compose constructions that are known to work (catalog algebras,
2-step nilpotent algebras, Nijenhuis deformations, regular and character
representations, cocycle bases, the ``K = h^{-1}`` and ``Id: g -> g_N``
operators, shifts and transports) and then gate every result through the
matching checker.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
seed and profile reproduce an instance exactly on any platform.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Cochain,
    LeibnizAlgebra,
    Representation,
    check_leibniz,
    check_nijenhuis,
    check_representation,
    deformed_bracket,
    ein,
    regular_representation,
)
from .cohomology import coboundary, cocycle_basis, is_cocycle
from .linalg import Fraction, invert, kernel_basis, qeye, qzeros
from .rota_baxter import (
    TwistedRBData,
    check_twisted_rb,
    from_invertible_cochain,
    from_nijenhuis,
    shift_by_cochain,
)

STRATEGIES = ("zero_k", "invertible_cochain", "nijenhuis", "shift", "pad")


class GenerationError(RuntimeError):
    """The generation budget ran out before a verified instance appeared."""


@dataclass(frozen=True)
class Profile:
    dim_g: int = 2
    dim_v: int = 2
    max_numerator: int = 2
    max_denominator: int = 2


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def rand_q(rng: np.random.Generator, profile: Profile) -> Fraction:
    num = int(rng.integers(-profile.max_numerator, profile.max_numerator + 1))
    den = int(rng.integers(1, profile.max_denominator + 1))
    return Fraction(num, den)


def rand_array(rng, profile: Profile, shape) -> np.ndarray:
    out = qzeros(shape)
    for idx in np.ndindex(*shape):
        out[idx] = rand_q(rng, profile)
    return out


def rand_unimodular(rng, n: int) -> np.ndarray:
    """Product of random unit-triangular integer matrices: invertible, small entries."""
    lower, upper = qeye(n), qeye(n)
    for i in range(n):
        for j in range(i):
            lower[i, j] = Fraction(int(rng.integers(-1, 2)))
            upper[j, i] = Fraction(int(rng.integers(-1, 2)))
    perm = qeye(n)[rng.permutation(n)] if n else qeye(0)
    return perm @ lower @ upper


def rand_invertible(rng, profile: Profile, n: int, budget: int = 50) -> np.ndarray:
    for _ in range(budget):
        m = rand_array(rng, profile, (n, n))
        if invert(m) is not None:
            return m
    return rand_unimodular(rng, n)


# Leibniz algebras used as building blocks; each passes check_leibniz.
CATALOG: dict[str, LeibnizAlgebra] = {
    "abelian1": LeibnizAlgebra.abelian(1),
    "nilpotent2": LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}}),
    "lie2": LeibnizAlgebra.from_products(2, {(0, 1): {1: 1}, (1, 0): {1: -1}}),
    "left2": LeibnizAlgebra.from_products(2, {(0, 1): {1: 1}}),
    "mixed2": LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}, (0, 1): {1: 1}}),
    "heisenberg3": LeibnizAlgebra.from_products(3, {(0, 1): {2: 1}, (1, 0): {2: -1}}),
    "sl2": LeibnizAlgebra.from_products(
        3,
        {
            (0, 1): {2: 1},
            (1, 0): {2: -1},
            (2, 0): {0: 2},
            (0, 2): {0: -2},
            (2, 1): {1: -2},
            (1, 2): {1: 2},
        },
    ),
}


def change_basis(g: LeibnizAlgebra, p: np.ndarray) -> LeibnizAlgebra:
    """The isomorphic algebra with ``[x, y]' = P^{-1}[Px, Py]``."""
    pinv = invert(p)
    return LeibnizAlgebra(ein("ai,bj,abk,lk->ijl", p, p, g.bracket, pinv))


def direct_sum(*algebras: LeibnizAlgebra) -> LeibnizAlgebra:
    n = sum(a.dim for a in algebras)
    c = qzeros((n, n, n))
    off = 0
    for a in algebras:
        s = slice(off, off + a.dim)
        c[s, s, s] = a.bracket
        off += a.dim
    return LeibnizAlgebra(c)


def nilpotent_algebra(rng, profile: Profile, n: int) -> LeibnizAlgebra:
    """Random 2-step nilpotent algebra: brackets land in a central ideal."""
    if n < 2:
        return LeibnizAlgebra.abelian(n)
    z = int(rng.integers(1, n))
    c = qzeros((n, n, n))
    free = n - z
    c[:free, :free, free:] = rand_array(rng, profile, (free, free, z))
    return LeibnizAlgebra(c)


def _catalog_sum(rng, n: int) -> list[LeibnizAlgebra]:
    blocks = []
    left = n
    while left > 0:
        names = [k for k, a in CATALOG.items() if a.dim <= left]
        a = CATALOG[names[int(rng.integers(len(names)))]]
        blocks.append(a)
        left -= a.dim
    return blocks


def nijenhuis_candidates(rng, profile: Profile, g: LeibnizAlgebra, blocks: list[LeibnizAlgebra] | None = None) -> list[np.ndarray]:
    """Operators likely to be Nijenhuis on ``g`` (scalars, block scalars, central shears)."""
    n = g.dim
    out = [rand_q(rng, profile) * qeye(n)]
    if blocks:
        diag = qzeros((n, n))
        off = 0
        for b in blocks:
            lam = rand_q(rng, profile)
            for i in range(off, off + b.dim):
                diag[i, i] = lam
            off += b.dim
        out.append(diag)
    # lam * Id + M with M(g) inside the two-sided annihilator and M(annihilator) = 0
    ann = _annihilator(g)
    if ann:
        lam = rand_q(rng, profile)
        m = qzeros((n, n))
        for v in ann:
            m = m + np.outer(v, rand_array(rng, profile, (n,)))
        m_killed = m.copy()
        proj_ok = all(all(val == 0 for val in m @ v) for v in ann)
        if proj_ok:
            out.append(lam * qeye(n) + m_killed)
    return out


def _annihilator(g: LeibnizAlgebra) -> list[np.ndarray]:
    """Basis of ``{z : [z, .] = [., z] = 0}``."""
    n = g.dim
    if n == 0:
        return []
    rows = np.concatenate([ein("zjk->jkz", g.bracket).reshape(-1, n), ein("izk->ikz", g.bracket).reshape(-1, n)])
    return kernel_basis(rows)


def gen_leibniz(seed: int, profile: Profile, strategy: str | None = None, budget: int = 20) -> LeibnizAlgebra:
    """A verified Leibniz algebra of dimension ``profile.dim_g``."""
    rng = rng_for(seed)
    n = profile.dim_g
    if n == 0 or strategy == "abelian":
        return LeibnizAlgebra.abelian(n)
    for _ in range(budget):
        choice = strategy or ["catalog", "nilpotent", "nijenhuis"][int(rng.integers(3))]
        if choice == "catalog":
            g = direct_sum(*_catalog_sum(rng, n))
        elif choice == "nilpotent":
            g = nilpotent_algebra(rng, profile, n)
        elif choice == "nijenhuis":
            blocks = _catalog_sum(rng, n)
            base = direct_sum(*blocks)
            cands = [c for c in nijenhuis_candidates(rng, profile, base, blocks) if check_nijenhuis(base, c).holds]
            g = deformed_bracket(base, cands[int(rng.integers(len(cands)))]) if cands else base
        else:
            raise ValueError(f"unknown algebra strategy {strategy!r}")
        g = change_basis(g, rand_unimodular(rng, n))
        if check_leibniz(g).holds:
            return g
    raise GenerationError("no verified Leibniz algebra within budget")


def _characters(g: LeibnizAlgebra) -> list[np.ndarray]:
    """Linear forms vanishing on all brackets."""
    n = g.dim
    if n == 0:
        return []
    return kernel_basis(g.bracket.reshape(n * n, n))


def _block_diag_rep(g: LeibnizAlgebra, blocks: list[tuple[np.ndarray, np.ndarray]]) -> Representation:
    m = sum(b[0].shape[1] for b in blocks)
    rl, rr = qzeros((g.dim, m, m)), qzeros((g.dim, m, m))
    off = 0
    for bl, br in blocks:
        s = slice(off, off + bl.shape[1])
        rl[:, s, s] = bl
        rr[:, s, s] = br
        off += bl.shape[1]
    return Representation(g, rl, rr)


def transport_rep(r: Representation, q: np.ndarray) -> Representation:
    """Change of basis on V: ``rho'(x) = Q^{-1} rho(x) Q``."""
    qi = invert(q)
    return Representation(r.algebra, ein("ab,ibc,cd->iad", qi, r.rho_l, q), ein("ab,ibc,cd->iad", qi, r.rho_r, q))


def gen_representation(seed: int, g: LeibnizAlgebra, dim_v: int, budget: int = 20) -> Representation:
    """A verified representation of ``g`` built from regular, left-multiplication and character blocks."""
    rng = rng_for(seed)
    n = g.dim
    reg = regular_representation(g)
    lmul = reg.rho_l
    chars = _characters(g)
    for _ in range(budget):
        blocks = []
        left = dim_v
        while left > 0:
            kinds = ["zero"]
            if n and left >= n:
                kinds += ["regular", "left_zero", "left_neg"]
            if chars:
                kinds += ["char_zero", "char_neg"]
            kind = kinds[int(rng.integers(len(kinds)))]
            if kind == "regular":
                blocks.append((reg.rho_l, reg.rho_r))
                left -= n
            elif kind == "left_zero":
                blocks.append((lmul, qzeros(lmul.shape)))
                left -= n
            elif kind == "left_neg":
                blocks.append((lmul, -lmul))
                left -= n
            elif kind.startswith("char"):
                lam = chars[int(rng.integers(len(chars)))] * Fraction(int(rng.integers(1, 3)))
                bl = lam.reshape(n, 1, 1)
                blocks.append((bl, -bl if kind == "char_neg" else qzeros(bl.shape)))
                left -= 1
            else:
                blocks.append((qzeros((n, 1, 1)), qzeros((n, 1, 1))))
                left -= 1
        r = _block_diag_rep(g, blocks) if blocks else Representation.zero(g, 0)
        r = transport_rep(r, rand_unimodular(rng, dim_v))
        if check_representation(r).holds:
            return r
    raise GenerationError("no verified representation within budget")


def gen_cocycle(rep: Representation, degree: int, seed: int, profile: Profile | None = None) -> Cochain:
    """A random combination of a cocycle basis (kernel of the coboundary matrix)."""
    rng = rng_for(seed)
    profile = profile or Profile()
    out = Cochain.zero(rep, degree)
    for b in cocycle_basis(rep, degree):
        out = out + rand_q(rng, profile) * b
    return out


def gen_cochain(rep: Representation, degree: int, seed: int, profile: Profile | None = None) -> Cochain:
    rng = rng_for(seed)
    profile = profile or Profile()
    return Cochain(rep, rand_array(rng, profile, (rep.dim_g,) * degree + (rep.dim_v,)))


def _pad_data(d: TwistedRBData, extra: int, rng, profile: Profile) -> TwistedRBData:
    """Extend V by ``extra`` trivial directions on which K vanishes."""
    g = d.algebra
    n, m = d.dim_g, d.dim_v
    rl, rr = qzeros((n, m + extra, m + extra)), qzeros((n, m + extra, m + extra))
    rl[:, :m, :m] = d.rep.rho_l
    rr[:, :m, :m] = d.rep.rho_r
    rep = Representation(g, rl, rr)
    h = qzeros((n, n, m + extra))
    h[:, :, :m] = d.h.values
    if extra:
        zero_rep = Representation.zero(g, extra)
        h[:, :, m:] = gen_cocycle(zero_rep, 2, int(rng.integers(2**31)), profile).values
    k = qzeros((n, m + extra))
    k[:, :m] = d.k
    return TwistedRBData(rep, Cochain(rep, h), k)


def transport_data(d: TwistedRBData, q: np.ndarray) -> TwistedRBData:
    """Change of basis on V: ``K' = K Q`` with the representation and H transported."""
    rep = transport_rep(d.rep, q)
    h = apply_matrix(invert(q), d.h.values)
    return TwistedRBData(rep, Cochain(rep, h), d.k @ q)


def apply_matrix(m: np.ndarray, t: np.ndarray) -> np.ndarray:
    return ein("ijl,kl->ijk", t, m)


def _base_data(rng, profile: Profile, strategy: str) -> TwistedRBData:
    n, m = profile.dim_g, profile.dim_v
    sub_seed = lambda: int(rng.integers(2**31))  # noqa: E731
    if strategy == "zero_k":
        g = gen_leibniz(sub_seed(), profile)
        rep = gen_representation(sub_seed(), g, m)
        return TwistedRBData(rep, gen_cocycle(rep, 2, sub_seed(), profile), qzeros((n, m)))
    if strategy == "invertible_cochain":
        g = gen_leibniz(sub_seed(), profile)
        rep = gen_representation(sub_seed(), g, n)
        h = Cochain.from_matrix(rep, rand_invertible(rng, profile, n))
        return from_invertible_cochain(rep, h)
    if strategy == "nijenhuis":
        blocks = _catalog_sum(rng, n)
        g = direct_sum(*blocks) if rng.integers(2) else nilpotent_algebra(rng, profile, n)
        cands = [c for c in nijenhuis_candidates(rng, profile, g, blocks) if check_nijenhuis(g, c).holds]
        nmat = cands[int(rng.integers(len(cands)))]
        # a random polynomial in a Nijenhuis operator is again one
        poly = rand_q(rng, profile) * qeye(n) + rand_q(rng, profile) * nmat + rand_q(rng, profile) * (nmat @ nmat)
        if check_nijenhuis(g, poly).holds:
            nmat = poly
        p = rand_unimodular(rng, n)
        g2 = change_basis(g, p)
        return from_nijenhuis(g2, invert(p) @ nmat @ p)
    if strategy == "shift":
        base = _base_data(rng, profile, ["invertible_cochain", "nijenhuis", "zero_k"][int(rng.integers(3))])
        for _ in range(10):
            h = Cochain(base.rep, rand_array(rng, profile, (n, base.dim_v)))
            out = shift_by_cochain(base, h)
            if out is not None:
                return out
        return base
    if strategy == "pad":
        inner = Profile(n, min(n, m), profile.max_numerator, profile.max_denominator)
        base = _base_data(rng, inner, ["invertible_cochain", "nijenhuis"][int(rng.integers(2))] if inner.dim_v == n else "zero_k")
        return _pad_data(base, m - inner.dim_v, rng, profile)
    raise ValueError(f"unknown strategy {strategy!r}")


def gen_twisted_rb(seed: int, profile: Profile, strategy: str | None = None, budget: int = 20) -> TwistedRBData:
    """A verified H-twisted relative Rota-Baxter operator.

    Strategies: ``zero_k`` (K = 0, random cocycle H), ``invertible_cochain``
    (K = h^{-1}, H = -dh), ``nijenhuis`` (Id: g -> g_N), ``shift`` (one of the
    former followed by a shift along a random 1-cochain) and ``pad`` (extra
    trivial V-directions in the kernel of K). Strategies needing
    ``dim_v = dim_g`` fall back to ``pad`` or ``zero_k`` otherwise. The
    result is transported by a random change of basis on V.
    """
    rng = rng_for(seed)
    n, m = profile.dim_g, profile.dim_v
    for _ in range(budget):
        s = strategy or STRATEGIES[int(rng.integers(len(STRATEGIES)))]
        if s in ("invertible_cochain", "nijenhuis", "shift") and m != n:
            s = "pad" if m > n else "zero_k"
        if n == 0:
            s = "zero_k"
        d = _base_data(rng, profile, s)
        d = transport_data(d, rand_unimodular(rng, m))
        if check_twisted_rb(d).holds and is_cocycle(d.h).holds:
            return d
    raise GenerationError("no verified twisted Rota-Baxter operator within budget")


def perturb(d: TwistedRBData, seed: int, profile: Profile | None = None) -> TwistedRBData:
    """``K`` plus a random rank-one matrix; usually breaks the operator identity."""
    rng = rng_for(seed)
    profile = profile or Profile()
    a = rand_array(rng, profile, (d.dim_g,))
    b = rand_array(rng, profile, (d.dim_v,))
    if all(v == 0 for v in a):
        a[0] = Fraction(1)
    if all(v == 0 for v in b):
        b[0] = Fraction(1)
    return d.with_k(d.k + np.outer(a, b))


def gen_nijenhuis_element(d: TwistedRBData, seed: int, tries: int = 12) -> np.ndarray | None:
    """A Nijenhuis element with nonzero ``d_K(x)`` if one is found among sampled candidates."""
    from .deformation import check_nijenhuis_element, nijenhuis_element_candidates
    from .rota_baxter import dk_of_element

    rng = rng_for(seed)
    basis = nijenhuis_element_candidates(d)
    if not basis:
        return None
    samples = list(basis)
    prof = Profile(max_numerator=2, max_denominator=1)
    for _ in range(tries):
        samples.append(sum((rand_q(rng, prof) * b for b in basis), qzeros(d.dim_g)))
    for x in samples:
        if all(v == 0 for v in dk_of_element(d, x).flat):
            continue
        if check_nijenhuis_element(d, x).holds:
            return x
    return None


def gen_linear_deformation(d: TwistedRBData, seed: int, tries: int = 12) -> np.ndarray | None:
    """A nonzero ``K_1`` generating a linear deformation, if sampling finds one."""
    from .deformation import LinearDeformation, check_linear_deformation, linear_deformation_candidates

    rng = rng_for(seed)
    basis = linear_deformation_candidates(d)
    if not basis:
        return None
    prof = Profile(max_numerator=2, max_denominator=1)
    samples = list(basis)
    for _ in range(tries):
        samples.append(sum((rand_q(rng, prof) * b for b in basis), qzeros(d.k.shape)))
    for k1 in samples:
        if all(v == 0 for v in k1.flat):
            continue
        if check_linear_deformation(LinearDeformation(d, k1)).holds:
            return k1
    return None


def coboundary_of_random(rep: Representation, degree: int, seed: int, profile: Profile | None = None) -> Cochain:
    return coboundary(gen_cochain(rep, degree - 1, seed, profile))


def gen_nijenhuis(seed: int, g: LeibnizAlgebra, profile: Profile | None = None) -> np.ndarray:
    """A Nijenhuis operator on ``g``: a random polynomial in a sampled candidate, checker-gated."""
    rng = rng_for(seed)
    profile = profile or Profile()
    n = g.dim
    cands = [c for c in nijenhuis_candidates(rng, profile, g) if check_nijenhuis(g, c).holds]
    nmat = cands[int(rng.integers(len(cands)))] if cands else qzeros((n, n))
    poly = rand_q(rng, profile) * qeye(n) + rand_q(rng, profile) * nmat + rand_q(rng, profile) * (nmat @ nmat)
    return poly if check_nijenhuis(g, poly).holds else nmat


def gen_negative_trb(seed: int, profile: Profile, budget: int = 20) -> TwistedRBData | None:
    """A bundle whose K fails the operator identity (verified), or ``None``."""
    for attempt in range(budget):
        d = gen_twisted_rb(seed + 7919 * attempt, profile)
        bad = perturb(d, seed + attempt, profile)
        if not check_twisted_rb(bad).holds:
            return bad
    return None


def gen_equivalent_pair(d: TwistedRBData, seed: int):
    """``(K_1, K'_1, x)`` with ``K'_1 = K_1 - d_K(x)`` for a Nijenhuis element ``x``.

    Both ``K + tK_1`` and ``K + tK'_1`` are verified linear deformations and
    ``d_K(x) != 0``; the equivalence conditions themselves are *not*
    pre-checked. Returns ``None`` when sampling finds nothing.
    """
    from .deformation import LinearDeformation, check_linear_deformation, linear_deformation_candidates
    from .rota_baxter import dk_of_element

    x = gen_nijenhuis_element(d, seed)
    if x is None:
        return None
    dk = dk_of_element(d, x)
    for k1 in [qzeros(d.k.shape), *linear_deformation_candidates(d)]:
        if not check_linear_deformation(LinearDeformation(d, k1)).holds:
            continue
        if check_linear_deformation(LinearDeformation(d, k1 - dk)).holds:
            return k1, k1 - dk, x
    return None
