"""Loday-Pirashvili cochain complex of a Leibniz algebra with coefficients.

For ``f`` in ``C^n(g, V) = Hom(g^{(x)n}, V)``::

    (df)(x_1..x_{n+1}) = sum_{i<=n} (-1)^{i+1} rho^L(x_i) f(..^x_i..)
                         + (-1)^{n+1} rho^R(x_{n+1}) f(x_1..x_n)
                         + sum_{i<j} (-1)^i f(..^x_i.., x_{j-1}, [x_i, x_j], x_{j+1}..)

At ``n = 0`` this reads ``(dv)(x) = -rho^R(x) v``; the opposite sign is
available through ``convention="negated"``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .algebra import Cochain, Representation, ein
from .linalg import kernel_basis, qzeros, rank, solve
from .report import CheckReport, compare

CONVENTIONS = ("literal", "negated")
DEFAULT_DEGREE_CAP = 3


def degree_cap() -> int:
    """Degree cap for cohomology computations; ``LRA_DEGREE_CAP`` overrides it."""
    return int(os.environ.get("LRA_DEGREE_CAP", DEFAULT_DEGREE_CAP))


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int

    @property
    def dim_cohomology(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def to_dict(self) -> dict:
        return {"degree": self.degree, "z": self.dim_cocycles, "b": self.dim_coboundaries, "h": self.dim_cohomology}


def _coboundary_values(rep: Representation, vals: np.ndarray, convention: str = "literal") -> np.ndarray:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown degree-0 convention {convention!r}")
    n = vals.ndim - 1
    c, rl, rr = rep.algebra.bracket, rep.rho_l, rep.rho_r
    # 'v', 'w', 'z' stay free for the value and summation indices
    letters = "abcdefghijklmnopqrs"[: n + 1]
    out_idx = letters + "v"
    out = qzeros((rep.dim_g,) * (n + 1) + (rep.dim_v,))

    for i in range(n):
        rest = letters[:i] + letters[i + 1 :]
        out = out + (-1) ** i * ein(f"{letters[i]}vw,{rest}w->{out_idx}", rl, vals)

    sign = (-1) ** (n + 1)
    if n == 0 and convention == "negated":
        sign = -sign
    out = out + sign * ein(f"{letters[n]}vw,{letters[:n]}w->{out_idx}", rr, vals)

    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            f_idx = list(letters)
            f_idx[j] = "z"
            del f_idx[i]
            out = out + (-1) ** (i + 1) * ein(f"{letters[i]}{letters[j]}z,{''.join(f_idx)}v->{out_idx}", c, vals)
    return out


def coboundary(f: Cochain, convention: str = "literal") -> Cochain:
    return Cochain(f.rep, _coboundary_values(f.rep, f.values, convention))


def is_cocycle(f: Cochain, convention: str = "literal") -> CheckReport:
    df = coboundary(f, convention)
    zero = qzeros(df.values.shape)
    return compare(df.values, zero)


def two_cocycle_condition(h: Cochain) -> CheckReport:
    """The six-term 2-cocycle identity written out directly.

    rho^L(x)H(y,z) - rho^L(y)H(x,z) - rho^R(z)H(x,y)
        - H([x,y],z) - H(y,[x,z]) + H(x,[y,z]) = 0
    """
    if h.degree != 2:
        raise ValueError("expected a 2-cochain")
    rep = h.rep
    c, rl, rr, hv = rep.algebra.bracket, rep.rho_l, rep.rho_r, h.values
    total = (
        ein("xvw,yzw->xyzv", rl, hv)
        - ein("yvw,xzw->xyzv", rl, hv)
        - ein("zvw,xyw->xyzv", rr, hv)
        - ein("xyk,kzv->xyzv", c, hv)
        - ein("xzk,ykv->xyzv", c, hv)
        + ein("yzk,xkv->xyzv", c, hv)
    )
    return compare(total, qzeros(total.shape), labels=("x", "y", "z"))


def cochain_space_dim(rep: Representation, degree: int) -> int:
    return rep.dim_g**degree * rep.dim_v


def coboundary_matrix(rep: Representation, degree: int, convention: str = "literal") -> np.ndarray:
    """Matrix of ``d: C^degree -> C^{degree+1}`` in C-order flattened coordinates."""
    src = cochain_space_dim(rep, degree)
    dst = cochain_space_dim(rep, degree + 1)
    shape = (rep.dim_g,) * degree + (rep.dim_v,)
    mat = qzeros((dst, src))
    for col in range(src):
        e = qzeros(src)
        e[col] = 1
        mat[:, col] = _coboundary_values(rep, e.reshape(shape), convention).reshape(-1)
    return mat


def is_coboundary(f: Cochain, convention: str = "literal") -> Cochain | None:
    """A preimage under ``d`` of ``f``, or ``None`` if ``f`` is not a coboundary."""
    if f.degree < 1:
        raise ValueError("0-cochains are never coboundaries")
    mat = coboundary_matrix(f.rep, f.degree - 1, convention)
    x = solve(mat, f.values.reshape(-1))
    if x is None:
        return None
    shape = (f.rep.dim_g,) * (f.degree - 1) + (f.rep.dim_v,)
    return Cochain(f.rep, x.reshape(shape))


def _check_cap(degree: int, cap: int | None) -> int:
    cap = degree_cap() if cap is None else cap
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree > cap:
        raise ValueError(f"degree {degree} exceeds the configured cap {cap}")
    return cap


def cohomology_dims(rep: Representation, degree: int, cap: int | None = None, convention: str = "literal") -> CohomologyReport:
    _check_cap(degree, cap)
    d_n = coboundary_matrix(rep, degree, convention)
    z = d_n.shape[1] - rank(d_n)
    b = 0 if degree == 0 else rank(coboundary_matrix(rep, degree - 1, convention))
    return CohomologyReport(degree, z, b)


def cocycle_basis(rep: Representation, degree: int, convention: str = "literal") -> list[Cochain]:
    shape = (rep.dim_g,) * degree + (rep.dim_v,)
    return [Cochain(rep, v.reshape(shape)) for v in kernel_basis(coboundary_matrix(rep, degree, convention))]
