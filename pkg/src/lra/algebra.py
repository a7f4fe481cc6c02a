"""Leibniz algebras, representations and cochains given by structure constants.

Conventions
-----------
* A Leibniz algebra of dimension ``n`` is stored as a tensor ``c`` of shape
  ``(n, n, n)`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``. The identity is the
  left Leibniz rule ``[x, [y, z]] = [[x, y], z] + [y, [x, z]]``.
* A representation on ``V`` (dimension ``m``) stores ``rho_l[i]`` and
  ``rho_r[i]`` as ``m x m`` matrices acting on column vectors.
* Linear maps are plain ``target x source`` matrices; ``K e_a`` is column ``a``.
* Indices are 0-based everywhere.

All checks iterate over basis tuples only: every identity involved is
multilinear, so agreement on basis tuples is agreement everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import qarray, qzeros
from .report import CheckReport, compare


def ein(subscripts: str, *operands) -> np.ndarray:
    return np.einsum(subscripts, *operands, dtype=object)


# Triple products of bilinear operations given as (n, n, n) tensors; the
# results are indexed (x, y, z, out).
def nest_left(p, q):
    """x p (y q z)"""
    return ein("yzk,xkl->xyzl", q, p)


def nest_right(p, q):
    """(x p y) q z"""
    return ein("xyk,kzl->xyzl", p, q)


def nest_swap(p, q):
    """y p (x q z)"""
    return ein("xzk,ykl->xyzl", q, p)


def apply(m: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Post-compose a bilinear tensor with a linear map: ``m[x, y]``."""
    return ein("ijl,kl->ijk", c, m)


def _check_square_tensor(t: np.ndarray, name: str) -> int:
    if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
        raise ValueError(f"{name} must have shape (n, n, n), got {t.shape}")
    return t.shape[0]


def _degenerate_notes(dim: int) -> list[str]:
    if dim == 0:
        return ["dimension 0: the check holds vacuously"]
    if dim == 1:
        return ["dimension 1: degenerate case"]
    return []


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    bracket: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bracket", qarray(self.bracket))
        _check_square_tensor(self.bracket, "bracket")

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    @classmethod
    def abelian(cls, n: int) -> LeibnizAlgebra:
        return cls(qzeros((n, n, n)))

    @classmethod
    def from_products(cls, n: int, products: dict) -> LeibnizAlgebra:
        """``products[(i, j)] = {k: coeff}`` lists the nonzero brackets."""
        c = qzeros((n, n, n))
        for (i, j), out in products.items():
            for k, v in out.items():
                c[i, j, k] = v
        return cls(c)

    def br(self, x, y) -> np.ndarray:
        return ein("i,j,ijk->k", x, y, self.bracket)

    def left_mult(self, x) -> np.ndarray:
        """Matrix of ``L_x = [x, .]``."""
        return ein("i,ijk->kj", x, self.bracket)

    def right_mult(self, x) -> np.ndarray:
        """Matrix of ``R_x = [., x]``."""
        return ein("j,ijk->ki", x, self.bracket)

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and np.array_equal(self.bracket, other.bracket)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: LeibnizAlgebra
    rho_l: np.ndarray
    rho_r: np.ndarray

    def __post_init__(self):
        n = self.algebra.dim
        rl = qarray(self.rho_l)
        rr = qarray(self.rho_r)
        if rl.ndim != 3 or rl.shape[0] != n or rl.shape[1] != rl.shape[2]:
            raise ValueError(f"rho_l must have shape ({n}, m, m), got {rl.shape}")
        if rr.shape != rl.shape:
            raise ValueError(f"rho_r shape {rr.shape} differs from rho_l shape {rl.shape}")
        object.__setattr__(self, "rho_l", rl)
        object.__setattr__(self, "rho_r", rr)

    @property
    def dim_g(self) -> int:
        return self.algebra.dim

    @property
    def dim_v(self) -> int:
        return self.rho_l.shape[1]

    @classmethod
    def zero(cls, algebra: LeibnizAlgebra, dim_v: int) -> Representation:
        z = qzeros((algebra.dim, dim_v, dim_v))
        return cls(algebra, z, z.copy())

    def left(self, x) -> np.ndarray:
        """Matrix of ``rho^L(x)``."""
        return ein("i,iab->ab", x, self.rho_l)

    def right(self, x) -> np.ndarray:
        """Matrix of ``rho^R(x)``."""
        return ein("i,iab->ab", x, self.rho_r)

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.algebra == other.algebra
            and np.array_equal(self.rho_l, other.rho_l)
            and np.array_equal(self.rho_r, other.rho_r)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Cochain:
    """An n-cochain ``g^{(x)n} -> V``.

    ``values`` has shape ``(dim_g,) * n + (dim_v,)`` so that
    ``values[i_1, ..., i_n]`` is the vector ``f(e_{i_1}, ..., e_{i_n})``; a
    0-cochain is a single vector. C-order flattening of ``values`` is the
    coordinate order used for all coboundary matrices.
    """

    rep: Representation
    values: np.ndarray

    def __post_init__(self):
        vals = qarray(self.values)
        n, m = self.rep.dim_g, self.rep.dim_v
        if vals.ndim < 1 or vals.shape[-1] != m or any(s != n for s in vals.shape[:-1]):
            raise ValueError(f"cochain values of shape {vals.shape} do not fit dim_g={n}, dim_v={m}")
        object.__setattr__(self, "values", vals)

    @property
    def degree(self) -> int:
        return self.values.ndim - 1

    @classmethod
    def zero(cls, rep: Representation, degree: int) -> Cochain:
        return cls(rep, qzeros((rep.dim_g,) * degree + (rep.dim_v,)))

    @classmethod
    def from_matrix(cls, rep: Representation, m: np.ndarray) -> Cochain:
        """1-cochain of the linear map ``g -> V`` with matrix ``m`` (dim_v x dim_g)."""
        return cls(rep, qarray(m).T)

    def as_matrix(self) -> np.ndarray:
        if self.degree != 1:
            raise ValueError("only 1-cochains are linear maps")
        return self.values.T.copy()

    def evaluate(self, *args) -> np.ndarray:
        """Multilinear evaluation on arbitrary coordinate vectors."""
        out = self.values
        for a in args:
            out = np.tensordot(np.asarray(a, dtype=object), out, axes=(0, 0))
        return out

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.flat)

    def __add__(self, other: Cochain) -> Cochain:
        return Cochain(self.rep, self.values + other.values)

    def __sub__(self, other: Cochain) -> Cochain:
        return Cochain(self.rep, self.values - other.values)

    def __neg__(self) -> Cochain:
        return Cochain(self.rep, -self.values)

    def __rmul__(self, scalar) -> Cochain:
        return Cochain(self.rep, self.values * scalar)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.values.shape == other.values.shape and np.array_equal(
            self.values, other.values
        )

    __hash__ = None


def bicochain(rep: Representation, values) -> Cochain:
    """A 2-cochain ``H``; ``values[i, j]`` is ``H(e_i, e_j)``."""
    ch = Cochain(rep, values)
    if ch.degree != 2:
        raise ValueError(f"a bicochain has degree 2, got {ch.degree}")
    return ch


def check_leibniz(g: LeibnizAlgebra) -> CheckReport:
    c = g.bracket
    lhs = nest_left(c, c)
    rhs = nest_right(c, c) + nest_swap(c, c)
    rep = compare(lhs, rhs, labels=("x", "y", "z"))
    rep.notes.extend(_degenerate_notes(g.dim))
    return rep


def _flat_pairs(t: np.ndarray) -> np.ndarray:
    return t.reshape(t.shape[0], t.shape[1], -1 if t.size else 0)


def check_representation(r: Representation) -> CheckReport:
    """The three identities, reported as axiom 1, 2 or 3."""
    c, rl, rr = r.algebra.bracket, r.rho_l, r.rho_r
    l_br = ein("ijk,kab->ijab", c, rl)
    r_br = ein("ijk,kab->ijab", c, rr)
    lx_ly = ein("iac,jcb->ijab", rl, rl)
    ly_lx = ein("jac,icb->ijab", rl, rl)
    lx_ry = ein("iac,jcb->ijab", rl, rr)
    ry_lx = ein("jac,icb->ijab", rr, rl)
    ry_rx = ein("jac,icb->ijab", rr, rr)
    for axiom, lhs, rhs in (
        (1, l_br, lx_ly - ly_lx),
        (2, r_br, lx_ry - ry_lx),
        (3, r_br, lx_ry + ry_rx),
    ):
        rep = compare(_flat_pairs(lhs), _flat_pairs(rhs), which=axiom, labels=("x", "y"))
        if not rep.holds:
            return rep
    return CheckReport(True, notes=_degenerate_notes(r.dim_g))


def regular_representation(g: LeibnizAlgebra) -> Representation:
    """``rho^L(x) = [x, .]`` and ``rho^R(x) = [., x]`` on ``g`` itself."""
    c = g.bracket
    return Representation(g, ein("ijk->ikj", c), ein("jik->ikj", c))


def _as_square(n: np.ndarray, dim: int, name: str = "N") -> np.ndarray:
    n = qarray(n)
    if n.shape != (dim, dim):
        raise ValueError(f"{name} must be {dim}x{dim}, got {n.shape}")
    return n


def nijenhuis_torsion_terms(c: np.ndarray, n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``[Nx, Ny] = N([Nx, y] + [x, Ny] - N[x, y])`` on basis pairs."""
    lhs = ein("ai,bj,abk->ijk", n, n, c)
    rhs = apply(n, deformed_tensor(c, n))
    return lhs, rhs


def deformed_tensor(c: np.ndarray, n: np.ndarray) -> np.ndarray:
    return ein("ai,ajk->ijk", n, c) + ein("bj,ibk->ijk", n, c) - apply(n, c)


def check_nijenhuis(g: LeibnizAlgebra, n: np.ndarray) -> CheckReport:
    n = _as_square(n, g.dim)
    lhs, rhs = nijenhuis_torsion_terms(g.bracket, n)
    return compare(lhs, rhs, labels=("x", "y"))


def deformed_bracket(g: LeibnizAlgebra, n: np.ndarray) -> LeibnizAlgebra:
    """The bracket ``[x, y]_N = [Nx, y] + [x, Ny] - N[x, y]``."""
    n = _as_square(n, g.dim)
    rep = check_nijenhuis(g, n)
    if not rep.holds:
        raise ValueError(f"not a Nijenhuis operator: {rep.first_failure}")
    return LeibnizAlgebra(deformed_tensor(g.bracket, n))


def semidirect_tensor(r: Representation, h: np.ndarray) -> np.ndarray:
    """Structure constants of ``g + V`` with ``[(x,u),(y,v)] = ([x,y], rho^L(x)v + rho^R(y)u + H(x,y))``."""
    n, m = r.dim_g, r.dim_v
    t = qzeros((n + m, n + m, n + m))
    t[:n, :n, :n] = r.algebra.bracket
    t[:n, :n, n:] = h
    # rho^L(e_i) e_b has component a equal to rho_l[i][a, b]
    t[:n, n:, n:] = ein("iab->iba", r.rho_l)
    # rho^R(e_j) e_a has component b equal to rho_r[j][b, a]
    t[n:, :n, n:] = ein("jba->ajb", r.rho_r)
    return t


def twisted_semidirect(r: Representation, h: Cochain, verify: bool = True) -> LeibnizAlgebra:
    """The twisted semidirect product; basis is the g-basis followed by the V-basis."""
    if h.degree != 2:
        raise ValueError("the twisting datum must be a 2-cochain")
    if verify:
        from .cohomology import is_cocycle

        rep = is_cocycle(h)
        if not rep.holds:
            raise ValueError(f"twisting datum is not a 2-cocycle: {rep.first_failure}")
    return LeibnizAlgebra(semidirect_tensor(r, h.values))
