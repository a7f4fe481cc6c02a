"""Twisted Rota-Baxter operators: constructions, induced structures, symmetries.

An operator K: V -> g is twisted Rota-Baxter for a 2-cocycle H when

    [Ku, Kv] = K( rho^L(Ku) v + rho^R(Kv) u + H(Ku, Kv) ).

This script builds operators in the two classical ways, verifies them both
directly and through their graph, and walks through the induced algebra,
the shift by a 1-cochain and the gauge transformation by a 1-cocycle.
"""
from lra.algebra import Cochain, LeibnizAlgebra, check_leibniz, check_representation, regular_representation
from lra.cohomology import is_cocycle
from lra.generate import Profile, gen_cochain, gen_cocycle, gen_leibniz, gen_negative_trb, gen_nijenhuis, gen_twisted_rb
from lra.linalg import format_rational, qarray
from lra.rota_baxter import (
    check_twisted_rb,
    from_invertible_cochain,
    from_nijenhuis,
    gauge_bracket_isomorphism,
    gauge_transform,
    graph_is_subalgebra,
    induced_bracket,
    induced_representation,
    shift_by_cochain,
)


def mat(m):
    return [[format_rational(v) for v in row] for row in qarray(m)]


nil2 = LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}})
reg = regular_representation(nil2)

# 1. An invertible 1-cochain h: g -> V gives K = h^{-1} with H = -d(h).
h = Cochain.from_matrix(reg, qarray([[0, 1], [1, 0]]))
d = from_invertible_cochain(reg, h)
print("K = h^-1 =", mat(d.k))
print("  twisted Rota-Baxter:", check_twisted_rb(d).holds, "| graph is a subalgebra:", graph_is_subalgebra(d).holds)

# 2. A Nijenhuis operator N gives Id: g_N -> g twisted by a cocycle built from N.
g = gen_leibniz(3, Profile(3, 3))
n = gen_nijenhuis(3, g)
dn = from_nijenhuis(g, n)
print("\nfrom a Nijenhuis operator:", check_twisted_rb(dn).holds, "| H is a cocycle:", is_cocycle(dn.h).holds)

# A perturbed operator fails; the direct identity and the graph criterion agree.
bad = gen_negative_trb(1, Profile(2, 2))
direct, graph = check_twisted_rb(bad), graph_is_subalgebra(bad)
print("perturbed K:", direct.holds, graph.holds, "- first failing basis pair", direct.first_failure["indices"])

# 3. The induced bracket on V and the induced representation on g.
d = gen_twisted_rb(11, Profile(2, 3))
print("\nseed-11 operator, dim g = 2, dim V = 3")
print("  induced bracket on V is Leibniz:", check_leibniz(induced_bracket(d)).holds)
print("  induced representation on g passes:", check_representation(induced_representation(d)).holds)

# 4. Shift by a 1-cochain: same K, cocycle H + dh, whenever Id - hK is invertible.
shifted = shift_by_cochain(d, gen_cochain(d.rep, 1, seed=5))
if shifted is None:
    print("  shift: Id - hK is singular for this h")
else:
    print("  shifted operator is twisted Rota-Baxter:", check_twisted_rb(shifted).holds)

# 5. Gauge transformation by a 1-cocycle B: same H, new operator K (Id + BK)^-1.
b = gen_cocycle(d.rep, 1, seed=5)
gauged = gauge_transform(d, b)
if gauged is not None:
    print("  gauge-transformed operator:", check_twisted_rb(gauged).holds)
    print("  induced brackets are isomorphic via Id + BK:", gauge_bracket_isomorphism(d, b).holds)
