"""Deformations of a twisted Rota-Baxter operator and their triviality.

A linear deformation K + tK_1 stays twisted Rota-Baxter for every t. Its
infinitesimal K_1 is a 1-cocycle in the cohomology of K, and deformations
related by an element x of g differ, to first order, by d_K(x). Nijenhuis
elements produce deformations that can be trivialized order by order.
"""
import numpy as np

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
from lra.generate import Profile, gen_equivalent_pair, gen_linear_deformation, gen_nijenhuis_element, gen_twisted_rb
from lra.linalg import format_rational
from lra.rota_baxter import dk_of_element, k_cohomology_dims


def mat(m):
    return [[format_rational(v) for v in row] for row in m]


def first(seeds, fn):
    for s in seeds:
        d = gen_twisted_rb(s, Profile(2, 2))
        out = fn(d, s)
        if out is not None:
            return s, d, out
    raise SystemExit("no instance found in the seed range")


seed, d, k1 = first(range(40), gen_linear_deformation)
ld = LinearDeformation(d, k1)
print(f"seed {seed}: K =", mat(d.k), " K_1 =", mat(k1))
print("  linear deformation:", check_linear_deformation(ld).holds, "| K_1 is a cocycle:", infinitesimal_is_cocycle(ld).holds)
print("  H^1 of the operator:", k_cohomology_dims(d, 1).to_dict())

seed, d, (ka, kb, x) = first(range(40, 120), gen_equivalent_pair)
rep = check_equivalence(LinearDeformation(d, ka), LinearDeformation(d, kb), EquivalenceDatum(x))
print(f"\nseed {seed}: equivalent deformations via x = {[format_rational(v) for v in x]}:", rep.holds)
print("  K_1 - K'_1 == d_K(x):", np.array_equal(ka - kb, dk_of_element(d, x)))

seed, d, x = first(range(40, 120), gen_nijenhuis_element)
tfd = transported_deformation(d, x, order=3)
print(f"\nseed {seed}: Nijenhuis element x = {[format_rational(v) for v in x]}")
print("  transported deformation to order 3 holds:", check_formal_deformation(tfd).holds)
print("  its K_1 =", mat(tfd.k1))
trivial = trivialization_step(tfd, x)
print("  after the trivialization step K_1 =", mat(trivial.k1), "| still a deformation:", check_formal_deformation(trivial).holds)
