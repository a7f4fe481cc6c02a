"""NS-Leibniz algebras from Nijenhuis operators and twisted Rota-Baxter operators.

Both constructions split a bracket into three operations > , < and o whose
sum is again Leibniz; going back through the canonical operator recovers
the same structure.
"""
import numpy as np

from lra.algebra import LeibnizAlgebra, deformed_bracket
from lra.generate import Profile, gen_twisted_rb
from lra.linalg import qeye
from lra.ns import canonical_trb, check_ns_axioms, compatible_ns_from_invertible, ns_from_nijenhuis, ns_from_twisted_rb, subadjacent
from lra.rota_baxter import check_twisted_rb, induced_bracket

nil2 = LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}})
a = ns_from_nijenhuis(nil2, 2 * qeye(2))
print("N = 2 Id on the nilpotent algebra:", check_ns_axioms(a).holds)
print("  subadjacent bracket equals the deformed bracket:", subadjacent(a) == deformed_bracket(nil2, 2 * qeye(2)))

bad = ns_from_nijenhuis(nil2, 2 * qeye(2))
bad.dia[0, 0, 0] += 1
report = check_ns_axioms(bad)
print("  breaking one structure constant of o fails axiom", report.which, "at", report.first_failure["indices"])

d = gen_twisted_rb(8, Profile(2, 2), "invertible_cochain")
b = ns_from_twisted_rb(d)
print("\nfrom a twisted Rota-Baxter operator:", check_ns_axioms(b).holds)
print("  subadjacent bracket equals the induced bracket:", subadjacent(b) == induced_bracket(d))
back = canonical_trb(b)
print("  canonical operator is twisted Rota-Baxter:", check_twisted_rb(back).holds, "| round trip:", ns_from_twisted_rb(back) == b)

c = compatible_ns_from_invertible(d)
print("  invertible K gives a compatible structure on g:", check_ns_axioms(c).holds,
      "| its sum is the original bracket:", np.array_equal(c.star, d.algebra.bracket))
