"""A first tour: Leibniz algebras, representations and their cohomology.

Run with ``python demos/01_leibniz_cohomology.py``. Everything is exact
rational arithmetic; every number printed is a fraction, not a float.
"""
from lra.algebra import LeibnizAlgebra, Representation, check_leibniz, check_representation, regular_representation
from lra.cohomology import coboundary, cohomology_dims, is_coboundary
from lra.generate import gen_cochain
from lra.linalg import format_rational, qarray


def show(label, a):
    print(f"  {label}: {[format_rational(v) for v in qarray(a).flat]}")


# The smallest non-Lie Leibniz algebra: [e0, e0] = e1, every other bracket zero.
nil2 = LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}})
print("nilpotent dim-2 algebra is Leibniz:", check_leibniz(nil2).holds)

# [e0, e0] = e0 in dimension one is *not* Leibniz: the left rule gives
# [e0,[e0,e0]] = e0 on one side and 2 e0 on the other.
idem = LeibnizAlgebra.from_products(1, {(0, 0): {0: 1}})
report = check_leibniz(idem)
print("idempotent dim-1 algebra is Leibniz:", report.holds)
print("  first failing basis triple:", report.first_failure["indices"])
show("lhs", report.first_failure["lhs"])
show("rhs", report.first_failure["rhs"])

# The regular representation acts on g itself by left and right brackets.
reg = regular_representation(nil2)
print("\nregular representation passes all three axioms:", check_representation(reg).holds)

# Cohomology dimensions: z = cocycles, b = coboundaries, h = z - b.
print("\ncohomology of the nilpotent algebra with coefficients in itself:")
for n in range(4):
    r = cohomology_dims(reg, n)
    print(f"  degree {n}: z={r.dim_cocycles} b={r.dim_coboundaries} h={r.dim_cohomology}")

print("\nthe trivial one-dimensional representation of the abelian line:")
line = Representation.zero(LeibnizAlgebra.abelian(1), 1)
print("  h^n =", [cohomology_dims(line, n).dim_cohomology for n in range(4)])

# A coboundary is recognized as one, and a primitive is returned.
f = gen_cochain(reg, 1, seed=7)
df = coboundary(f)
primitive = is_coboundary(df)
print("\nd(f) is a coboundary:", primitive is not None, "- and d(primitive) == d(f):", coboundary(primitive) == df)
