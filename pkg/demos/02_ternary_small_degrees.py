"""Ternary recombination in degrees 3 and 5: no identities beyond symmetry.

Degree 3 has a single monomial (complete symmetry collapses everything), and
the degree-5 expansion matrix has full column rank, so neither degree
carries an identity that is not already a consequence of symmetry.
"""

from recomb import (
    build_expansion_matrix,
    enumerate_canonical_types,
    get_context,
    new_identity_test,
    rcf,
    rcf_nullspace,
    to_bracket,
)
from recomb.monomials import shape_degree, tree_from

for d in (3, 5):
    types = enumerate_canonical_types(3, d)
    print(f"degree {d}: {len(types)} association type(s):",
          ", ".join(to_bracket(tree_from(s, range(shape_degree(s))))
                    for s in types))
    ctx = get_context(3, d)
    print(f"  {ctx.num_monomials} monomial(s), "
          f"{len(ctx.slot_tuples)} slot tuple(s)")

E = build_expansion_matrix(3, 5)
R = rcf(E.array.tolist())
print(f"\ndegree-5 expansion matrix is {E.array.shape[0]}x{E.array.shape[1]} "
      f"with rank {R.rank}: full column rank")
print("nullspace:", rcf_nullspace(E.array.tolist()) or "empty")

res = new_identity_test(5, [], n=3)
print(f"degree-5 verdict: {res.verdict} "
      f"(nullspace dim {res.nullspace_dim})")
