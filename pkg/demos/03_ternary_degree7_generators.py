"""Ternary degree 7: the first real identities and their module structure.

The 210x280 expansion matrix has rank 35, leaving a 245-dimensional identity
space.  Processing a norm-sorted nullspace basis through the symmetric-group
sieve exposes a minimal generator set; on the LLL-reduced basis the three
generators have squared norms 4, 6 and 12, and the third one alone spans the
whole space: the ternary recombination identity.
"""

import time

from recomb import (
    build_expansion_matrix,
    generator_sieve,
    lll_reduce,
    module_rank,
    nullspace_lattice,
    rcf_nullspace,
    sort_vectors_by_norm,
    squared_norm,
)
from recomb.golden import load_identity
from recomb.io_formats import format_identity

t0 = time.time()
E = build_expansion_matrix(3, 7)
ns = sort_vectors_by_norm(rcf_nullspace(E.array.tolist()))
lat = nullspace_lattice(E.array.tolist())
red = sort_vectors_by_norm(lll_reduce(lat))
print(f"built matrix and both nullspace bases in {time.time()-t0:.1f}s")
print(f"canonical basis norms: {squared_norm(ns[0])} .. {squared_norm(ns[-1])}")
print(f"reduced basis norms:   {squared_norm(red[0])} .. {squared_norm(red[-1])}")

print("\nsieving the reduced basis for module generators (p = 101):")
t0 = time.time()
for g in generator_sieve(red, 3, 7):
    print(f"  position {g.position:3d}, norm^2 {g.norm_sq:2d} "
          f"-> cumulative rank {g.cumulative_rank}")
print(f"({time.time()-t0:.1f}s)")

R = load_identity("ternary_recombination")
print(f"\nthe ternary recombination identity alone spans "
      f"{module_rank([R])} of 245 dimensions:")
print(format_identity(R))
