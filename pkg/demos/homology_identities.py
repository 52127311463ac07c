"""
Homology ranks of the proper-span complex
=========================================

The subsets of the vector set that span a proper subspace form a
simplicial complex.  Its top reduced homology rank equals the
order-minimal tuple count, over any coefficient field, and the same
construction restricted to a flat recovers the absolute value of the
lattice Mobius function flat by flat.
"""

from flagbound import (
    build_lattice,
    generate_sign_vectors,
    homology_rank,
    minimal_tuple_count,
    mobius_via_homology,
)

for n in (1, 2, 3):
    H = generate_sign_vectors(n)
    lam = minimal_tuple_count(H)
    ranks = {str(fld): homology_rank(H, n - 1, fld) for fld in (2, 3, "Q")}
    print(f"n={n}: minimal tuple count {lam}, ranks by field {ranks}")

H = generate_sign_vectors(2)
lattice = build_lattice(H)
print("flat-by-flat comparison at n=2:")
for flat in lattice.flats:
    if flat.dim < 1:
        continue
    mu = lattice.mobius[flat]
    via_rank = mobius_via_homology(H, flat)
    print(f"  flat dim {flat.dim} members {flat.members}: "
          f"mu {mu}, homology rank {via_rank}")
