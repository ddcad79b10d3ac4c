"""
Goursat decomposition of product subspaces
==========================================

Any subspace of a direct product is pinned down by its two projections,
two kernel slices, and an induced homomorphism.  Applied twice over
V^4 = (V^2) x (V^2) this gives the tower that the invariant-partition
analysis reasons over; here it is run on small examples and on the
32-dimensional four-round pattern subspace.
"""

import json

from ksgroup.gf2 import Subspace, enumerate_subspaces
from ksgroup.goursat import decompose, reconstruct, tower_report
from ksgroup.invariants import lp_pattern_subspace

# The decomposition and its reconstruction are mutually inverse; over
# F_2^4 = F_2^2 x F_2^2 that can be checked for every single subspace.
roundtrips = sum(
    1 for u in enumerate_subspaces(4) if reconstruct(decompose(u, 2, 2)) == u
)
print(f"round-trip identity on {roundtrips}/67 subspaces of F_2^2 x F_2^2")

# The diagonal {(x, x)} decomposes into full projections, zero kernels,
# and the identity homomorphism.
diag = Subspace(4, [0b0101, 0b1010])
g = decompose(diag, 2, 2)
print(
    "diagonal: image dims",
    (g.left_image.dim, g.right_image.dim),
    "kernel dims",
    (g.left_kernel.dim, g.right_kernel.dim),
    "hom rows",
    g.hom,
)

# The tower over the pattern subspace of F_2^128.  The right kernel of the
# top split is what the lifted-to-base reduction argument pivots on.
report = tower_report(lp_pattern_subspace())
print("\npattern subspace tower:")
print(json.dumps(report, indent=2, sort_keys=True))
