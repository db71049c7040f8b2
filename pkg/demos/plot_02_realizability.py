"""
Deciding realizability of fixed point data
==========================================

A mod-2 sum of faithful representations is the fixed data of a closed
manifold exactly when every forced class passes its parity test.  The
verdict carries a certificate or a failure witness.
"""

from bordismlab.realizability import forced_partition, is_realizable
from bordismlab.textio import parse_poly

# four type-3 monomials
F = parse_poly("r1*r2*r3*r123 + r1*r12*r23*r3 + r1*r2*r13*r23 + r1*r12*r13*r123", 3)
verdict = is_realizable(F)
print("F realizable:", verdict.realizable)

# the classes at r1, grouped by restriction to its kernel
for c in forced_partition(F, 0b001):
    print(" ", c)

# a single fixed point can never bound
lone = parse_poly("r1*r2*r3*r123", 3)
print("witness:", is_realizable(lone).witness.describe())

# valence-2 classes need every degree-1 multiplicity even
pair = parse_poly("r1^2*r2*r3 + r1^2*r12*r3", 3)
print("pair:", is_realizable(pair).witness.describe())
