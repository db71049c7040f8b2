"""
Integrality of localized sums
=============================

Summing f(tau) / chi(tau) over the fixed data gives a polynomial for every
symmetric f when the data bounds.  A finite family of test functions can
therefore refute realizability, never prove it.
"""

from bordismlab.gf2core import SymFn, char_name
from bordismlab.localization import default_family, integrality_test, rational_sum
from bordismlab.textio import parse_poly

# two fixed points with a common linear form
p = parse_poly("r1*r2 + r1*r12", 2)
s = rational_sum(p, SymFn.one())
print("numerator", s.numerator, "over", s.denominator_poly())
print("pole along", char_name(s.first_obstruction()))

# the real projective plane passes every test in the family
rp2 = parse_poly("r1*r2 + r1*r12 + r2*r12", 2)
family = default_family(2)
print(len(family), "functions; witness:", integrality_test(rp2, family))

# a lone monomial fails already for f = 1
w = integrality_test(parse_poly("r1*r2*r3*r123", 3), default_family(4))
print(w.describe())
