"""
Polynomials over GF(2) and the action of GL(3, 2)
==================================================

Characters of the group (Z_2)^k are k-bit integers; their linear forms
generate the cohomology ring, where every computation below takes place.
"""

# characters are ints: r1 = 1, r2 = 2, r12 = 3, r3 = 4, ...
from bordismlab.gf2core import (
    GlMatrix,
    SymFn,
    char_name,
    divide_by_linear_form,
    eval_symfn,
    gl_enumerate,
    linear_form,
)

x = linear_form(0b011, 3)
print(char_name(0b011), "->", x)

# squaring is additive in characteristic two
print("(r1 + r2)^2 =", x * x)

# divide out a linear form; None means it does not divide
product = x * linear_form(0b101, 3)
print("quotient:", divide_by_linear_form(product, 0b011))
print("r3 divides?", divide_by_linear_form(product, 0b100) is not None)

# symmetric functions evaluated on the characters of a representation
tau = [0b001, 0b010, 0b100, 0b111]
print("sigma_2 =", eval_symfn(SymFn.elementary(2), tau, 3))
print("S_(2,2) =", eval_symfn(SymFn.power_block(2, 2), tau, 3))

# the automorphism group acts on characters and on polynomials
group = gl_enumerate(3)
sigma = GlMatrix.from_images([0b001, 0b010, 0b101])
print(len(group), "automorphisms; r23 ->", char_name(sigma.apply(0b110)))
