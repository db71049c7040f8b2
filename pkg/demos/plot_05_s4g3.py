"""
The four-dimensional classification for rank three
==================================================

Orbits of the generators, their GF(2) rank, the identities linking them
and the sweep over type-3 monomials, collected in one report.
"""

from bordismlab.classify import (
    corrections,
    essential_check,
    fixtures,
    named,
    orbit_regeneration,
    s4g3_report,
    span_rank,
)

fx = fixtures()
print("rank of the generators:", span_rank(list(fx.values())))

# orbit regeneration flags transcription errors
for family in ("lambda1", "lambda2", "lambda3"):
    o = orbit_regeneration(family)
    print(family, "orbit", o.orbit_size, "listed", o.transcribed)
for c in corrections():
    print("corrected", c.name, "edit distance", c.edit_distance)

# F is not essential: a smaller generator shrinks it
print(essential_check(named("F")).describe())

# the whole report as key-value lines
print(s4g3_report().render())
