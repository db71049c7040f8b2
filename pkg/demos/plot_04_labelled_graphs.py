"""
Labelled graphs, coloring polynomials and small covers
======================================================

Edges of a labelled graph carry characters; the coloring polynomial sums
the label multisets at the vertices.  Realizable data can be turned back
into a graph that passes the geometric test.
"""

from bordismlab.classify import small_cover_data
from bordismlab.labgraph import (
    build_from_data,
    coloring_polynomial,
    is_geometric,
    print_graph,
    product,
    rpk_graph,
    small_cover_graph,
)
from bordismlab.textio import parse_poly

# one-skeleton of the 4-simplex
print(coloring_polynomial(rpk_graph(4)))

# small cover over the product of an interval and a tetrahedron
g = small_cover_graph(small_cover_data())
print(len(g.vertices), "vertices;", coloring_polynomial(g))

# from data back to a graph
F = parse_poly("r1*r2*r3*r123 + r1*r12*r23*r3 + r1*r2*r13*r23 + r1*r12*r13*r123", 3)
built = build_from_data(F)
print(print_graph(built))
print("geometric:", is_geometric(built), "round trip:", coloring_polynomial(built) == F)

# products of graphs multiply coloring polynomials
rp2 = rpk_graph(2)
print(coloring_polynomial(product(rp2, rp2)))
