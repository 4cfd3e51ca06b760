"""Eta-sequences, their local moves, and the triangulations they count."""

from reflgroupoids import etaseq, polygon

# The only sequence of length 3.
print(etaseq.validate((1, 1, 1)))

# Insert a 1 and bump its neighbours.  Every sequence arises this way.
seq = etaseq.expand((1, 1, 1), 1)
print("expanded:", seq, "->", etaseq.reduce_to_base(seq))

# Counting triangles at each vertex of a triangulated n-gon gives a sequence,
# and every sequence comes from exactly one triangulation.
for n in range(3, 9):
    raw = etaseq.enumerate_sequences(n)
    print(f"n={n}: {len(raw):4d} sequences, {len(etaseq.enumerate_sequences(n, canonical=True)):3d} up to symmetry")

t = polygon.psi((3, 1, 2, 2, 1))
print(t)
print(polygon.ascii_incidence(t))

# Neighbouring triangulations differ by one flip.
print(polygon.flip_graph_dot(5))
