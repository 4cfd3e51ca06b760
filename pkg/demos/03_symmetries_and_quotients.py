"""Symmetries of the object cycle, and the groupoids obtained by identifying objects."""

from reflgroupoids import etaseq, groupoid as G

for seq in [(1, 1, 1), (2, 1, 2, 1), (3, 1, 3, 1, 3, 1), (1, 2, 3, 1, 2, 3)]:
    d = G.end_group(seq)
    print(f"{str(seq):22s} r={d.r} m={d.m} {d.symmetry_type.value}: {d.name} (order {d.order})")

# Dividing the six-object groupoid of (1,1,1) by its full symmetry group
# leaves one object whose endomorphisms form the Weyl group of type A2.
s = G.scheme_from_eta((1, 1, 1))
desc = G.end_group((1, 1, 1))
for sub in G.all_subgroups(desc.elements):
    q = G.orbit_quotient(s, [g.permutation() for g in sub])
    print(G.classify_group(sub), "->", q.size, "objects, |End| =", G.end_size(q, 1))

q = G.quotient(s, G.QuotientSpec(desc.generators))
print(G.object_change_dot(q))

# Some sequences have no symmetry at all.
lonely = next(x for n in range(3, 10) for x in etaseq.enumerate_sequences(n, canonical=True)
              if G.end_group(x).order == 1)
print("first asymmetric sequence:", lonely)
