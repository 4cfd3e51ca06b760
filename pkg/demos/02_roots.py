"""Positive roots at each object, read as Farey-like sequences of lattice vectors."""

from collections import Counter

from reflgroupoids import roots
from reflgroupoids.groupoid import scheme_from_eta

for seq in [(1, 1, 1), (2, 1, 2, 1), (1, 2, 1, 2)]:
    s = scheme_from_eta(seq)
    print(seq, "->", roots.roots_from_scheme(s, 1))

# Around the pentagon's ten objects each of five root sets occurs twice.
pent = scheme_from_eta((3, 1, 2, 2, 1))
for rs, k in sorted(Counter(roots.root_sets(pent)).items()):
    print(k, rs)

# Every such set grows from ((0,1),(1,1),(1,0)) by inserting mediants.
rs = roots.roots_from_scheme(pent, 1)
report = roots.validate_F(rs)
print("removed, in order:", report.witness)
for v in rs:
    print(v, roots.sum_of_two(rs, v))
