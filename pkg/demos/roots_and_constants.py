"""Build a root system, its structure constants, and the Lie algebra they define.

    python demos/roots_and_constants.py
"""
from steinberg.liealg import build_algebra
from steinberg.rootsys import Root, build_root_system, equal_length_decompositions
from steinberg.structconst import build_table, verify_identities

phi = build_root_system("F4")
print(f"F4 has {len(phi)} roots, {sum(phi.is_long)} of them long")
print("simple roots:", ", ".join(str(phi.roots[i]) for i in phi.simple_indices))

table = build_table(phi)
rep = verify_identities(table)
print(f"two-term and cocycle identities: {'pass' if rep.passed else 'fail'} "
      f"({rep.pairs_checked} pairs, {rep.triples_checked} triples)")

# N and N21 for a short root pair spanning a B2
a, b = Root(("1/2", "-1/2", "-1/2", "-1/2")), Root((0, 0, 0, 1))
print(f"N({a}, {b}) = {table.N(a, b)}")

alg = build_algebra(table)
print(f"Chevalley algebra of dimension {alg.dim}; Jacobi holds: {alg.jacobi_witness() is None}")

# every long root of F4 splits into equal-length pieces spanning an A3, short ones a C3
for r in (Root((1, 1, 0, 0)), Root((1, 0, 0, 0))):
    ds = equal_length_decompositions(phi, r)
    print(f"{r}: {len(ds)} decompositions, subsystem {ds[0].subsystem_type}")
