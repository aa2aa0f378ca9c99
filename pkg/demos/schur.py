"""Schur multipliers of Steinberg groups over finite products of Z/n.

    python demos/schur.py
"""
from steinberg.verify import format_group, schur_multiplier, schur_multiplier_oracle

rings = ["Z/2", "Z/3", "Z/4", "Z/6", "Z/12", "Z/2xZ/3"]
print(f"{'':6}" + "".join(f"{r:>22}" for r in rings))
for label in ("A3", "B3", "C3", "D4", "F4", "E6"):
    row = []
    for r in rings:
        g = schur_multiplier(label, r)
        assert g == schur_multiplier_oracle(label, r)
        row.append(format_group(g))
    print(f"{label:6}" + "".join(f"{v:>22}" for v in row))
