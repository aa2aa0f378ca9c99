"""Homotope rngs R^(s), the maps between stages, and lifting a bilinear map.

    python demos/homotopes.py
"""
from steinberg.progroup import (
    AdditiveGroup,
    BilinearLiftError,
    Integers,
    IntegersMod,
    bilinear_lift,
    division_map,
    homotope,
    structure_map,
)

Z = Integers()
x, y = homotope(Z, 3, 2), homotope(Z, 5, 2)
print(f"{x} * {y} = {x * y}")

X = homotope(Z, 7, 6)
print(f"structure map {X} -> {structure_map(X, 3)}")
print(f"division map  {X} -> {division_map(X, 3)}")

# in Z/12 the factor 4 = 2 * 2 = 2 * 8 is not unique, so it must be given
R = IntegersMod(12)
print("Z/12:", structure_map(homotope(R, 1, 4), 2, factor=2), structure_map(homotope(R, 1, 4), 2, factor=8))

f = bilinear_lift(lambda a, b: a * b, AdditiveGroup(), R, 2)
print("multiplication lifts; f'(5^(4)) =", f.at(2)(homotope(R, 5, 4)))
try:
    bilinear_lift(lambda a, b: a, AdditiveGroup(), Z, 2)
except BilinearLiftError as e:
    print("projection does not lift:", e)
