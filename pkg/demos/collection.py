"""Collect words of root elements into normal form.

    python demos/collection.py
"""
from steinberg.collect import Letter, collect, commutator_word, format_word
from steinberg.polyring import PolyRing
from steinberg.rootsys import Root, build_root_system, special_cone
from steinberg.structconst import build_table

phi = build_root_system("F4")
table = build_table(phi)
R = PolyRing("b c")
b, c = R.gens

# short roots e3 and e4 span a B2; their commutator has two factors
s1, s2 = Root((0, 0, 1, 0)), Root((0, 0, 0, 1))
sigma = special_cone(phi, [(s1, ">=0"), (s2 - s1, ">=0")])
word = commutator_word([Letter(s1, b)], [Letter(s2 - s1, c)])
print("word:       ", format_word(word))
print("normal form:", format_word(collect(phi, table, sigma, word).letters()))

# both rewriting strategies give the same answer
w = [Letter(s2 - s1, c), Letter(s1, b), Letter(s2 - s1, -c), Letter(s1, b * b)]
left = collect(phi, table, sigma, w, strategy="leftmost")
low = collect(phi, table, sigma, w, strategy="lowest")
print("leftmost == lowest:", left == low, "->", format_word(left.letters()))
