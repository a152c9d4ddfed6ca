#!/usr/bin/env python3
"""Primitivity ranks, critical subgroups, and phi-witnesses.

Every word w in a free group has a primitivity rank pi(w): the smallest
rank of a subgroup containing w as a non-primitive element (infinity for
primitive words).  Sharpening this, each irreducible character phi of a
compact group detects its own witnesses: proper algebraic extensions H of
<w> where the relative expectation E_{w->H}[phi] does not vanish.  This
script walks through the classical table and a few character-twisted
variants.
"""

from wml import CharacterSpec, builtin_group, parse_word, witness_report

TRIVIAL = CharacterSpec.trivial()


def show(title, rep):
    pi = rep.pi if rep.pi != float("inf") else "inf"
    print(f"{title:24}  pi = {pi:>4}   crit value = {rep.crit_value}")
    for entry in rep.crit:
        print(f"{'':28}critical: rank {entry.rank}, {entry.graph}")


print("== The classical table ==")
for text in ["aA", "aa", "[a,b]", "aabb", "aabbcc", "a", "ab"]:
    show(f"w = {text}", witness_report(parse_word(text), TRIVIAL))

print()
print("== Character-twisted ranks ==")
# The square a^2 seen through the two-dimensional character of the
# quaternion group: the cyclic witness <a> carries expectation -1
# (a quaternionic character), so the critical value flips sign.
_, q8chars = builtin_group("Q8")
dim2 = next(c for c in q8chars if c.name == "dim2")
show("w = aa, Q8 dim2", witness_report(parse_word("aa"), CharacterSpec.finite(dim2)))

# Faithful characters of C_4 are complex: their Frobenius-Schur indicator
# vanishes, so the square has NO witnesses at all and pi_phi = infinity.
_, c4chars = builtin_group("C4")
chi1 = next(c for c in c4chars if c.name == "chi1")
show("w = aa, C4 chi1", witness_report(parse_word("aa"), CharacterSpec.finite(chi1)))

# Mod-2 balance: a^2 b^2 abelianizes to (2,2), so the full group is a
# witness for the order-2 circle embedding.
show("w = aabb, circle(2)", witness_report(parse_word("aabb"), CharacterSpec.circle(2)))

print()
print("== A witness the whole group cannot see ==")
# w = x^-3 (x y^6)^2 with std(S_3): the expectation vanishes over F_2 but
# not over the index-oo subgroup <x, y^6>; the rank profile still finds
# the rank-2 witnesses.
w = parse_word("x^-3(xy^6)^2")
from wml import symmetric_std_character

rep = witness_report(w, CharacterSpec.finite(symmetric_std_character(3)))
show("w = x^-3(xy^6)^2, std S3", rep)
print(f"{'':28}({len(rep.entries)} witnesses in total)")
