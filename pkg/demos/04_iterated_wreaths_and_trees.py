#!/usr/bin/env python3
"""Iterated wreath products and spherically symmetric trees.

Wreathing is iterable: a character of G induces one of G wr S_{n_1}, then
of (G wr S_{n_1}) wr S_{n_2}, and so on.  The expectation becomes a
rational function of all the n_i, computed as a sum over chains in the
quotient poset.  With the trivial base character this is the fixed-point
count of random tree automorphisms acting on the leaves of the
spherically symmetric tree; remarkably, it is close to the plain S_{n_m}
fixed-point count, with an error of the order n^{2(1 - pi(w))}.
"""

from fractions import Fraction

from wml import (
    CharacterSpec,
    IteratedSpec,
    builtin_group,
    iterated_expectation,
    iterated_ind_character,
    brute_expectation,
    leading_term,
    parse_word,
    tree_dimension_identity,
    tree_fix_expectation,
)

C2, c2chars = builtin_group("C2")
sign = c2chars[1]

print("== E_[a,b][Ind_(n1,n2) sign] = 1/(n1 n2) ==")
it = iterated_expectation(parse_word("[a,b]"), IteratedSpec(2, CharacterSpec.finite(sign)))
for degs in [(2, 2), (3, 5), (7, 4)]:
    print(f"  at {degs}: {it.value_at(degs)}")
W, vals = iterated_ind_character(C2, sign, [2, 2])
print(f"  brute over the order-{W.order} group at (2,2):",
      brute_expectation(parse_word('[a,b]'), W, vals))

print()
print("== dimension bookkeeping of the tree decomposition ==")
for m in (1, 2, 3):
    print(f"  m = {m}: n_1...n_m = 1 + (n_m - 1) + ... holds: {tree_dimension_identity(m)}")

print()
print("== leaf fixed points vs top-level fixed points ==")
for text in ["a", "aa", "[a,b]"]:
    w = parse_word(text)
    rep = tree_fix_expectation(w, 2)
    diff = rep.difference_single_variable()
    print(f"w = {text:8} tree total at (4,4) = {rep.total_at((4, 4))}", end="")
    if diff.is_zero():
        print("   difference identically zero")
    else:
        lt = leading_term(diff)
        print(f"   difference ~ {lt.coefficient} * n^{lt.exponent}")

print()
print("== per-level standard-character terms, w = [a,b], degrees (3,4) ==")
rep = tree_fix_expectation(parse_word("[a,b]"), 2)
total = rep.total_at((3, 4))
terms = [rep.term_at(i, (3, 4)[i:]) for i in range(2)]
print(f"  total = {total}; 1 + {terms[0]} + {terms[1]} = {1 + sum(t.to_fraction() for t in terms)}")
