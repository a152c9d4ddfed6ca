"""Acceptance suite: one test per criterion, each printing a PASS line.

Every assertion is exact (cyclotomic/rational equality); the only floats
appear where a bound involves an irrational sqrt, and there the comparison
carries a 1e-12 slack on a quantity of order 1.

Run with:  pytest tests/test_acceptance.py -v -s
"""

import itertools
import math
import time
from fractions import Fraction

import pytest

from wml.budget import BudgetError
from wml.characters import CharacterSpec, builtin_group, symmetric_std_character
from wml.core_graphs import bouquet, graph_of_subgroup, graph_of_word, spanning_tree_basis
from wml.cyclotomic import Cyclotomic
from wml.mobius import PermAction
from wml.oracle import (
    build_wreath,
    expectation_from_counts,
    injective_orbit_count,
    iterated_ind_character,
    orbit_count,
    word_element_counts,
)
from wml.words import Word, parse_word, parse_words
from wml.wreath_measures import (
    IteratedSpec,
    WordContext,
    action_decay_bound_check,
    torsion_letter_expectation,
    chi_expectation_symbolic,
    ind_expectation_at,
    ind_expectation_symbolic,
    iterated_expectation,
    iterated_value_at,
    leading_term,
    p_group_bound_check,
    pi_std_profile,
    tree_dimension_identity,
    tree_fix_expectation,
    witness_report,
)

TRIV = CharacterSpec.trivial()

MATRIX_WORDS = ["a", "aa", "[a,b]", "aabb", "abab^-1", "x^-3(xy^6)^2"]
MATRIX_GROUPS = ["C2", "C3", "S3"]
EVAL_BUDGET = 10**7

_context_cache: dict = {}


def ctx_for(text: str) -> WordContext:
    if text not in _context_cache:
        _context_cache[text] = WordContext(parse_word(text))
    return _context_cache[text]


def report(criterion: int, message: str):
    print(f"PASS criterion {criterion}: {message}")


def test_criterion_01_table_one():
    t0 = time.time()
    expected = {
        "aA": 0,        # identity word
        "aa": 1,
        "[a,b]": 2,
        "aabb": 2,
        "aabbcc": 3,
        "a": math.inf,
        "ab": math.inf,
    }
    for text, pi in expected.items():
        rep = witness_report(parse_word(text), TRIV)
        assert rep.pi == pi, (text, rep.pi)
    # critical subgroups for the finite cases
    assert [e.graph for e in witness_report(parse_word("aa"), TRIV).crit] == [
        graph_of_word(parse_word("a"))
    ]
    assert [e.graph for e in witness_report(parse_word("[a,b]"), TRIV).crit] == [bouquet(2)]
    assert [e.graph for e in witness_report(parse_word("aabb"), TRIV).crit] == [bouquet(2)]
    assert [e.graph for e in witness_report(parse_word("aabbcc"), TRIV).crit] == [bouquet(3)]
    elapsed = time.time() - t0
    assert elapsed < 10
    report(1, f"primitivity ranks and critical subgroups match the table ({elapsed:.2f}s)")


def test_criterion_02_frobenius_and_frobenius_schur():
    t0 = time.time()
    commutator = parse_word("[a,b]")
    square = parse_word("aa")
    f2 = spanning_tree_basis(bouquet(2))
    f1 = spanning_tree_basis(bouquet(1))
    from wml.characters import expectation_rel

    fs_by_group = {}
    for name in ("C2", "C3", "S3", "S4", "D4", "Q8"):
        _, chars = builtin_group(name)
        for c in chars:
            assert expectation_rel(c, commutator, f2) == Cyclotomic.one() / c.dim()
            fs = expectation_rel(c, square, f1)
            assert fs in (Fraction(1), Fraction(0), Fraction(-1))
            fs_by_group.setdefault(name, {})[c.name] = fs
    assert fs_by_group["Q8"]["dim2"] == Fraction(-1)
    assert fs_by_group["C3"]["chi1"] == 0 and fs_by_group["C3"]["chi2"] == 0
    assert all(v == 1 for v in fs_by_group["S3"].values())
    elapsed = time.time() - t0
    assert elapsed < 30
    report(2, f"1/phi(1) commutator law and Frobenius-Schur types ({elapsed:.2f}s)")


def _matrix_cells():
    for gname in MATRIX_GROUPS:
        G, chars = builtin_group(gname)
        for n in (1, 2, 3, 4):
            order = G.order**n * math.factorial(n)
            if order**2 > EVAL_BUDGET:
                continue
            yield gname, G, chars, n


def test_criterion_03_oracle_vs_symbolic_master_matrix():
    t0 = time.time()
    checked = 0
    for gname, G, chars, n in _matrix_cells():
        W = build_wreath(G, n)
        for text in MATRIX_WORDS:
            w = parse_word(text)
            counts = word_element_counts(w, W)
            for c in chars:
                vals = W.ind_character_values(c)
                brute = expectation_from_counts(counts, W.order, w.rank, vals)
                symbolic = ind_expectation_at(ctx_for(text), CharacterSpec.finite(c), n)
                assert symbolic == brute, (gname, n, c.name, text, symbolic, brute)
                checked += 1
    elapsed = time.time() - t0
    assert elapsed < 600
    report(3, f"{checked} matrix cells agree exactly with brute enumeration ({elapsed:.1f}s)")


def test_criterion_04_leading_term_law():
    t0 = time.time()
    checked = 0
    for gname in MATRIX_GROUPS:
        _, chars = builtin_group(gname)
        for text in MATRIX_WORDS:
            for c in chars:
                spec = CharacterSpec.finite(c)
                rep = witness_report(ctx_for(text), spec)
                f = chi_expectation_symbolic(ctx_for(text), spec)
                if rep.pi == math.inf:
                    continue
                lt = leading_term(f)
                assert lt.exponent == 1 - rep.pi, (gname, text, c.name)
                assert lt.coefficient == rep.crit_value, (gname, text, c.name)
                checked += 1
    # the flagship case: [a,b] gives (-1, 1/phi(1))
    for gname in MATRIX_GROUPS:
        _, chars = builtin_group(gname)
        for c in chars:
            lt = leading_term(chi_expectation_symbolic(ctx_for("[a,b]"), CharacterSpec.finite(c)))
            assert (lt.exponent, lt.coefficient) == (-1, Cyclotomic.one() / c.dim())
    elapsed = time.time() - t0
    report(4, f"leading term (1 - pi_phi, C_phi) on {checked} finite-pi cells ({elapsed:.1f}s)")


def test_criterion_05_rationality_and_pole_bound():
    t0 = time.time()
    checked = 0
    for gname in MATRIX_GROUPS:
        _, chars = builtin_group(gname)
        for text in MATRIX_WORDS:
            w = parse_word(text)
            for c in chars:
                f = ind_expectation_symbolic(ctx_for(text), CharacterSpec.finite(c))
                assert f.den.degree() <= len(w)
                if not f.is_zero():
                    exponent, _ = f.leading_pair()
                    assert exponent >= -len(w)
                checked += 1
    elapsed = time.time() - t0
    report(5, f"denominator degree and Laurent support bounded by |w| on {checked} outputs ({elapsed:.1f}s)")


def test_criterion_06_hidden_witness_values():
    t0 = time.time()
    from wml.characters import expectation_rel

    w = parse_word("x^-3(xy^6)^2")
    h = spanning_tree_basis(graph_of_subgroup(parse_words(["x", "y^6"])))
    f2 = spanning_tree_basis(bouquet(2))
    std3 = symmetric_std_character(3)
    assert expectation_rel(std3, w, h) == Fraction(1, 2)
    assert expectation_rel(std3, w, f2) == 0
    elapsed = time.time() - t0
    report(6, f"E(w->H)[std S3] = 1/2 and E(w->F2)[std S3] = 0 exactly ({elapsed:.2f}s)")


def test_criterion_07_iterated_wreath():
    t0 = time.time()
    w = parse_word("[a,b]")
    C2, chars = builtin_group("C2")
    sign = chars[1]
    it = iterated_expectation(w, IteratedSpec(2, CharacterSpec.finite(sign)))
    # symbolic identity via a grid wider than the per-variable degrees
    for n1, n2 in itertools.product(range(5, 14), repeat=2):
        assert it.value_at((n1, n2)) == Fraction(1, n1 * n2)
    # numeric equality against brute enumeration on W_{2,2}(C_2)
    W, vals = iterated_ind_character(C2, sign, [2, 2])
    counts = word_element_counts(w, W)
    brute = expectation_from_counts(counts, W.order, w.rank, vals)
    assert it.value_at((2, 2)) == brute == Fraction(1, 4)
    elapsed = time.time() - t0
    report(7, f"Ind_(n1,n2) commutator expectation = 1/(phi(1) n1 n2), brute-checked at (2,2) ({elapsed:.1f}s)")


def test_criterion_08_spherical_tree():
    t0 = time.time()
    for m in (1, 2, 3):
        assert tree_dimension_identity(m)
    rep = tree_fix_expectation(parse_word("[a,b]"), 2)
    diff = rep.difference_single_variable()
    lt = leading_term(diff)
    assert lt.exponent == -2
    elapsed = time.time() - t0
    report(8, f"tree dimension identity (m<=3); fix-difference leading exponent -2 ({elapsed:.1f}s)")


def test_criterion_09_disjoint_word_laws():
    t0 = time.time()
    u = parse_word("aa", rank=2)
    v = parse_word("bb", rank=2)
    w = parse_word("aabb")
    checked = 0
    for gname in ("C2", "S3", "Q8"):
        _, chars = builtin_group(gname)
        for c in chars:
            if c.is_trivial():
                continue
            spec = CharacterSpec.finite(c)
            ru, rv, rw = (witness_report(x, spec) for x in (u, v, w))
            if ru.pi == math.inf or rv.pi == math.inf:
                assert rw.pi == math.inf
                continue
            assert rw.pi == ru.pi + rv.pi
            assert rw.crit_value == ru.crit_value * rv.crit_value / c.dim()
            # critical graphs are wedges of the factor critical graphs
            wedges = set()
            for e1 in ru.crit:
                for e2 in rv.crit:
                    gens = [
                        Word(2, bw.letters)
                        for bw in spanning_tree_basis(e1.graph).basis_words
                    ] + [
                        Word(2, tuple((abs(x) + 1) * (1 if x > 0 else -1) for x in bw.letters))
                        for bw in spanning_tree_basis(e2.graph).basis_words
                    ]
                    wedges.add(graph_of_subgroup(gens, 2).key())
            assert {e.graph.key() for e in rw.crit} == wedges
            checked += 1
    elapsed = time.time() - t0
    report(9, f"additivity of pi_phi, multiplicativity of C_phi, wedge critical graphs ({checked} chars, {elapsed:.1f}s)")


def test_criterion_10_std_profile():
    t0 = time.time()
    prof = pi_std_profile(ctx_for("[a,b]"), range(2, 6))
    assert min(prof) == 2
    assert all(p >= 2 for p in prof)
    elapsed = time.time() - t0
    report(10, f"min over n in 2..5 of pi_std(S_n)([a,b]) = 2 = pi, no entry below ({elapsed:.1f}s)")


def test_criterion_11_p_group_bound():
    t0 = time.time()
    checked = 0
    for gname in ("Q8", "C4", "C2"):
        G, chars = builtin_group(gname)
        for text in ("aa", "aabb", "[a,b]"):
            pi_c, rows = p_group_bound_check(parse_word(text), G, chars)
            assert rows and all(r.ok for r in rows), (gname, text, rows)
            checked += len(rows)
    elapsed = time.time() - t0
    report(11, f"pi_phi >= pi_C2 on {checked} (group, word, char) rows ({elapsed:.1f}s)")


def test_criterion_12_action_decay_bound():
    t0 = time.time()
    _, chars = builtin_group("C2")
    sign = chars[1]
    for n in (4, 5):
        act = PermAction.symmetric_on_subsets(n, 2)
        rep = action_decay_bound_check(parse_word("[a,b]"), sign, act)
        assert rep.ok, (n, rep)
    # orbit-count bound (k+1)^(2^t - 1) for 2-subsets, t <= 3
    for n in (4, 5):
        act = PermAction.symmetric_on_subsets(n, 2)
        for t in (1, 2, 3):
            assert orbit_count(act, t) <= 3 ** (2**t - 1)
    elapsed = time.time() - t0
    report(12, f"orbit-counting decay bound and subset orbit bound hold ({elapsed:.1f}s)")


def test_criterion_13_torsion_letters():
    t0 = time.time()
    for n in (3, 4):
        val = torsion_letter_expectation(parse_word("ab"), 2, TRIV, n)
        perms = list(itertools.permutations(range(n)))
        torsion = [p for p in perms if all(p[p[i]] == i for i in range(n))]
        total = Fraction(0)
        for s in torsion:
            for u2 in torsion:
                prod = tuple(u2[s[i]] for i in range(n))
                total += sum(1 for i in range(n) if prod[i] == i)
        assert val == total / len(torsion) ** 2, (n, val)
    elapsed = time.time() - t0
    report(13, f"torsion-letter expectation equals exhaustive 2-torsion enumeration at n = 3, 4 ({elapsed:.1f}s)")


def test_criterion_14_induced_irreducibility():
    t0 = time.time()
    C2, chars = builtin_group("C2")
    sign = chars[1]
    for n in (2, 3):
        W = build_wreath(C2, n)
        vals = W.ind_character_values(sign)
        total = Cyclotomic.zero()
        for e in range(W.order):
            total = total + vals[e] * vals[e].conjugate()
        assert total / W.order == 1
    elapsed = time.time() - t0
    report(14, f"<Ind_n sign, Ind_n sign> = 1 on C2 wr S2 and C2 wr S3 ({elapsed:.1f}s)")
