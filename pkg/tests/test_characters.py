from fractions import Fraction

import pytest

from wml.budget import BudgetError, ValidationError
from wml.characters import (
    CharacterSpec,
    ClassFunction,
    FiniteGroup,
    builtin_group,
    classfunction_from_elements,
    expectation_edge_based,
    expectation_rel,
    expectation_word,
    inner_product,
    symmetric_std_character,
)
from wml.core_graphs import bouquet, graph_of_subgroup, graph_of_word, spanning_tree_basis
from wml.cyclotomic import Cyclotomic
from wml.words import parse_word, parse_words

F1 = spanning_tree_basis(bouquet(1))
F2 = spanning_tree_basis(bouquet(2))
F3 = spanning_tree_basis(bouquet(3))


def test_builtin_orders_and_tables():
    expected = {
        "C2": 2, "C3": 3, "S3": 6, "S4": 24, "S5": 120,
        "D4": 4, "D6": 6, "D8": 8, "Q8": 8,
    }
    for name, order in expected.items():
        g, chars = builtin_group(name)
        assert g.order == order
        # complete irreducible tables: sum of squared dimensions = |G|
        assert sum((c.dim() * c.dim() for c in chars), Cyclotomic.zero()) == order
        for c in chars:
            assert inner_product(c, c) == 1


def test_symmetric_3_dimensions():
    g, chars = builtin_group("S3")
    assert sorted(int(c.dim().to_fraction()) for c in chars) == [1, 1, 2]


def test_dihedral4_is_klein():
    g, chars = builtin_group("D4")
    assert g.order == 4 and g.exponent == 2
    assert all(c.dim() == 1 for c in chars)


def test_inner_product_orthogonality():
    g, chars = builtin_group("S3")
    trivial, sign, std = chars
    assert inner_product(trivial, trivial) == 1
    assert inner_product(sign, sign) == 1
    assert inner_product(std, trivial) == 0
    assert inner_product(std, sign) == 0


def test_irreducibility_is_verified_not_assumed():
    g, chars = builtin_group("C2")
    with pytest.raises(ValidationError):
        ClassFunction(
            g,
            (Cyclotomic.from_rational(2), Cyclotomic.from_rational(0)),
            "reducible",
            is_character=True,
            is_irreducible=True,
        )


def test_class_function_constancy_check():
    g, chars, = builtin_group("S3")
    with pytest.raises(ValidationError):
        classfunction_from_elements(g, list(range(6)), "broken")


def test_group_from_permutation_generators():
    g = FiniteGroup.from_permutation_generators([(1, 0, 2), (1, 2, 0)], "S3")
    assert g.order == 6
    assert len(g.classes) == 3
    assert g.exponent == 6


def test_haar_letter_kills_nontrivial_characters():
    for name in ("C3", "S3", "Q8"):
        _, chars = builtin_group(name)
        for c in chars:
            e = expectation_word(c, parse_word("a"))
            assert e == (1 if c.is_trivial() else 0)


def test_frobenius_commutator_formula():
    w = parse_word("[a,b]")
    for name in ("C2", "C3", "S3", "S4", "D4", "Q8"):
        _, chars = builtin_group(name)
        for c in chars:
            assert expectation_word(c, w) == Cyclotomic.one() / c.dim()


def test_frobenius_schur_indicators():
    w = parse_word("aa")
    _, q8 = builtin_group("Q8")
    indicators = {c.name: expectation_word(c, w) for c in q8}
    assert indicators["dim2"] == Fraction(-1)
    assert all(v == 1 for name, v in indicators.items() if name != "dim2")
    _, c3 = builtin_group("C3")
    assert [expectation_word(c, w) for c in c3] == [1, 0, 0]
    _, s3 = builtin_group("S3")
    assert all(expectation_word(c, w) == 1 for c in s3)


def test_expectation_word_budget():
    _, chars = builtin_group("S5")
    std = [c for c in chars if c.name == "std"][0]
    with pytest.raises(BudgetError):
        expectation_word(std, parse_word("aabbccdd"), budget=10**4)


def test_expectation_rel_circle():
    # a^2 b c b c^-1 abelianizes to (2, 2, 0): in K_2(F_3), not in K_2(<w>)
    w = parse_word("a^2bcbC")
    assert expectation_rel(CharacterSpec.circle(2), w, F3) == 1
    bottom = spanning_tree_basis(graph_of_word(w))
    assert expectation_rel(CharacterSpec.circle(2), w, bottom) == 0
    # infinite circle: commutator is balanced, a^2 b^2 is not
    assert expectation_rel(CharacterSpec.circle(None), parse_word("[a,b]"), F2) == 1
    assert expectation_rel(CharacterSpec.circle(None), parse_word("aabb"), F2) == 0


def test_expectation_rel_hidden_witness():
    # E_{w -> <x, y^6>}[std(S_3)] = 1/(3-1), E_{w -> F_2}[std(S_3)] = 0
    w = parse_word("x^-3(xy^6)^2")
    h = spanning_tree_basis(graph_of_subgroup(parse_words(["x", "y^6"])))
    std3 = symmetric_std_character(3)
    assert expectation_rel(std3, w, h) == Fraction(1, 2)
    assert expectation_rel(std3, w, F2) == 0


def test_expectation_rel_trivial():
    assert expectation_rel(CharacterSpec.trivial(), parse_word("abab"), F2) == 1


def test_edge_based_agrees_with_rel():
    w = parse_word("[a,b]")
    _, chars = builtin_group("S3")
    for c in chars:
        assert expectation_edge_based(c, w, bouquet(2)) == expectation_rel(c, w, F2)
    # quaternion square: E = -1 through the edge route as well
    _, q8 = builtin_group("Q8")
    dim2 = [c for c in q8 if c.name == "dim2"][0]
    assert expectation_edge_based(dim2, parse_word("aa"), graph_of_word(parse_word("a"))) == Fraction(-1)
    # a over <a>: 0 for nontrivial characters
    sign = [c for c in builtin_group("S3")[1] if c.name == "sign"][0]
    assert expectation_edge_based(sign, parse_word("a"), graph_of_word(parse_word("a"))) == 0


def test_edge_based_cross_check_on_middle_subgroup():
    w = parse_word("x^-3(xy^6)^2")
    h = graph_of_subgroup(parse_words(["x", "y^6"]))
    _, chars = builtin_group("S3")
    for c in chars:
        lhs = expectation_rel(c, w, spanning_tree_basis(h))
        rhs = expectation_edge_based(c, w, h)
        assert lhs == rhs


def test_disjoint_word_product_rule():
    # E_{w1 w2 -> F_2}[phi] = E_{w1}[phi] E_{w2}[phi] / dim(phi)
    u, v = parse_word("aa", rank=2), parse_word("bb", rank=2)
    for name in ("C2", "S3", "Q8"):
        _, chars = builtin_group(name)
        for c in chars:
            lhs = expectation_rel(c, u * v, F2)
            rhs = expectation_rel(c, u, F2) * expectation_rel(c, v, F2) / c.dim()
            assert lhs == rhs


def test_free_invariance():
    # E_{w -> <a>} = E_{w -> F_2} for words in the free factor <a>
    _, chars = builtin_group("S3")
    loop = spanning_tree_basis(graph_of_word(parse_word("a", rank=2)))
    for c in chars:
        for text in ("aa", "aaa"):
            w = parse_word(text, rank=2)
            assert expectation_rel(c, w, loop) == expectation_rel(c, w, F2)


def test_values_live_in_the_exponent_field():
    for name in ("C3", "C4", "S3", "Q8"):
        g, chars = builtin_group(name)
        for c in chars:
            for v in c.values:
                assert g.exponent % v.conductor == 0


def test_character_spec_describe():
    assert CharacterSpec.trivial().describe() == "trivial"
    assert CharacterSpec.circle(2).describe() == "circle(2)"
    assert CharacterSpec.circle(None).describe() == "circle(inf)"
    _, chars = builtin_group("S3")
    assert "std" in CharacterSpec.finite(chars[2]).describe()


def test_group_json_roundtrip():
    g, _ = builtin_group("S3")
    data = g.to_json()
    rebuilt = FiniteGroup(data["mult"], "S3'")
    assert rebuilt.order == g.order
    assert sorted(map(len, rebuilt.classes)) == sorted(map(len, g.classes))
