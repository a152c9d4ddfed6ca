"""Mobius inversion on quotient posets, the closed-form left derivation
L^B, the convolution algebra of poset functions, and the generalized L for
arbitrary permutation actions and letter distributions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .budget import (
    BudgetError,
    DEFAULT_ACTION_ORDER_BUDGET,
    ValidationError,
    check,
    eval_budget,
)
from .core_graphs import (
    CoreGraph,
    GraphMorphism,
    QuotientPoset,
    morphism,
    spanning_tree_basis,
    rewrite_in_subgroup,
)
from .rational import Poly, RationalFunctionN
from .words import Word


def L_B(eta: GraphMorphism) -> RationalFunctionN:
    """The closed form of the left Mobius derivation of the fixed-point
    expectation of S_n: a ratio of falling factorials over the fibers,

        prod over target vertices of (n)_{|fiber|}
        -----------------------------------------
        prod over target edges of   (n)_{|fiber|}

    valid as the expectation for n >= |E(source)|; as a counting formula
    (expected number of valid injective colorings) it is exact whenever
    n >= |V(source)|, and degenerates to 0/0 only below that.
    """
    if not eta.is_surjective():
        raise ValidationError("L_B requires a morphism surjective on vertices and edges")
    num = Poly((1,))
    for f in eta.vertex_fibers():
        num = num * Poly.falling_factorial(f)
    den = Poly((1,))
    for f in eta.edge_fibers():
        den = den * Poly.falling_factorial(f)
    return RationalFunctionN.of(num, den)


def falling(n: int, t: int) -> Fraction:
    out = Fraction(1)
    for i in range(t):
        out *= n - i
    return out


def L_value_at(vertex_fibers, edge_fibers, n: int) -> Fraction:
    """Exact value of the L-term at a concrete n, for uniform S_n.

    This is the direct-count semantics (expected number of valid injective
    colorings), which is 0 whenever n < |V(source)| and agrees with the
    falling-factorial ratio above that threshold.
    """
    nv = sum(vertex_fibers)
    if n < nv:
        return Fraction(0)
    num = Fraction(1)
    for f in vertex_fibers:
        num *= falling(n, f)
    den = Fraction(1)
    for f in edge_fibers:
        den *= falling(n, f)
    return num / den


# -- poset functions and convolution ------------------------------------------


@dataclass
class PosetFunction:
    """A function on the comparable pairs of a quotient poset.

    Values may be any ring elements that support + and * (Fractions,
    Cyclotomics, RationalFunctionN, plain ints).
    """

    poset: QuotientPoset
    values: dict

    def __call__(self, i: int, j: int):
        return self.values[(i, j)]

    def __eq__(self, other):
        return self.poset is other.poset and self.values == other.values


def poset_ones(poset: QuotientPoset) -> PosetFunction:
    return PosetFunction(poset, {p: 1 for p in poset.comparable_pairs()})


def poset_delta(poset: QuotientPoset) -> PosetFunction:
    return PosetFunction(
        poset, {(i, j): 1 if i == j else 0 for (i, j) in poset.comparable_pairs()}
    )


def convolve(f: PosetFunction, g: PosetFunction) -> PosetFunction:
    """(f * g)(eta) = sum over decompositions eta = eta_2 . eta_1 of
    f(eta_1) g(eta_2); associative, with poset_delta as identity."""
    if f.poset is not g.poset:
        raise ValidationError("convolution requires functions on the same poset")
    poset = f.poset
    out = {}
    for (i, j) in poset.comparable_pairs():
        acc = 0
        for k in poset.interval(i, j):
            acc = acc + f(i, k) * g(k, j)
        out[(i, j)] = acc
    return PosetFunction(poset, out)


def mobius_B(poset: QuotientPoset) -> PosetFunction:
    """The Mobius inversion: the convolution inverse of the constant 1.

    mu(H, H) = 1 and mu(H, J) = -sum over H <= M < J of mu(H, M); the
    defining identity mu * 1 = delta is asserted before returning.
    """
    pairs = poset.comparable_pairs()
    mu: dict = {}

    def compute(i, j):
        if (i, j) in mu:
            return mu[(i, j)]
        if i == j:
            mu[(i, j)] = 1
            return 1
        total = 0
        for k in poset.interval(i, j):
            if k != j:
                total += compute(i, k)
        mu[(i, j)] = -total
        return -total

    for (i, j) in pairs:
        compute(i, j)
    result = PosetFunction(poset, mu)
    identity = convolve(result, poset_ones(poset))
    for (i, j) in pairs:
        assert identity(i, j) == (1 if i == j else 0), "mu * 1 != delta"
    return result


def L_B_function(poset: QuotientPoset) -> PosetFunction:
    """L^B on every comparable pair of the poset, as rational functions."""
    out = {}
    for (i, j) in poset.comparable_pairs():
        out[(i, j)] = L_B(poset.morphism_between(i, j))
    return PosetFunction(poset, out)


def expectation_action_function(
    poset: QuotientPoset, action, budget: int | None = None
) -> PosetFunction:
    """The fixed-point expectation on every comparable pair."""
    out = {}
    for (i, j) in poset.comparable_pairs():
        out[(i, j)] = expectation_action(poset.nodes[i], poset.nodes[j], action, budget)
    return PosetFunction(poset, out)


def left_derivation(poset: QuotientPoset, ex: PosetFunction) -> PosetFunction:
    """L = mu * E."""
    return convolve(mobius_B(poset), ex)


def right_derivation(poset: QuotientPoset, ex: PosetFunction) -> PosetFunction:
    """R = E * mu."""
    return convolve(ex, mobius_B(poset))


def central_derivation(poset: QuotientPoset, ex: PosetFunction) -> PosetFunction:
    """C = mu * E * mu."""
    mu = mobius_B(poset)
    return convolve(mu, convolve(ex, mu))


# -- permutation actions -------------------------------------------------------


class PermAction:
    """A permutation group acting on a finite set, by explicit closure."""

    def __init__(self, degree: int, generators, name="action", order_budget=None):
        budget = order_budget or DEFAULT_ACTION_ORDER_BUDGET
        self.degree = degree
        self.name = name
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValidationError("generator is not a permutation of the set")
        ident = tuple(range(degree))
        elements = {ident: 0}
        order_list = [ident]
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(degree))
                    if q not in elements:
                        check("action closure", len(elements) + 1, budget)
                        elements[q] = len(order_list)
                        order_list.append(q)
                        new.append(q)
            frontier = new
        self.generators = tuple(gens)
        self.elements: tuple[tuple[int, ...], ...] = tuple(order_list)
        self.index = elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"{self.name} (|X|={self.degree}, |Sigma|={self.order})"

    # builtin actions

    @staticmethod
    def symmetric(n: int, order_budget=None) -> "PermAction":
        if n == 1:
            return PermAction(1, [(0,)], "S1 on [1]")
        gens = [
            tuple([1, 0] + list(range(2, n))),
            tuple(list(range(1, n)) + [0]),
        ]
        return PermAction(n, gens, f"S{n} on [{n}]", order_budget)

    @staticmethod
    def symmetric_on_subsets(n: int, k: int, order_budget=None) -> "PermAction":
        subsets = sorted(itertools.combinations(range(n), k))
        pos = {s: i for i, s in enumerate(subsets)}
        base = [
            tuple([1, 0] + list(range(2, n))),
            tuple(list(range(1, n)) + [0]),
        ]
        gens = []
        for g in base:
            gens.append(
                tuple(pos[tuple(sorted(g[x] for x in s))] for s in subsets)
            )
        return PermAction(
            len(subsets), gens, f"S{n} on {k}-subsets", order_budget
        )

    @staticmethod
    def gl_on_nonzero_vectors(n: int, q: int = 2, order_budget=None) -> "PermAction":
        """GL_n(F_q) acting on the q^n - 1 nonzero column vectors; built by
        enumerating all invertible matrices (desk scale only)."""
        if q != 2:
            raise ValidationError("only F_2 is supported here")
        vectors = [tuple((v >> i) & 1 for i in range(n)) for v in range(1, 2**n)]
        pos = {v: i for i, v in enumerate(vectors)}

        def apply(mat, vec):
            return tuple(sum(mat[i][j] * vec[j] for j in range(n)) % 2 for i in range(n))

        mats = []
        for bits in itertools.product((0, 1), repeat=n * n):
            mat = tuple(tuple(bits[i * n + j] for j in range(n)) for i in range(n))
            images = [apply(mat, v) for v in vectors]
            if len(set(images)) == len(vectors) and all(any(x) for x in images):
                mats.append(tuple(pos[im] for im in images))
        return PermAction(len(vectors), mats, f"GL{n}(F2) on nonzero vectors", order_budget)


class LetterDistribution:
    """Exact probability weights on the action's elements, one profile per
    free-group generator (all generators share the profile for the named
    constructors)."""

    def __init__(self, action: PermAction, weights_per_letter):
        self.action = action
        self.weights = tuple(tuple(Fraction(w) for w in ws) for ws in weights_per_letter)
        for ws in self.weights:
            if len(ws) != action.order:
                raise ValidationError("one weight per group element required")
            if sum(ws) != 1:
                raise ValidationError("weights must sum to 1")

    def weight_vector(self, letter_index: int) -> tuple[Fraction, ...]:
        return self.weights[min(letter_index, len(self.weights) - 1)]

    @staticmethod
    def uniform(action: PermAction, rank: int) -> "LetterDistribution":
        w = [Fraction(1, action.order)] * action.order
        return LetterDistribution(action, [w] * rank)

    @staticmethod
    def m_torsion_uniform(action: PermAction, m: int, rank: int) -> "LetterDistribution":
        """Uniform on the solutions of sigma^m = 1."""
        sols = []
        for idx, p in enumerate(action.elements):
            q = tuple(range(action.degree))
            for _ in range(m):
                q = tuple(p[q[i]] for i in range(action.degree))
            if q == tuple(range(action.degree)):
                sols.append(idx)
        if not sols:
            raise ValidationError("no m-torsion elements")
        w = [Fraction(0)] * action.order
        for i in sols:
            w[i] = Fraction(1, len(sols))
        return LetterDistribution(action, [w] * rank)

    @staticmethod
    def derangement_uniform(action: PermAction, rank: int) -> "LetterDistribution":
        sols = [
            i
            for i, p in enumerate(action.elements)
            if all(p[x] != x for x in range(action.degree))
        ]
        if not sols:
            raise ValidationError("no derangements in this action")
        w = [Fraction(0)] * action.order
        for i in sols:
            w[i] = Fraction(1, len(sols))
        return LetterDistribution(action, [w] * rank)


def L_general(
    source: CoreGraph,
    action: PermAction,
    dists: LetterDistribution,
    budget: int | None = None,
) -> Fraction:
    """Expected number of valid injective placements of the graph into X.

    Sums over injective i: V -> X the probability, letter by letter, that
    an independently drawn permutation satisfies sigma(i(src e)) = i(dst e)
    for all edges e of that letter.  With uniform S_n this reproduces the
    falling-factorial formula; with other distributions it is the engine
    behind the torsion-letter expectations.
    """
    nv = source.n_vertices
    X = action.degree
    n_inj = 1
    for i in range(nv):
        n_inj *= X - i
    if n_inj <= 0:
        return Fraction(0)
    check("injective placements", n_inj * action.order, eval_budget(budget))
    by_label: dict[int, list] = {}
    for s, d, l in source.edges:
        by_label.setdefault(l, []).append((s, d))
    total = Fraction(0)
    for placement in itertools.permutations(range(X), nv):
        prob = Fraction(1)
        for l, pairs in by_label.items():
            wvec = dists.weight_vector(l)
            p = Fraction(0)
            for idx, sigma in enumerate(action.elements):
                if wvec[idx] == 0:
                    continue
                if all(sigma[placement[s]] == placement[d] for s, d in pairs):
                    p += wvec[idx]
            prob *= p
            if prob == 0:
                break
        total += prob
    return total


def expectation_action(
    h: CoreGraph, j: CoreGraph, action: PermAction, budget: int | None = None
) -> Fraction:
    """E over uniform alpha in Hom(J, Sigma) of the number of points fixed
    by every element of alpha(H); requires H <= J."""
    if morphism(h, j) is None:
        raise ValidationError("expectation_action requires H <= J")
    jbasis = spanning_tree_basis(j)
    hbasis = spanning_tree_basis(h)
    hgens = [rewrite_in_subgroup(wd, jbasis) for wd in hbasis.basis_words]
    r = jbasis.rank()
    total_homs = action.order**r
    check("Hom(J, Sigma) enumeration", total_homs, eval_budget(budget))
    X = action.degree
    ident = tuple(range(X))
    total = Fraction(0)
    for assignment in itertools.product(range(action.order), repeat=r):
        perms = [action.elements[i] for i in assignment]
        inv_perms = [None] * r

        def image(word: Word):
            p = ident
            for x in word.letters:
                g = abs(x) - 1
                if x > 0:
                    q = perms[g]
                else:
                    if inv_perms[g] is None:
                        ip = [0] * X
                        for a, b in enumerate(perms[g]):
                            ip[b] = a
                        inv_perms[g] = tuple(ip)
                    q = inv_perms[g]
                p = tuple(q[p[i]] for i in range(X))
            return p

        images = [image(wd) for wd in hgens]
        fixed = sum(1 for x in range(X) if all(p[x] == x for p in images))
        total += fixed
    return total / total_homs
