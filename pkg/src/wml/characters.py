"""Finite groups, their characters, and exact word-measure expectations.

Character tables are classical inputs (built in or user supplied), never
derived by a character-table algorithm; irreducibility claims are verified
by exact inner products at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .budget import BudgetError, ValidationError, eval_budget
from .core_graphs import CoreGraph, SubgroupBasis, rewrite_in_subgroup
from .cyclotomic import Cyclotomic
from .words import Word

_uid_counter = itertools.count()


class FiniteGroup:
    """A finite group as an explicit multiplication table.

    Elements are 0..order-1 with 0 the identity.  Conjugacy classes and
    the exponent are computed at construction; associativity is
    spot-checked on random triples.
    """

    __slots__ = (
        "order",
        "mult",
        "inverse",
        "classes",
        "class_of",
        "exponent",
        "name",
        "uid",
        "_np_mult",
    )

    def __init__(self, mult, name: str = "G"):
        order = len(mult)
        mult = tuple(tuple(row) for row in mult)
        if any(len(row) != order for row in mult):
            raise ValidationError("multiplication table is not square")
        # identity: relocate to index 0 if needed
        ident = None
        for e in range(order):
            if all(mult[e][x] == x and mult[x][e] == x for x in range(order)):
                ident = e
                break
        if ident is None:
            raise ValidationError("no identity element in table")
        if ident != 0:
            perm = list(range(order))
            perm[0], perm[ident] = ident, 0
            inv = perm  # own inverse (a transposition)
            mult = tuple(
                tuple(inv[mult[perm[a]][perm[b]]] for b in range(order))
                for a in range(order)
            )
        inverse = [None] * order
        for x in range(order):
            for y in range(order):
                if mult[x][y] == 0:
                    if mult[y][x] != 0:
                        raise ValidationError(f"one-sided inverse at element {x}")
                    inverse[x] = y
                    break
            if inverse[x] is None:
                raise ValidationError(f"element {x} has no inverse")
        import random

        rng = random.Random(12345)
        for _ in range(min(1000, order**2)):
            a, b, c = rng.randrange(order), rng.randrange(order), rng.randrange(order)
            if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                raise ValidationError(f"associativity fails at ({a},{b},{c})")
        # conjugacy classes
        class_of = [-1] * order
        classes = []
        for x in range(order):
            if class_of[x] != -1:
                continue
            cls = sorted({mult[mult[g][x]][inverse[g]] for g in range(order)})
            for y in cls:
                class_of[y] = len(classes)
            classes.append(tuple(cls))
        # exponent
        exponent = 1
        for x in range(order):
            k, y = 1, x
            while y != 0:
                y = mult[y][x]
                k += 1
            exponent = lcm(exponent, k)
        self.order = order
        self.mult = mult
        self.inverse = tuple(inverse)
        self.classes = tuple(classes)
        self.class_of = tuple(class_of)
        self.exponent = exponent
        self.name = name
        self.uid = next(_uid_counter)
        self._np_mult = None

    def np_mult(self) -> np.ndarray:
        if self._np_mult is None:
            self._np_mult = np.array(self.mult, dtype=np.int32)
        return self._np_mult

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[x], -k)
        y = 0
        for _ in range(k):
            y = self.mult[y][x]
        return y

    def __repr__(self):
        return f"{self.name} (order {self.order})"

    def to_json(self):
        return {
            "order": self.order,
            "mult": [list(r) for r in self.mult],
            "classes": [list(c) for c in self.classes],
        }

    @staticmethod
    def from_permutation_generators(gens, name="G", element_budget=None) -> "FiniteGroup":
        """Closure of permutation generators (tuples over 0..n-1)."""
        from .budget import DEFAULT_GROUP_ELEMENT_BUDGET, check

        budget = element_budget or DEFAULT_GROUP_ELEMENT_BUDGET
        n = len(gens[0])
        ident = tuple(range(n))
        elements = {ident: 0}
        order_list = [ident]
        frontier = [ident]
        gens = [tuple(g) for g in gens]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = tuple(p[g[i]] for i in range(n))
                    if q not in elements:
                        check("permutation closure", len(elements) + 1, budget)
                        elements[q] = len(order_list)
                        order_list.append(q)
                        new.append(q)
            frontier = new
        k = len(order_list)
        mult = [
            [elements[tuple(p[q[i]] for i in range(n))] for q in order_list]
            for p in order_list
        ]
        group = FiniteGroup(mult, name)
        return group


@dataclass(frozen=True)
class ClassFunction:
    """A class function with exact cyclotomic values, one per class."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]
    name: str = "f"
    is_character: bool = False
    is_irreducible: bool = False

    def __post_init__(self):
        if len(self.values) != len(self.group.classes):
            raise ValidationError("one value per conjugacy class required")
        if self.is_irreducible:
            ip = inner_product(self, self)
            if ip != 1:
                raise ValidationError(f"{self.name}: <f,f> = {ip} != 1, not irreducible")

    def __call__(self, element: int) -> Cyclotomic:
        return self.values[self.group.class_of[element]]

    def dim(self) -> Cyclotomic:
        return self.values[self.group.class_of[0]]

    def is_linear(self) -> bool:
        return self.is_character and self.dim() == 1

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __repr__(self):
        return f"{self.name} on {self.group.name}"

    def to_json(self):
        conductor = lcm(*[v.conductor for v in self.values])
        return {
            "name": self.name,
            "conductor": conductor,
            "values": [[str(c) for c in v.lift(conductor).coeffs] for v in self.values],
        }


def classfunction_from_elements(group, element_values, name="f", **flags) -> ClassFunction:
    """Build a class function from per-element values, verifying constancy
    on classes."""
    vals = []
    for cls in group.classes:
        v0 = element_values[cls[0]]
        if not isinstance(v0, Cyclotomic):
            v0 = Cyclotomic.from_rational(v0)
        for x in cls[1:]:
            if v0 != (
                element_values[x]
                if isinstance(element_values[x], Cyclotomic)
                else Cyclotomic.from_rational(element_values[x])
            ):
                raise ValidationError(f"{name} is not constant on a conjugacy class")
        vals.append(v0)
    return ClassFunction(group, tuple(vals), name, **flags)


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """<f,g> = (1/|G|) sum |class| f(c) conj(g(c)), exactly."""
    if f.group is not g.group:
        raise ValidationError("inner product requires class functions on one group")
    total = Cyclotomic.zero()
    for cls, fv, gv in zip(f.group.classes, f.values, g.values):
        total = total + fv * gv.conjugate() * len(cls)
    return total / f.group.order


# -- builtin groups ----------------------------------------------------------


def _perm_mult(p, q):
    # apply p then q
    return tuple(q[p[i]] for i in range(len(p)))


def _cycle_type(p) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    lens = []
    for i in range(n):
        if not seen[i]:
            j, c = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                c += 1
            lens.append(c)
    return tuple(sorted(lens, reverse=True))


# character values of S_n per cycle type; classical tables
_SYMMETRIC_TABLES = {
    2: {
        "trivial": {(1, 1): 1, (2,): 1},
        "sign": {(1, 1): 1, (2,): -1},
    },
    3: {
        "trivial": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
        "sign": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
        "std": {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
    },
    4: {
        "trivial": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
        "sign": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
        "dim2": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
        "std": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
        "std_sign": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
    },
    5: {
        "trivial": {t: 1 for t in [(1,) * 5, (2, 1, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2), (4, 1), (5,)]},
        "sign": {(1,) * 5: 1, (2, 1, 1, 1): -1, (2, 2, 1): 1, (3, 1, 1): 1, (3, 2): -1, (4, 1): -1, (5,): 1},
        "std": {(1,) * 5: 4, (2, 1, 1, 1): 2, (2, 2, 1): 0, (3, 1, 1): 1, (3, 2): -1, (4, 1): 0, (5,): -1},
        "std_sign": {(1,) * 5: 4, (2, 1, 1, 1): -2, (2, 2, 1): 0, (3, 1, 1): 1, (3, 2): 1, (4, 1): 0, (5,): -1},
        "dim5": {(1,) * 5: 5, (2, 1, 1, 1): 1, (2, 2, 1): 1, (3, 1, 1): -1, (3, 2): 1, (4, 1): -1, (5,): 0},
        "dim5_sign": {(1,) * 5: 5, (2, 1, 1, 1): -1, (2, 2, 1): 1, (3, 1, 1): -1, (3, 2): -1, (4, 1): 1, (5,): 0},
        "dim6": {(1,) * 5: 6, (2, 1, 1, 1): 0, (2, 2, 1): -2, (3, 1, 1): 0, (3, 2): 0, (4, 1): 0, (5,): 1},
    },
}


def _symmetric_group(n: int):
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    ident = tuple(range(n))
    # reorder so identity is first
    perms = [ident] + [p for p in perms if p != ident]
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[_perm_mult(p, q)] for q in perms] for p in perms]
    group = FiniteGroup(mult, f"S{n}")
    chars = []
    for name, table in _SYMMETRIC_TABLES[n].items():
        vals = [table[_cycle_type(perms[cls[0]])] for cls in group.classes]
        chars.append(
            ClassFunction(
                group,
                tuple(Cyclotomic.from_rational(v) for v in vals),
                name=name,
                is_character=True,
                is_irreducible=True,
            )
        )
    return group, chars, perms


def _cyclic_group(m: int):
    mult = [[(a + b) % m for b in range(m)] for a in range(m)]
    group = FiniteGroup(mult, f"C{m}")
    chars = []
    for j in range(m):
        vals = tuple(Cyclotomic.root_of_unity(m, (j * k) % m) for k in range(m))
        chars.append(
            ClassFunction(
                group,
                vals,
                name="trivial" if j == 0 else f"chi{j}",
                is_character=True,
                is_irreducible=True,
            )
        )
    return group, chars


def _dihedral_group(m: int):
    """Dihedral group of ORDER m (m even): symmetries of the (m/2)-gon.
    dihedral(4) is the Klein four-group."""
    if m % 2 or m < 2:
        raise ValidationError("dihedral order must be even and >= 2")
    k = m // 2
    # element (i, s) -> id i + k*s ; s = 1 are reflections
    def mid(i, s):
        return i % k + k * s

    mult = [[0] * m for _ in range(m)]
    for i in range(k):
        for s in (0, 1):
            for j in range(k):
                for t in (0, 1):
                    if s == 0:
                        mult[mid(i, 0)][mid(j, t)] = mid(i + j, t)
                    else:
                        mult[mid(i, 1)][mid(j, t)] = mid(i - j, 1 - t)
    group = FiniteGroup(mult, f"D{m}")
    chars = []

    def add_from_elements(vals, name):
        chars.append(
            classfunction_from_elements(
                group, vals, name, is_character=True, is_irreducible=True
            )
        )

    one = [Cyclotomic.one()] * m
    add_from_elements(one, "trivial")
    refl_sign = [Cyclotomic.from_rational(1 if e < k else -1) for e in range(m)]
    add_from_elements(refl_sign, "reflection_sign")
    if k % 2 == 0:
        rot_sign = [
            Cyclotomic.from_rational((-1) ** (e % k)) for e in range(m)
        ]
        add_from_elements(rot_sign, "rotation_sign")
        add_from_elements(
            [a * b for a, b in zip(rot_sign, refl_sign)], "product_sign"
        )
    for j in range(1, (k - 1) // 2 + 1):
        if 2 * j == k:
            continue
        vals = [
            Cyclotomic.root_of_unity(k, j * e) + Cyclotomic.root_of_unity(k, -j * e)
            if e < k
            else Cyclotomic.zero()
            for e in range(m)
        ]
        add_from_elements(vals, f"rot2d_{j}")
    return group, chars


def _quaternion_group():
    # elements: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def q_mult(a, b):
        sa, xa = (1 if a % 2 == 0 else -1), a // 2  # x in {1, i, j, k}
        sb, xb = (1 if b % 2 == 0 else -1), b // 2
        table = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }
        s, x = table[(xa, xb)]
        s *= sa * sb
        return 2 * x + (0 if s == 1 else 1)

    mult = [[q_mult(a, b) for b in range(8)] for a in range(8)]
    group = FiniteGroup(mult, "Q8")
    chars = []
    # four linear characters through the Klein quotient Q8 / {+-1}
    for (si, sj), name in [
        ((1, 1), "trivial"), ((1, -1), "sign_j"), ((-1, 1), "sign_i"), ((-1, -1), "sign_ij"),
    ]:
        vals = [1, 1, si, si, sj, sj, si * sj, si * sj]
        chars.append(
            classfunction_from_elements(
                group, vals, name, is_character=True, is_irreducible=True
            )
        )
    vals2 = [2, -2, 0, 0, 0, 0, 0, 0]
    chars.append(
        classfunction_from_elements(
            group, vals2, "dim2", is_character=True, is_irreducible=True
        )
    )
    return group, chars


@lru_cache(maxsize=None)
def builtin_group(name: str):
    """Builtin groups with verified irreducible character tables.

    Names: ``C<m>`` (cyclic), ``S<n>`` for n <= 5 (symmetric),
    ``D<m>`` (dihedral of order m, m even), ``Q8``.
    Returns (FiniteGroup, tuple of ClassFunction).
    """
    name = name.strip()
    if name.upper() == "Q8":
        g, chars = _quaternion_group()
    elif name[0] in "Cc" and name[1:].isdigit():
        m = int(name[1:])
        if not 1 <= m <= 100:
            raise ValidationError("cyclic order out of supported range 1..100")
        g, chars = _cyclic_group(m)
    elif name[0] in "Ss" and name[1:].isdigit():
        n = int(name[1:])
        if not 2 <= n <= 5:
            raise ValidationError("symmetric groups supported for 2 <= n <= 5")
        g, chars, _ = _symmetric_group(n)
    elif name[0] in "Dd" and name[1:].isdigit():
        g, chars = _dihedral_group(int(name[1:]))
    else:
        raise ValidationError(f"unknown builtin group {name!r}")
    # completeness: sum of squared dims = |G|, pairwise orthogonal
    total = sum((c.dim() * c.dim() for c in chars), Cyclotomic.zero())
    if total != g.order:
        raise ValidationError(f"{name}: character table incomplete")
    for i, c1 in enumerate(chars):
        for c2 in chars[i + 1 :]:
            if inner_product(c1, c2) != 0:
                raise ValidationError(f"{name}: characters {c1.name},{c2.name} not orthogonal")
    return g, tuple(chars)


def symmetric_std_character(n: int) -> ClassFunction:
    g, chars, _ = _symmetric_group(n)
    for c in chars:
        if c.name == ("std" if n >= 3 else "sign"):
            return c
    raise AssertionError


# -- word-measure expectations ----------------------------------------------

_CHUNK = 1 << 20


def _word_counts(group: FiniteGroup, var_count: int, letters, budget: int) -> np.ndarray:
    """Counts of w(g_1..g_k) over all tuples in G^k, as a |G|-vector.

    Enumerates the tuple space in chunks, pushing each chunk through the
    multiplication table with fancy indexing.
    """
    order = group.order
    total = order**var_count
    if total > budget:
        raise BudgetError("word-measure enumeration", total, budget)
    mult = group.np_mult()
    inv = np.array(group.inverse, dtype=np.int32)
    counts = np.zeros(order, dtype=np.int64)
    strides = [order**i for i in range(var_count)]
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        flat = np.arange(start, stop, dtype=np.int64)
        cur = np.zeros(stop - start, dtype=np.int32)
        for x in letters:
            g = abs(x) - 1
            idx = (flat // strides[g]) % order
            idx = idx.astype(np.int32)
            if x < 0:
                idx = inv[idx]
            cur = mult[cur, idx]
        counts += np.bincount(cur, minlength=order)
    return counts


_expectation_memo: dict = {}


def expectation_word(
    phi: ClassFunction, v: Word, budget: int | None = None
) -> Cyclotomic:
    """E over Haar tuples (g_1..g_k) in G^k of phi(v(g_1..g_k)), exactly.

    Fast paths: linear characters factor through the abelianization; an
    irreducible non-trivial character integrates to zero as soon as some
    generator occurs exactly once in v.
    """
    group = phi.group
    k = v.rank
    if v.is_identity():
        return phi(0)
    key = (group.uid, phi.values, v.letters, k)
    if key in _expectation_memo:
        return _expectation_memo[key]
    result = None
    if phi.is_linear():
        result = Cyclotomic.one()
        for nu in v.net_exponents():
            trivial_power = all((val**nu) == 1 for val in phi.values)
            if not trivial_power:
                result = Cyclotomic.zero()
                break
    elif phi.is_irreducible and not phi.is_trivial():
        occurrences = [0] * k
        for x in v.letters:
            occurrences[abs(x) - 1] += 1
        if any(c == 1 for c in occurrences):
            result = Cyclotomic.zero()
    if result is None:
        counts = _word_counts(group, k, v.letters, eval_budget(budget))
        by_class = [0] * len(group.classes)
        for e in range(group.order):
            c = int(counts[e])
            if c:
                by_class[group.class_of[e]] += c
        total = Cyclotomic.zero()
        for cnt, val in zip(by_class, phi.values):
            if cnt:
                total = total + val * cnt
        result = total / Fraction(group.order**k)
    _expectation_memo[key] = result
    return result


# -- character specifications -------------------------------------------------


@dataclass(frozen=True)
class CharacterSpec:
    """Which base character the wreath-product formulas use.

    kind 'trivial': the constant 1.
    kind 'circle': the standard embedding C_m -> S^1 (m = None means S^1
    itself); expectations are 0/1 according to m-divisibility of the
    abelianized word.
    kind 'finite': an explicit ClassFunction on a finite group.
    """

    kind: str
    m: int | None = None
    cf: ClassFunction | None = None

    @staticmethod
    def trivial() -> "CharacterSpec":
        return CharacterSpec("trivial")

    @staticmethod
    def circle(m: int | None) -> "CharacterSpec":
        if m is not None and m < 2:
            raise ValidationError("circle modulus must be >= 2 (or None for S^1)")
        return CharacterSpec("circle", m=m)

    @staticmethod
    def finite(cf: ClassFunction) -> "CharacterSpec":
        if cf.is_trivial():
            return CharacterSpec.trivial()
        return CharacterSpec("finite", cf=cf)

    def dim(self) -> Cyclotomic:
        if self.kind == "finite":
            return self.cf.dim()
        return Cyclotomic.one()

    def describe(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "circle":
            return f"circle({self.m if self.m is not None else 'inf'})"
        return f"{self.cf.name} on {self.cf.group.name}"


def expectation_rel(
    phi: CharacterSpec | ClassFunction,
    w: Word,
    basis: SubgroupBasis,
    budget: int | None = None,
) -> Cyclotomic:
    """E_{w -> H}[phi]: the w-measure expectation when w is seen as an
    element of the subgroup H (given by a spanning-tree basis).

    For the circle embedding this is 1 iff every basis letter of H has
    total exponent divisible by m in the rewritten word (net zero when
    m is infinite), i.e. iff w lies in the mod-m commutator kernel of H.
    """
    if isinstance(phi, ClassFunction):
        phi = CharacterSpec.finite(phi)
    rewritten = rewrite_in_subgroup(w, basis)
    if phi.kind == "trivial":
        return Cyclotomic.one()
    if phi.kind == "circle":
        for nu in rewritten.net_exponents():
            if (phi.m is None and nu != 0) or (phi.m is not None and nu % phi.m):
                return Cyclotomic.zero()
        return Cyclotomic.one()
    return expectation_word(phi.cf, rewritten, budget)


def expectation_edge_based(
    phi: ClassFunction, w: Word, h: CoreGraph, budget: int | None = None
) -> Cyclotomic:
    """Independent route to E_{w->H}[phi]: average over uniform edge
    labelings beta: E(H) -> G of phi evaluated along the w-path."""
    path = h.trace_edges(w.letters)
    if path is None or h.trace(w.letters) != 0:
        from .core_graphs import NotInSubgroupError

        raise NotInSubgroupError("w does not lie in H")
    group = phi.group
    n_edges = h.n_edges
    total = group.order**n_edges
    if total > eval_budget(budget):
        raise BudgetError("edge-labeling enumeration", total, eval_budget(budget))
    counts = [0] * len(group.classes)
    for beta in itertools.product(range(group.order), repeat=n_edges):
        g = 0
        for signed in path:
            e = beta[abs(signed) - 1]
            g = group.mult[g][e if signed > 0 else group.inverse[e]]
        counts[group.class_of[g]] += 1
    result = Cyclotomic.zero()
    for cnt, val in zip(counts, phi.values):
        if cnt:
            result = result + val * cnt
    return result / Fraction(total)
