"""Free-group words: reduction, parsing, Whitehead minimization and the
derived primitivity / free-factor predicates.

Letters are signed integers: +(g+1) is generator number g, -(g+1) its
inverse.  Words are always freely reduced; cyclic words additionally have
non-inverse first and last letters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .budget import DEFAULT_WHITEHEAD_RANK_BOUND, ValidationError

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def reduce_letters(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _default_names(rank: int, used: tuple[str, ...] = ()) -> tuple[str, ...]:
    names = list(used)
    fresh = (c for c in ALPHABET if c not in used)
    while len(names) < rank:
        names.append(next(fresh))
    return tuple(names)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank.

    ``names`` is display metadata only and does not enter equality.
    """

    rank: int
    letters: tuple[int, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.letters != reduce_letters(self.letters):
            raise ValidationError("word is not freely reduced")
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValidationError(f"letter {x} out of range for rank {self.rank}")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.rank))
        elif len(self.names) != self.rank:
            raise ValidationError("names length must equal rank")

    # -- basic algebra --------------------------------------------------

    def __len__(self):
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if other.rank != self.rank:
            raise ValidationError("rank mismatch")
        return Word(self.rank, reduce_letters(self.letters + other.letters), self.names)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-x for x in reversed(self.letters)), self.names)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word(self.rank, (), self.names)
        for _ in range(abs(k)):
            out = out * base
        return out

    def generators_used(self) -> tuple[int, ...]:
        return tuple(sorted({abs(x) - 1 for x in self.letters}))

    def net_exponents(self) -> tuple[int, ...]:
        """Image in Z^rank under abelianization."""
        vec = [0] * self.rank
        for x in self.letters:
            vec[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(vec)

    def compress(self) -> "Word":
        """Re-express over only the generators actually used (free-factor
        restriction; word measures are invariant under this)."""
        used = self.generators_used()
        if len(used) == self.rank:
            return self
        remap = {g: i for i, g in enumerate(used)}
        letters = tuple(
            (remap[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in self.letters
        )
        names = tuple(self.names[g] for g in used) or _default_names(max(1, len(used)))
        return Word(max(1, len(used)), letters, _default_names(max(1, len(used)), names))

    def __repr__(self):
        return self.display()

    def display(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for x, run in itertools.groupby(self.letters):
            n = len(list(run))
            name = self.names[abs(x) - 1]
            if x < 0:
                name = name.upper() if n == 1 else f"{name}^-{n}"
                parts.append(name)
            else:
                parts.append(name if n == 1 else f"{name}^{n}")
        return " ".join(parts)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word, representing a conjugacy class."""

    rank: int
    letters: tuple[int, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.letters != reduce_letters(self.letters):
            raise ValidationError("not freely reduced")
        if self.letters and self.letters[0] == -self.letters[-1]:
            raise ValidationError("not cyclically reduced")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.rank))

    def __len__(self):
        return len(self.letters)

    def canonical_key(self) -> tuple[int, ...]:
        """Minimal rotation; rotation-invariant identifier."""
        if not self.letters:
            return ()
        ls = self.letters
        return min(ls[i:] + ls[:i] for i in range(len(ls)))

    def to_word(self) -> Word:
        return Word(self.rank, self.letters, self.names)

    def generators_used(self) -> tuple[int, ...]:
        return tuple(sorted({abs(x) - 1 for x in self.letters}))

    def cyclic_root(self) -> tuple["CyclicWord", int]:
        """Largest k with self = u^k as a cyclic word; returns (u, k)."""
        ls = self.letters
        n = len(ls)
        for d in range(1, n + 1):
            if n % d == 0 and ls == ls[:d] * (n // d):
                return CyclicWord(self.rank, ls[:d], self.names), n // d
        return self, 1

    def is_proper_power(self) -> bool:
        return len(self.letters) > 0 and self.cyclic_root()[1] >= 2

    def __repr__(self):
        return self.to_word().display()


def reduce(letters, rank: int, names: tuple[str, ...] = ()) -> Word:
    """Freely reduce a raw signed-letter sequence."""
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise ValidationError(f"letter {x} out of range for rank {rank}")
    return Word(rank, reduce_letters(letters), names)


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split w = c * cyc * c^-1 with cyc cyclically reduced."""
    ls = list(w.letters)
    pre: list[int] = []
    while len(ls) >= 2 and ls[0] == -ls[-1]:
        pre.append(ls[0])
        ls = ls[1:-1]
    return (
        CyclicWord(w.rank, tuple(ls), w.names),
        Word(w.rank, tuple(pre), w.names),
    )


# -- parsing ------------------------------------------------------------


class WordSyntaxError(ValidationError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class _Parser:
    # word := factor+ ; factor := atom ('^' int)? ;
    # atom := [a-z] | [A-Z] | '[' word ',' word ']' | '(' word ')'
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def word(self) -> list:
        factors = []
        while True:
            c = self.peek()
            if c is None or c in "],)":
                break
            factors.append(self.factor())
        return [x for f in factors for x in f]

    def factor(self) -> list:
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            k = self.integer()
            return self._power(atom, k)
        return atom

    @staticmethod
    def _power(atom: list, k: int) -> list:
        if k == 0:
            return []
        if k < 0:
            atom = [-x for x in reversed(atom)]
            k = -k
        return atom * k

    def atom(self) -> list:
        c = self.peek()
        if c is None:
            raise WordSyntaxError("unexpected end of input", self.pos)
        if c.islower():
            self.pos += 1
            return [ord(c) - ord("a") + 1]
        if c.isupper():
            self.pos += 1
            return [-(ord(c.lower()) - ord("a") + 1)]
        if c == "[":
            start = self.pos
            self.pos += 1
            u = self.word()
            if self.peek() != ",":
                raise WordSyntaxError("expected ',' in commutator", self.pos)
            self.pos += 1
            v = self.word()
            if self.peek() != "]":
                raise WordSyntaxError(f"unclosed '[' opened", start)
            self.pos += 1
            return u + v + [-x for x in reversed(u)] + [-x for x in reversed(v)]
        if c == "(":
            start = self.pos
            self.pos += 1
            u = self.word()
            if self.peek() != ")":
                raise WordSyntaxError("unclosed '(' opened", start)
            self.pos += 1
            return u
        raise WordSyntaxError(f"unexpected token {c!r}", self.pos)

    def integer(self) -> int:
        start = self.pos
        c = self.peek()  # skips whitespace
        sign = 1
        if c in ("+", "-"):
            sign = -1 if c == "-" else 1
            self.pos += 1
        digits = ""
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            digits += self.text[self.pos]
            self.pos += 1
        if not digits:
            raise WordSyntaxError("expected integer after '^'", start)
        return sign * int(digits)


def _raw_parse(text: str) -> list[int]:
    parser = _Parser(text)
    raw = parser.word()
    if parser.peek() is not None:
        raise WordSyntaxError(f"unexpected token {parser.peek()!r}", parser.pos)
    return raw


def _alphabet_map(used_chars: list[str], rank: int | None):
    """Choose the generator numbering.  With an explicit rank whose
    alphabet prefix covers every letter, use the standard a->0, b->1, ...
    embedding; otherwise compress the distinct letters in alphabetical
    order."""
    if rank is not None and all(c in ALPHABET[:rank] for c in used_chars):
        names = tuple(ALPHABET[:rank])
        remap = {c: ord(c) - ord("a") for c in used_chars}
        return rank, names, remap
    inferred = len(used_chars)
    if rank is None:
        rank = max(1, inferred)
    elif rank < inferred:
        raise ValidationError(f"rank {rank} too small: word uses {inferred} generators")
    names = _default_names(rank, tuple(used_chars))
    remap = {c: i for i, c in enumerate(used_chars)}
    return rank, names, remap


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse the word grammar.  Lowercase letters are generators, uppercase
    their inverses; ``^k`` exponents, ``[u,v]`` commutators, parentheses.
    """
    return parse_words([text], rank)[0]


def parse_words(texts: list[str], rank: int | None = None) -> list[Word]:
    """Parse several words over one shared alphabet (for subgroup
    generating sets the letters must be numbered consistently)."""
    raws = [_raw_parse(t) for t in texts]
    used_chars = sorted({ALPHABET[abs(x) - 1] for raw in raws for x in raw})
    rank, names, remap = _alphabet_map(used_chars, rank)
    out = []
    for raw in raws:
        letters = [
            (remap[ALPHABET[abs(x) - 1]] + 1) * (1 if x > 0 else -1) for x in raw
        ]
        out.append(reduce(letters, rank, names))
    return out


# -- Whitehead automorphisms ---------------------------------------------


@dataclass(frozen=True)
class WhiteheadAut:
    """Type-I (relabeling) or type-II (multiplier) Whitehead automorphism.

    Type I: ``perm`` and ``signs`` describe generator g -> signs[g] * perm[g].
    Type II: ``multiplier`` a and letter set A with a in A, a^-1 not in A;
    fixes a and maps x -> a^(-[x^-1 in A]) * x * a^([x in A]) otherwise.
    """

    rank: int
    kind: int  # 1 or 2
    perm: tuple[int, ...] = ()
    signs: tuple[int, ...] = ()
    multiplier: int = 0
    letter_set: frozenset = frozenset()

    def __post_init__(self):
        if self.kind == 2:
            if self.multiplier not in self.letter_set:
                raise ValidationError("type-II set must contain the multiplier")
            if -self.multiplier in self.letter_set:
                raise ValidationError("type-II set must not contain the multiplier inverse")

    def letter_image(self, x: int) -> tuple[int, ...]:
        if self.kind == 1:
            g = abs(x) - 1
            y = (self.perm[g] + 1) * self.signs[g]
            return (y,) if x > 0 else (-y,)
        a, A = self.multiplier, self.letter_set
        if abs(x) == abs(a):
            return (x,)
        pos = abs(x)
        img = []
        if -pos in A:
            img.append(-a)
        img.append(pos)
        if pos in A:
            img.append(a)
        if x < 0:
            img = [-t for t in reversed(img)]
        return tuple(img)

    def inverse(self) -> "WhiteheadAut":
        if self.kind == 1:
            inv_perm = [0] * self.rank
            inv_signs = [1] * self.rank
            for g in range(self.rank):
                inv_perm[self.perm[g]] = g
                inv_signs[self.perm[g]] = self.signs[g]
            return WhiteheadAut(self.rank, 1, tuple(inv_perm), tuple(inv_signs))
        a, A = self.multiplier, self.letter_set
        return WhiteheadAut(
            self.rank, 2, multiplier=-a, letter_set=(A - {a}) | {-a}
        )


def apply_whitehead(aut: WhiteheadAut, w: Word) -> Word:
    if aut.rank != w.rank:
        raise ValidationError("rank mismatch between automorphism and word")
    out: list[int] = []
    for x in w.letters:
        out.extend(aut.letter_image(x))
    return Word(w.rank, reduce_letters(out), w.names)


@lru_cache(maxsize=None)
def type2_automorphisms(rank: int) -> tuple[WhiteheadAut, ...]:
    letters = [g for g in range(1, rank + 1)] + [-g for g in range(1, rank + 1)]
    auts = []
    for a in letters:
        others = [x for x in letters if abs(x) != abs(a)]
        for bits in itertools.product((False, True), repeat=len(others)):
            A = frozenset([a] + [x for x, b in zip(others, bits) if b])
            if len(A) == 1:
                continue  # identity map
            auts.append(WhiteheadAut(rank, 2, multiplier=a, letter_set=A))
    return tuple(auts)


@lru_cache(maxsize=None)
def type1_automorphisms(rank: int) -> tuple[WhiteheadAut, ...]:
    auts = []
    for perm in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            auts.append(WhiteheadAut(rank, 1, perm, signs))
    return tuple(auts)


@lru_cache(maxsize=8192)
def _image_table(aut: WhiteheadAut) -> dict:
    table = {}
    for g in range(1, aut.rank + 1):
        table[g] = aut.letter_image(g)
        table[-g] = aut.letter_image(-g)
    return table


def _cyc_len(aut: WhiteheadAut, cyc: tuple[int, ...], rank: int) -> tuple[int, ...]:
    table = _image_table(aut)
    out: list[int] = []
    for x in cyc:
        for y in table[x]:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    # cyclic reduction
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def _check_rank_bound(rank: int, bound: int):
    if rank > bound:
        raise ValidationError(
            f"Whitehead computation at rank {rank} exceeds bound {bound}; "
            "raise the bound explicitly if you mean it"
        )


def _canon_rotation(ls: tuple[int, ...]) -> tuple[int, ...]:
    return min(ls[i:] + ls[:i] for i in range(len(ls))) if ls else ()


@lru_cache(maxsize=65536)
def _descend_key(rank: int, key: tuple[int, ...]) -> tuple[int, ...]:
    """Greedy peak descent: a minimal-length cyclic representative of the
    automorphism orbit (type-II moves suffice to shorten)."""
    current = key
    t2 = type2_automorphisms(rank)
    improved = True
    while improved:
        improved = False
        for aut in t2:
            img = _cyc_len(aut, current, rank)
            if len(img) < len(current):
                current = img
                improved = True
                break
    return _canon_rotation(current)


@lru_cache(maxsize=4096)
def _level_set_key(rank: int, min_key: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Closure of a minimal representative under the length-preserving
    Whitehead moves of both kinds."""
    all_auts = type2_automorphisms(rank) + type1_automorphisms(rank)
    min_len = len(min_key)
    seen = {min_key}
    frontier = [min_key]
    while frontier:
        nxt = []
        for ls in frontier:
            for aut in all_auts:
                img = _cyc_len(aut, ls, rank)
                if len(img) == min_len:
                    c = _canon_rotation(img)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen))


def whitehead_minimize(
    w: Word, rank_bound: int = DEFAULT_WHITEHEAD_RANK_BOUND
) -> tuple[int, frozenset[CyclicWord]]:
    """Minimal cyclic length over Aut(F_r), and the full level set of
    minimal cyclic words reachable by length-preserving Whitehead moves."""
    _check_rank_bound(w.rank, rank_bound)
    cyc, _ = cyclic_reduce(w)
    if not cyc.letters:
        return 0, frozenset([cyc])
    minimal = _descend_key(w.rank, cyc.canonical_key())
    keys = _level_set_key(w.rank, minimal)
    return len(minimal), frozenset(CyclicWord(w.rank, k, w.names) for k in keys)


def is_primitive(w: Word, rank_bound: int = DEFAULT_WHITEHEAD_RANK_BOUND) -> bool:
    """True iff w is part of some basis of F_rank.

    A primitive word abelianizes to a unimodular row, so a gcd other than
    1 settles the question without touching the orbit; otherwise descend
    to the minimal length (the level set is never needed here).
    """
    if w.is_identity():
        return False
    from math import gcd

    g = 0
    for nu in w.net_exponents():
        g = gcd(g, abs(nu))
    if g != 1:
        return False
    _check_rank_bound(w.rank, rank_bound)
    cyc, _ = cyclic_reduce(w)
    return len(_descend_key(w.rank, cyc.canonical_key())) == 1


def lies_in_proper_free_factor(
    w: Word, rank_bound: int = DEFAULT_WHITEHEAD_RANK_BOUND
) -> bool:
    """Whitehead's criterion: a word of minimal length in its orbit lies in
    a proper free factor iff some minimal representative omits a generator.

    Explores the minimal level set breadth-first but stops at the first
    omitting representative; only the negative answer pays for the whole
    closure.
    """

    def omits(ls: tuple[int, ...]) -> bool:
        return len({abs(x) for x in ls}) < w.rank

    if w.is_identity():
        raise ValidationError("identity word: handled upstream as rank-0 case")
    _check_rank_bound(w.rank, rank_bound)
    cyc, _ = cyclic_reduce(w)
    if not cyc.letters:
        raise ValidationError("identity word: handled upstream as rank-0 case")
    minimal = _descend_key(w.rank, cyc.canonical_key())
    if omits(minimal):
        return True
    min_len = len(minimal)
    # type-I moves only relabel, so they never change whether a generator
    # is omitted; expanding type-II moves alone still meets every omitting
    # class (relabelings can be commuted to the end of any move sequence)
    auts = type2_automorphisms(w.rank)
    seen = {minimal}
    frontier = [minimal]
    while frontier:
        nxt = []
        for ls in frontier:
            for aut in auts:
                img = _cyc_len(aut, ls, w.rank)
                if len(img) == min_len:
                    c = _canon_rotation(img)
                    if c not in seen:
                        if omits(c):
                            return True
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return False
