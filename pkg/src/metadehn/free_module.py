"""The free module M = Z[T]^m, group words, norms and ordered forms.

A module element f = mu_1 a_1 + ... + mu_m a_m is stored as the tuple of its
coordinates mu_i.  Group words are sequences of letters over a_1..a_m and
t_1..t_k.  With the conjugation convention x^y = y^-1 x y, an occurrence of
a_i^{+-1} after a prefix whose T-image is p contributes +-t^{-p} a_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError, UsageError
from .group_ring import RingElement, format_ring_element, monomial_key, parse_ring_element
from .walks import DEFAULT_EXACT_LIMIT, walk_length


class ModuleElement:
    """An element of the free Z[T]-module with basis a_1..a_m."""

    __slots__ = ("k", "m", "coords")

    def __init__(self, coords: Sequence[RingElement]):
        coords = tuple(coords)
        if not coords:
            raise UsageError("a module element needs at least one coordinate")
        k = coords[0].k
        if any(c.k != k for c in coords):
            raise UsageError("coordinates have different ranks")
        self.k = k
        self.m = len(coords)
        self.coords = coords

    @classmethod
    def zero(cls, k: int, m: int) -> "ModuleElement":
        return cls([RingElement.zero(k)] * m)

    @classmethod
    def basis(cls, k: int, m: int, i: int) -> "ModuleElement":
        """The basis element a_i (1-based)."""
        return cls([RingElement.constant(k, 1 if j == i else 0) for j in range(1, m + 1)])

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "ModuleElement":
        return parse_module_element(text, k)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def _check(self, other: "ModuleElement"):
        if (self.k, self.m) != (other.k, other.m):
            raise UsageError(f"shape mismatch: (k={self.k}, m={self.m}) vs (k={other.k}, m={other.m})")

    def __add__(self, other):
        self._check(other)
        return ModuleElement([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return ModuleElement([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleElement([-a for a in self.coords])

    def __mul__(self, scalar):
        """Scale by a ring element or an integer."""
        return ModuleElement([scalar * a for a in self.coords])

    __rmul__ = __mul__

    def shift(self, exponents) -> "ModuleElement":
        return ModuleElement([a.shift(exponents) for a in self.coords])

    def support(self) -> frozenset:
        out: set = set()
        for a in self.coords:
            out |= a.support()
        return frozenset(out)

    def one_norm(self) -> int:
        return sum(a.one_norm() for a in self.coords)

    def __repr__(self):
        return f"ModuleElement({format_module_element(self)!r})"

    def __str__(self):
        return format_module_element(self)


def parse_module_element(text: str, k: int | None = None) -> ModuleElement:
    """Parse semicolon-separated coordinates, e.g. ``t1-1; 0; 2``."""
    parts = [p.strip() for p in text.split(";")]
    if any(not p for p in parts):
        raise ParseError(f"empty coordinate in {text!r}")
    polys = [parse_ring_element(p, k) for p in parts]
    k = max(p.k for p in polys)
    return ModuleElement([parse_ring_element(p, k) for p in parts])


def format_module_element(f: ModuleElement) -> str:
    return "; ".join(format_ring_element(c) for c in f.coords)


# ---------------------------------------------------------------------------
# group words

# a letter is (kind, index, sign) with kind in {"a", "t"}, index >= 1, sign +-1
Letter = tuple


class GroupWord:
    """An immutable word over a_1..a_m, t_1..t_k and their inverses."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        out = []
        for kind, idx, sign in letters:
            if kind not in ("a", "t") or idx < 1 or sign not in (1, -1):
                raise ParseError(f"bad letter {(kind, idx, sign)!r}")
            out.append((kind, int(idx), int(sign)))
        self.letters = tuple(out)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        return parse_word(text)

    @classmethod
    def power(cls, kind: str, idx: int, n: int) -> "GroupWord":
        s = 1 if n >= 0 else -1
        return cls([(kind, idx, s)] * abs(n))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __mul__(self, n: int) -> "GroupWord":
        return GroupWord(self.letters * n)

    def inverse(self) -> "GroupWord":
        return GroupWord((k, i, -s) for k, i, s in reversed(self.letters))

    def conjugate(self, by: "GroupWord") -> "GroupWord":
        """self^by = by^-1 self by."""
        return by.inverse() + self + by

    def free_reduce(self) -> "GroupWord":
        out: list = []
        for letter in self.letters:
            if out and out[-1][:2] == letter[:2] and out[-1][2] == -letter[2]:
                out.pop()
            else:
                out.append(letter)
        return GroupWord(out)

    def max_index(self, kind: str) -> int:
        return max((i for k, i, _ in self.letters if k == kind), default=1)

    def t_image(self, k: int | None = None) -> tuple:
        k = k or self.max_index("t")
        p = [0] * k
        for kind, i, s in self.letters:
            if kind == "t":
                p[i - 1] += s
        return tuple(p)

    def __repr__(self):
        return f"GroupWord({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() + y.inverse() + x + y


_WORD_TOKEN = re.compile(r"\s*(?:([at])(\d*)|(\^)\s*([+-]?\d+)|(\[)|(\])|(,)|(\()|(\)))")


def _tokenize_word(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if m.group(1):
            tokens.append(("letter", (m.group(1), int(m.group(2)) if m.group(2) else 1)))
        elif m.group(3):
            tokens.append(("pow", int(m.group(4))))
        else:
            tokens.append((m.group(m.lastindex), None))
        pos = m.end()
    return tokens


def parse_word(text: str) -> GroupWord:
    """Parse ``a1 a1^-1 t1 t1^-1``; ``[x, y]`` expands to x^-1 y^-1 x y.

    Brackets nest, ``( ... )`` groups, and any atom may carry an integer power.
    """
    tokens = _tokenize_word(text)
    pos = 0

    def parse_seq(stop: set) -> GroupWord:
        word = GroupWord()
        while pos < len(tokens) and tokens[pos][0] not in stop:
            word = word + parse_item()
        return word

    def expect(kind: str):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != kind:
            raise ParseError(f"expected {kind!r} in {text!r}")
        pos += 1

    def parse_item() -> GroupWord:
        nonlocal pos
        kind, val = tokens[pos]
        if kind == "letter":
            pos += 1
            atom = GroupWord([(val[0], val[1], 1)])
        elif kind == "[":
            pos += 1
            x = parse_seq({","})
            expect(",")
            y = parse_seq({"]"})
            expect("]")
            atom = commutator(x, y)
        elif kind == "(":
            pos += 1
            atom = parse_seq({")"})
            expect(")")
        else:
            raise ParseError(f"unexpected {kind!r} in {text!r}")
        if pos < len(tokens) and tokens[pos][0] == "pow":
            n = tokens[pos][1]
            pos += 1
            atom = atom * n if n >= 0 else atom.inverse() * (-n)
        return atom

    word = parse_seq(set())
    if pos != len(tokens):
        raise ParseError(f"trailing tokens in {text!r}")
    return word


def format_word(w: GroupWord) -> str:
    """Whitespace-separated letters, runs collapsed to powers (``a1^2 t1^-1``)."""
    out = []
    run = None
    n = 0
    for kind, i, s in w.letters:
        if run == (kind, i) and (n > 0) == (s > 0):
            n += s
            continue
        if run is not None:
            out.append(_format_power(run, n))
        run, n = (kind, i), s
    if run is not None:
        out.append(_format_power(run, n))
    return " ".join(out)


def _format_power(run, n) -> str:
    name = f"{run[0]}{run[1]}"
    return name if n == 1 else f"{name}^{n}"


def word_to_module(w: GroupWord, k: int | None = None, m: int | None = None) -> tuple:
    """Image of ``w`` in Z^m wr Z^k as (base module element, T-image)."""
    k = k or w.max_index("t")
    m = m or w.max_index("a")
    acc: list = [dict() for _ in range(m)]
    p = [0] * k
    for kind, i, s in w.letters:
        if kind == "t":
            if i > k:
                raise ParseError(f"letter t{i} exceeds rank {k}")
            p[i - 1] += s
        else:
            if i > m:
                raise ParseError(f"letter a{i} exceeds basis size {m}")
            u = tuple(-x for x in p)
            acc[i - 1][u] = acc[i - 1].get(u, 0) + s
    return ModuleElement([RingElement(k, d) for d in acc]), tuple(p)


# ---------------------------------------------------------------------------
# norm and ordered form

def reach_of(f: ModuleElement, exact_limit: int = DEFAULT_EXACT_LIMIT) -> tuple:
    """(reach, exact) for the union of the coordinate supports."""
    w = walk_length(f.support(), None, f.k, exact_limit)
    return w.length, w.exact


def module_norm(f: ModuleElement, exact_limit: int = DEFAULT_EXACT_LIMIT) -> int:
    """||f|| = sum of coordinate one-norms + reach of the joint support."""
    return f.one_norm() + reach_of(f, exact_limit)[0]


def _monomial_word(u) -> GroupWord:
    letters = []
    for i, e in enumerate(u, start=1):
        letters.extend([("t", i, 1 if e > 0 else -1)] * abs(e))
    return GroupWord(letters)


@dataclass(frozen=True)
class OrderedForm:
    """Per-coordinate term lists (strictly descending) and the rendered word."""

    terms: tuple
    word: GroupWord

    def __str__(self):
        return str(self.word)


def ordered_form(f: ModuleElement) -> OrderedForm:
    """The ordered form a_1^{mu_1} ... a_m^{mu_m} with descending terms.

    Each term c*u of mu_i is rendered as the block u^-1 a_i^c u; the
    concatenation is freely reduced, which merges adjacent conjugators.
    """
    terms = tuple(tuple(c.sorted_terms()) for c in f.coords)
    letters: list = []
    for i, coord_terms in enumerate(terms, start=1):
        for u, c in coord_terms:
            uw = _monomial_word(u)
            letters.extend(uw.inverse().letters)
            letters.extend([("a", i, 1 if c > 0 else -1)] * abs(c))
            letters.extend(uw.letters)
    return OrderedForm(terms, GroupWord(letters).free_reduce())


def ordered_form_cost_bound(length: int) -> int:
    """Relative-area bound (4l - 3) l^2 for bringing a word of length l to ordered form."""
    if length <= 0:
        return 0
    return (4 * length - 3) * length * length


__all__ = [
    "ModuleElement", "GroupWord", "OrderedForm", "commutator", "parse_word", "format_word",
    "parse_module_element", "format_module_element", "word_to_module", "module_norm",
    "reach_of", "ordered_form", "ordered_form_cost_bound", "monomial_key",
]
