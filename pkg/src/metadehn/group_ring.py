"""Exact arithmetic in the integral group ring Z[T] of T = Z^k.

Elements are Laurent polynomials in t1..tk with arbitrary-precision integer
coefficients.  A monomial is a tuple of k signed exponents.

Two orders are provided.  Monomials are compared in degree-lexicographic
(shortlex) order for the letter ranking t1 > t1^-1 > t2 > t2^-1 > ...; ring
elements are compared lexicographically term by term, leading monomial first,
with integers ranked 0 < 1 < 2 < ... < -1 < -2 < ...
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import LeadingTermError, ParseError, UsageError

Monomial = tuple  # tuple[int, ...] of length k


def degree(u: Monomial) -> int:
    return sum(abs(e) for e in u)


def monomial_key(u: Monomial) -> tuple:
    """Sort key realising the shortlex order on exponent vectors.

    At the first generator where two monomials of equal degree differ, a positive
    exponent beats a negative one, which beats zero; within a sign class the
    larger absolute value wins.  This is exactly shortlex on the reduced letter
    strings t1^e1 t2^e2 ... over t1 > t1^-1 > t2 > ...
    """
    per_gen = tuple((2, e) if e > 0 else (1, -e) if e < 0 else (0, 0) for e in u)
    return (degree(u), per_gen)


def compare_monomials(u: Monomial, v: Monomial) -> int:
    """Return -1, 0 or 1 as u is smaller than, equal to or larger than v."""
    if len(u) != len(v):
        raise UsageError(f"rank mismatch: {len(u)} vs {len(v)}")
    ku, kv = monomial_key(u), monomial_key(v)
    return (ku > kv) - (ku < kv)


def integer_key(c: int) -> tuple:
    """Key for the well-order 0 < 1 < 2 < ... < -1 < -2 < ... on Z."""
    return (0, c) if c >= 0 else (1, -c)


def add_monomials(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def negate_monomial(u: Monomial) -> Monomial:
    return tuple(-a for a in u)


class RingElement:
    """A finitely supported map Z^k -> Z, i.e. an element of Z[T].

    Instances are immutable and hashable; zero coefficients are never stored.
    """

    __slots__ = ("k", "_terms", "_hash")

    def __init__(self, k: int, terms: Mapping[Monomial, int] | Iterable = ()):
        if k < 1:
            raise UsageError("rank k must be at least 1")
        self.k = k
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for u, c in items:
            u = tuple(int(e) for e in u)
            if len(u) != k:
                raise UsageError(f"monomial {u} has rank {len(u)}, expected {k}")
            acc[u] = acc.get(u, 0) + int(c)
        self._terms = {u: c for u, c in acc.items() if c != 0}
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, k: int) -> "RingElement":
        return cls(k)

    @classmethod
    def constant(cls, k: int, c: int) -> "RingElement":
        return cls(k, {(0,) * k: c})

    @classmethod
    def monomial(cls, exponents: Iterable[int], c: int = 1) -> "RingElement":
        u = tuple(exponents)
        return cls(len(u), {u: c})

    @classmethod
    def variable(cls, k: int, i: int, power: int = 1) -> "RingElement":
        """t_i^power, with generators indexed from 1."""
        if not 1 <= i <= k:
            raise UsageError(f"generator index {i} out of range for rank {k}")
        u = [0] * k
        u[i - 1] = power
        return cls(k, {tuple(u): 1})

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "RingElement":
        return parse_ring_element(text, k)

    # -- container protocol -------------------------------------------
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, u: Monomial) -> int:
        return self._terms.get(tuple(u), 0)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            return self == RingElement.constant(self.k, other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.k != self.k:
                raise UsageError(f"rank mismatch: {self.k} vs {other.k}")
            return other
        if isinstance(other, int):
            return RingElement.constant(self.k, other)
        raise TypeError(f"cannot combine RingElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for u, c in other._terms.items():
            acc[u] = acc.get(u, 0) + c
        return RingElement(self.k, acc)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.k, {u: -c for u, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (int, RingElement)):
            return NotImplemented
        if isinstance(other, int):
            return RingElement(self.k, {u: c * other for u, c in self._terms.items()})
        other = self._coerce(other)
        acc: dict = {}
        for u, c in self._terms.items():
            for v, d in other._terms.items():
                w = add_monomials(u, v)
                acc[w] = acc.get(w, 0) + c * d
        return RingElement(self.k, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise UsageError("negative powers are only defined for monomials; use shift()")
        result = RingElement.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponents: Iterable[int]) -> "RingElement":
        """Multiply by the monomial t^exponents."""
        v = tuple(exponents)
        if len(v) != self.k:
            raise UsageError(f"rank mismatch: {self.k} vs {len(v)}")
        return RingElement(self.k, {add_monomials(u, v): c for u, c in self._terms.items()})

    # -- norms, orders, degrees ----------------------------------------
    def one_norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def coefficient_sum(self) -> int:
        """Value of the element at t1 = ... = tk = 1 (the augmentation)."""
        return sum(self._terms.values())

    def sorted_terms(self) -> list:
        """Terms as (monomial, coefficient) pairs, strictly descending in shortlex."""
        return sorted(self._terms.items(), key=lambda uc: monomial_key(uc[0]), reverse=True)

    def order_key(self) -> list:
        return [(monomial_key(u), integer_key(c)) for u, c in self.sorted_terms()]

    def leading_term(self) -> tuple:
        """(monomial, coefficient, degree) of the shortlex-largest term."""
        if not self._terms:
            raise LeadingTermError("the zero element has no leading term")
        u = max(self._terms, key=monomial_key)
        return u, self._terms[u], degree(u)

    def degree(self) -> int:
        return self.leading_term()[2]

    def exponent_bounds(self) -> tuple:
        """Per-generator (min, max) exponents over the support."""
        if not self._terms:
            raise LeadingTermError("the zero element has empty support")
        cols = list(zip(*self._terms))
        return tuple(min(c) for c in cols), tuple(max(c) for c in cols)

    def __repr__(self):
        return f"RingElement({self.k}, {format_ring_element(self)!r})"

    def __str__(self):
        return format_ring_element(self)


def compare_ring_elements(lam: RingElement, mu: RingElement) -> int:
    """Return -1, 0 or 1 comparing lam and mu in the term-lexicographic well-order."""
    if lam.k != mu.k:
        raise UsageError(f"rank mismatch: {lam.k} vs {mu.k}")
    a, b = lam.order_key(), mu.order_key()
    return (a > b) - (a < b)


def one_norm(lam: RingElement) -> int:
    return lam.one_norm()


def leading_term_and_degree(lam: RingElement) -> tuple:
    return lam.leading_term()


# ---------------------------------------------------------------------------
# text format

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^t(\d*)(?:\^\(?([+-]?\d+)\)?)?$")


def _parse_term(text: str, sign: int, source: str) -> tuple:
    factors = [f for f in text.split("*")]
    if any(not f.strip() for f in factors):
        raise ParseError(f"empty factor in {source!r}")
    coeff = sign
    exps: dict = {}
    for raw in factors:
        f = raw.strip().replace(" ", "")
        if f.isdigit():
            coeff *= int(f)
            continue
        m = _FACTOR.match(f)
        if m is None:
            # allow a coefficient glued to the first factor, e.g. "2t1"
            g = re.match(r"^(\d+)(t.*)$", f)
            if g is None:
                raise ParseError(f"cannot parse factor {raw!r} in {source!r}")
            coeff *= int(g.group(1))
            m = _FACTOR.match(g.group(2))
            if m is None:
                raise ParseError(f"cannot parse factor {raw!r} in {source!r}")
        idx = int(m.group(1)) if m.group(1) else 1
        if idx < 1:
            raise ParseError(f"generator index must be >= 1 in {source!r}")
        power = int(m.group(2)) if m.group(2) is not None else 1
        exps[idx] = exps.get(idx, 0) + power
    return coeff, exps


def parse_ring_element(text: str, k: int | None = None) -> RingElement:
    """Parse text such as ``2*t1^2 - 3`` or ``t1^-1*t2 + 4``.

    ``t`` abbreviates ``t1``.  The rank is the largest generator index that
    appears unless ``k`` is given, in which case larger indices are an error.
    """
    source = text
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    # protect exponent signs from the term splitter
    s = re.sub(r"\^\s*\(?\s*-\s*(\d+)\s*\)?", r"^~\1", s)
    s = re.sub(r"\^\s*\(?\s*\+\s*(\d+)\s*\)?", r"^\1", s)
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)
    # parts: ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise ParseError(f"cannot parse {source!r}")
    parsed = []
    for i in range(1, len(parts), 2):
        sign = 1 if parts[i] == "+" else -1
        if i + 1 >= len(parts) or not parts[i + 1].strip():
            raise ParseError(f"dangling sign in {source!r}")
        parsed.append(_parse_term(parts[i + 1].replace("~", "-"), sign, source))
    top = max((max(e) for _, e in parsed if e), default=1)
    if k is None:
        k = top
    elif top > k:
        raise ParseError(f"{source!r} mentions t{top} but rank is {k}")
    acc: dict = {}
    for coeff, exps in parsed:
        u = tuple(exps.get(i, 0) for i in range(1, k + 1))
        acc[u] = acc.get(u, 0) + coeff
    return RingElement(k, acc)


def _format_monomial(u: Monomial) -> str:
    factors = []
    for i, e in enumerate(u, start=1):
        if e == 1:
            factors.append(f"t{i}")
        elif e:
            factors.append(f"t{i}^{e}")
    return "*".join(factors)


def format_ring_element(lam: RingElement) -> str:
    if not lam:
        return "0"
    out = []
    for u, c in lam.sorted_terms():
        mono = _format_monomial(u)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)
