"""Certified upper bounds on relative areas for k = m = 1 presentations.

A word whose T-image is zero is rewritten, at no cost, as a product of
conjugates a^{s t^e}; the certificate state is that list of entries (e, s).
Four kinds of move act on it:

freeReduce(index)
    delete adjacent entries (e, s), (e, -s).  A free reduction: area 0.
pairSwap(src, dst)
    move the two-entry block at ``src`` so that it starts at ``dst``.  Allowed
    when the block and the stretch it jumps over both have zero exponent sum:
    both then lie in the derived subgroup and commute by the metabelian law,
    so the area is 0.
transport(index)
    swap adjacent entries with exponents c != d.  One commutator
    [a, a^{t^{d-c}}], priced by the cost table; its game cost is |c - d|.
relatorApply(index, shift, power)
    insert the relator word R^power conjugated to exponent ``shift``: area 1.

Every move carries a digest chained over its predecessors and the entries it
touches, so a certificate is bound to its exact sequence of moves.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CertificateError, NotIdentityError, UsageError
from .free_module import GroupWord, format_word, parse_word
from .group_ring import RingElement, monomial_key
from .membership import laurent_divide
from .free_module import ordered_form_cost_bound

GENERAL = "general"
DERIVED = "derivedGenerator"
MOVE_KINDS = ("freeReduce", "pairSwap", "transport", "relatorApply")


# ---------------------------------------------------------------------------
# cost table and presentations

@dataclass(frozen=True)
class CostTable:
    commutator_mode: str = GENERAL
    relator_cost: int = 1

    def __post_init__(self):
        if self.commutator_mode not in (GENERAL, DERIVED):
            raise UsageError(f"unknown commutator mode {self.commutator_mode!r}")


def commutator_cost(d: int, table: CostTable | None = None) -> int:
    """Area charged for commuting a with a^{t^d}.

    General mode uses 4|d| - 3, clamped below at 1.  In derived-generator mode
    (a is itself a commutator) the cost is at most 4.
    """
    table = table or CostTable()
    cost = max(1, 4 * abs(d) - 3)
    if table.commutator_mode == DERIVED:
        cost = min(cost, 4)
    return cost


@dataclass(frozen=True)
class Presentation:
    """Either the lamplighter L_m = <a, t | a^m, [a, a^t]> or BS~(n, m) = <a, t | (a^n)^t = a^m>."""

    family: str  # "L" or "BS"
    m: int
    n: int = 0

    def __post_init__(self):
        if self.family == "L":
            if self.m < 2:
                raise UsageError("lamplighter needs m >= 2")
        elif self.family == "BS":
            if self.n < 1 or self.m < 1:
                raise UsageError("BS(n, m) needs n, m >= 1")
        else:
            raise UsageError(f"unknown presentation family {self.family!r}")

    @classmethod
    def lamplighter(cls, m: int) -> "Presentation":
        return cls("L", m)

    @classmethod
    def baumslag_solitar(cls, n: int, m: int) -> "Presentation":
        return cls("BS", m, n)

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        s = text.replace(" ", "")
        g = re.fullmatch(r"L_?(\d+)", s)
        if g:
            return cls.lamplighter(int(g.group(1)))
        g = re.fullmatch(r"BS~?\((\d+),(\d+)\)", s)
        if g:
            return cls.baumslag_solitar(int(g.group(1)), int(g.group(2)))
        raise UsageError(f"cannot parse presentation {text!r}; use L2 or BS(2,3)")

    @property
    def name(self) -> str:
        return f"L{self.m}" if self.family == "L" else f"BS({self.n},{self.m})"

    def relator(self) -> GroupWord:
        if self.family == "L":
            return GroupWord.power("a", 1, self.m)
        return parse_word(f"t^-1 a^{self.n} t a^{-self.m}")

    def relator_entries(self) -> list:
        if self.family == "L":
            return [(0, 1)] * self.m
        return [(1, 1)] * self.n + [(0, -1)] * self.m

    def module_generator(self) -> RingElement:
        """h with S = <h a>: m for L_m, n t - m for BS~(n, m)."""
        if self.family == "L":
            return RingElement.constant(1, self.m)
        return RingElement(1, {(1,): self.n, (0,): -self.m})

    def allows(self, table: CostTable) -> bool:
        if table.commutator_mode == GENERAL:
            return True
        return self.family == "BS" and self.m == self.n + 1 and self.m > 2

    def to_json(self, table: CostTable) -> dict:
        return {"name": self.name, "commutator_mode": table.commutator_mode}


def _check_table(P: Presentation, table: CostTable):
    if not P.allows(table):
        raise UsageError(f"derived-generator costs need BS(n, n+1) with n+1 > 2, not {P.name}")


# ---------------------------------------------------------------------------
# entries

def word_entries(w: GroupWord) -> list:
    """The conjugates a^{s t^e} of w in order, as (e, s); requires zero T-image."""
    p = 0
    out = []
    for kind, i, s in w.letters:
        if i != 1:
            raise UsageError("rewriting works with the letters a1 and t1 only")
        if kind == "t":
            p += s
        else:
            out.append((-p, s))
    if p:
        raise NotIdentityError(f"t-exponent sum is {p}, not 0")
    return out


def entries_to_word(entries: Sequence) -> GroupWord:
    letters = []
    cur = 0
    for e, s in entries:
        p = -e
        letters += [("t", 1, 1 if p > cur else -1)] * abs(p - cur)
        letters.append(("a", 1, s))
        cur = p
    letters += [("t", 1, -1 if cur > 0 else 1)] * abs(cur)
    return GroupWord(letters)


def _entries_module(entries) -> RingElement:
    acc: dict = {}
    for e, s in entries:
        acc[(e,)] = acc.get((e,), 0) + s
    return RingElement(1, acc)


def _okey(e: int):
    return monomial_key((e,))


def _digest(prev: str, kind: str, params: dict, touched) -> str:
    body = json.dumps([prev, kind, params, touched], sort_keys=True, separators=(",", ":"))
    return hashlib.blake2b(body.encode(), digest_size=8).hexdigest()


def _initial_digest(entries) -> str:
    return _digest("", "start", {}, [list(x) for x in entries])


# ---------------------------------------------------------------------------
# certificates

@dataclass
class Certificate:
    presentation: Presentation
    table: CostTable
    word: str
    moves: list = field(default_factory=list)
    total_game_cost: int = 0
    certified_area_bound: int = 0
    diagnostics: list = field(default_factory=list)

    @property
    def relator_applications(self) -> int:
        return sum(1 for mv in self.moves if mv["kind"] == "relatorApply")

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(self.table),
            "word": self.word,
            "moves": self.moves,
            "total_game_cost": self.total_game_cost,
            "certified_area_bound": self.certified_area_bound,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            pres = data["presentation"]
            P = Presentation.parse(pres["name"])
            table = CostTable(pres.get("commutator_mode", GENERAL))
            return cls(P, table, data["word"], list(data["moves"]),
                       data["total_game_cost"], data["certified_area_bound"])
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None


class _Rewriter:
    """Applies moves to a list of entries and records them."""

    def __init__(self, P: Presentation, table: CostTable, entries, stage: str = ""):
        self.P = P
        self.table = table
        self.entries = [tuple(x) for x in entries]
        self.moves: list = []
        self.digest = _initial_digest(self.entries)
        self.stage = stage

    def _record(self, kind, params, touched, game, area):
        params = dict(params)
        if self.stage:
            params["stage"] = self.stage
        self.digest = _digest(self.digest, kind, params, touched)
        params["digest"] = self.digest
        self.moves.append({"kind": kind, "params": params, "game_cost": game, "area_cost": area})

    def free_reduce(self, i):
        x, y = self.entries[i], self.entries[i + 1]
        assert x[0] == y[0] and x[1] == -y[1], (x, y)
        self._record("freeReduce", {"index": i}, [list(x), list(y)], 0, 0)
        del self.entries[i:i + 2]

    def pair_swap(self, src, dst):
        block = self.entries[src:src + 2]
        self._record("pairSwap", {"src": src, "dst": dst}, [list(x) for x in block], 0, 0)
        del self.entries[src:src + 2]
        self.entries[dst:dst] = block

    def transport(self, i):
        x, y = self.entries[i], self.entries[i + 1]
        d = x[0] - y[0]
        self._record("transport", {"index": i}, [list(x), list(y)], abs(d), commutator_cost(d, self.table))
        self.entries[i], self.entries[i + 1] = y, x

    def relator_apply(self, index, shift, power):
        block = [(e + shift, s * power) for e, s in self.P.relator_entries()]
        if power < 0:
            block.reverse()
        self._record("relatorApply", {"index": index, "shift": shift, "power": power},
                     [len(self.entries)], 0, self.table.relator_cost)
        self.entries[index:index] = block

    def flip(self, i):
        """Turn (e, s) into (e, -s) with one a^2 relator (L_2 only)."""
        e, s = self.entries[i]
        self.relator_apply(i + 1, e, -s)
        self.free_reduce(i)

    # ordered-form insertion sort with cancellation
    def sort_from(self, start: int):
        P = start
        ent = self.entries
        while P < len(ent):
            i = P
            cancelled = False
            while i > 0:
                x, y = ent[i], ent[i - 1]
                if y[0] == x[0]:
                    if y[1] == -x[1]:
                        self.free_reduce(i - 1)
                        cancelled = True
                    break
                if _okey(y[0]) < _okey(x[0]):
                    self.transport(i - 1)
                    i -= 1
                else:
                    break
            P = P - 1 if cancelled else P + 1

    def insertion_point(self, e: int) -> int:
        k = _okey(e)
        for i, (f, _) in enumerate(self.entries):
            if _okey(f) < k:
                return i
        return len(self.entries)


def _finish(rw: _Rewriter, word: GroupWord, diagnostics=()) -> Certificate:
    cert = Certificate(rw.P, rw.table, format_word(word), rw.moves)
    cert.total_game_cost = sum(mv["game_cost"] for mv in rw.moves)
    cert.certified_area_bound = sum(mv["area_cost"] for mv in rw.moves)
    cert.diagnostics = list(diagnostics)
    return cert


# ---------------------------------------------------------------------------
# ordered-form pipeline (BS~(n, m) and L_m)

def _module_pipeline(w: GroupWord, P: Presentation, table: CostTable) -> tuple:
    _check_table(P, table)
    entries = word_entries(w)
    mu = _entries_module(entries)
    h = P.module_generator()
    nu, r = laurent_divide(mu, h)
    if r:
        raise NotIdentityError(f"module image {mu} is not a multiple of {h} (remainder {r})")
    rw = _Rewriter(P, table, entries, "ordered-form")
    rw.sort_from(0)
    rw.stage = "relators"
    block_first = P.relator_entries()[0][0]
    for (j,), c in nu.sorted_terms():
        power = -1 if c > 0 else 1
        for _ in range(abs(c)):
            first = j + (P.relator_entries()[-1][0] if power < 0 else block_first)
            at = rw.insertion_point(first)
            rw.relator_apply(at, j, power)
            rw.stage = "reorder"
            rw.sort_from(at)
            rw.stage = "relators"
    if rw.entries:
        raise AssertionError("pipeline left a residue")  # cannot happen when h divides mu
    l = len(w)
    diag = [f"nu = {nu}", f"proof-formula bound {bs_proof_bound(l, nu.one_norm(), P)}"]
    cert = _finish(rw, w, diag)
    return cert.certified_area_bound, cert


def bs_proof_bound(l: int, nu_norm: int, P: Presentation) -> int:
    """(4l-3) l^2 + |nu| + (4l-3) ((n+m) |nu|)^2, the three stages of the cubic argument."""
    width = (P.n + P.m) if P.family == "BS" else P.m
    return ordered_form_cost_bound(l) + nu_norm + max(0, 4 * l - 3) * (width * nu_norm) ** 2


def bs_area_certificate(w: GroupWord, n: int, m: int, table: CostTable | None = None) -> tuple:
    """Certified relative-area bound for an identity word of BS~(n, m).

    Stages: sort the conjugates into ordered form, divide the module image by
    n t - m to get nu, insert one relator per unit of nu and sort again.  The
    bound is the sum of the recorded move costs.
    """
    return _module_pipeline(w, Presentation.baumslag_solitar(n, m), table or CostTable())


def lm_area_certificate(w: GroupWord, m: int, table: CostTable | None = None) -> tuple:
    """Same pipeline for L_m, where the submodule is generated by the constant m."""
    return _module_pipeline(w, Presentation.lamplighter(m), table or CostTable())


# ---------------------------------------------------------------------------
# the L_2 cancellation game

@dataclass
class CancellationState:
    """The sequence m_1..m_2k of conjugation exponents with original positions."""

    values: tuple
    iota: tuple = ()

    def __post_init__(self):
        self.values = tuple(self.values)
        if not self.iota:
            self.iota = tuple(range(len(self.values)))
        counts: dict = {}
        for v in self.values:
            counts[v] = counts.get(v, 0) + 1
        odd = sorted(v for v, c in counts.items() if c % 2)
        if odd:
            raise NotIdentityError(f"values {odd} occur an odd number of times")

    def sigma(self, i: int, j: int) -> int:
        return abs(self.iota[i] - self.iota[j]) % 2

    def path_weight(self) -> int:
        """sum |m_{i+1} - m_i|, the bound the game has to meet."""
        return sum(abs(b - a) for a, b in zip(self.values, self.values[1:]))

    def survivors(self) -> list:
        """Indices left after all free cancellations (equal values at odd distance)."""
        pools: dict = {}
        for i, v in enumerate(self.values):
            pools.setdefault(v, ([], []))[i % 2].append(i)
        out = []
        for even, odd in pools.values():
            k = min(len(even), len(odd))
            out += even[k:] + odd[k:]
        return sorted(out)

    def gamma0(self) -> list:
        """Weighted edges (i, j, |m_i - m_j|) between survivors a transport can join."""
        s = self.survivors()
        return [(i, j, abs(self.values[i] - self.values[j]))
                for a, i in enumerate(s) for j in s[a + 1:]
                if self.sigma(i, j) == 1 and self.values[i] != self.values[j]]

    def to_word(self) -> GroupWord:
        return entries_to_word([(-v, 1 if i % 2 == 0 else -1) for i, v in enumerate(self.values)])


def l2_sequence(w: GroupWord) -> CancellationState:
    """m_i = t-exponent of the prefix before the i-th a-letter."""
    p = 0
    values = []
    for kind, i, s in w.letters:
        if i != 1:
            raise UsageError("l2_sequence works with the letters a1 and t1 only")
        if kind == "t":
            p += s
        else:
            values.append(p)
    if p:
        raise NotIdentityError(f"t-exponent sum is {p}, not 0")
    return CancellationState(values)


class _Game:
    """Parity-class bookkeeping on top of a rewriter for L_2."""

    def __init__(self, rw: _Rewriter, base_sign: int):
        self.rw = rw
        self.base = base_sign
        self.ids = list(range(len(rw.entries)))
        self.pool: dict = {}
        for pos, (e, _) in enumerate(rw.entries):
            self.pool.setdefault((e, pos % 2), set()).add(pos)
        self.cls = {i: i % 2 for i in self.ids}
        self.next_id = len(self.ids)

    def expected(self, c):
        return self.base if c == 0 else -self.base

    def index(self, ident):
        return self.ids.index(ident)

    # primitive wrappers keep ids aligned with entries
    def free_reduce(self, i):
        for ident in self.ids[i:i + 2]:
            e = self.rw.entries[self.ids.index(ident)][0]
            self.pool[(e, self.cls[ident])].discard(ident)
        self.rw.free_reduce(i)
        del self.ids[i:i + 2]

    def pair_swap(self, src, dst):
        self.rw.pair_swap(src, dst)
        block = self.ids[src:src + 2]
        del self.ids[src:src + 2]
        self.ids[dst:dst] = block

    def bring_together(self, a, b):
        """Make the entries with ids a, b adjacent; returns the left index."""
        i, j = sorted((self.index(a), self.index(b)))
        if (j - i) % 2 == 0:
            raise AssertionError("entries in the same parity class cannot be joined")
        if j == i + 1:
            return i
        n = len(self.ids)
        if j + 1 < n:
            self.pair_swap(j, i + 1)
            return i
        self.pair_swap(j - 1, i)
        return i + 1

    def cancel(self, a, b):
        self.free_reduce(self.bring_together(a, b))

    def flip_if_needed(self, ident):
        i = self.index(ident)
        e, s = self.rw.entries[i]
        if s == self.expected(self.cls[ident]):
            return
        self.rw.flip(i)

    def transport_pair(self, a, b):
        i = self.bring_together(a, b)
        self.rw.transport(i)
        self.ids[i], self.ids[i + 1] = self.ids[i + 1], self.ids[i]
        for ident in (self.ids[i], self.ids[i + 1]):
            e = self.rw.entries[self.index(ident)][0]
            old = self.cls[ident]
            self.pool[(e, old)].discard(ident)
            self.cls[ident] = 1 - old
            self.pool.setdefault((e, 1 - old), set()).add(ident)
        for ident in (a, b):
            self.flip_if_needed(ident)

    def free_phase(self, values=None):
        keys = sorted({e for e, _ in self.pool} if values is None else set(values))
        for e in keys:
            A = self.pool.get((e, 0), set())
            B = self.pool.get((e, 1), set())
            while A and B:
                self.cancel(min(A, key=self.index), min(B, key=self.index))

    def units(self, c) -> list:
        out = []
        for (e, cc), ids in self.pool.items():
            if cc == c:
                out += [e] * (len(ids) // 2)
        return sorted(out)

    def transport_phase(self):
        for v, u in zip(self.units(0), self.units(1)):
            a = min(self.pool[(v, 0)], key=self.index)
            b = min(self.pool[(u, 1)], key=self.index)
            self.transport_pair(a, b)
            self.free_phase((v, u))


def _play(entries, table: CostTable, normalise: bool) -> tuple:
    P = Presentation.lamplighter(2)
    rw = _Rewriter(P, table, entries, "game")
    if not rw.entries:
        return rw, []
    diagnostics = []
    if normalise:
        plus = sum(1 for i, (_, s) in enumerate(rw.entries) if s == (1 if i % 2 == 0 else -1))
        base = 1 if 2 * plus >= len(rw.entries) else -1
        rw.stage = "normalise"
        for i in range(len(rw.entries)):
            want = base if i % 2 == 0 else -base
            if rw.entries[i][1] != want:
                rw.flip(i)
    else:
        base = rw.entries[0][1]
    rw.stage = "game"
    game = _Game(rw, base)
    game.free_phase()
    left0, left1 = game.units(0), game.units(1)
    if len(left0) != len(left1):
        diagnostics.append("free cancellation stalled with unbalanced parity classes")
    game.transport_phase()
    if rw.entries:
        diagnostics.append(f"{len(rw.entries)} entries left after the game")
    return rw, diagnostics


def l2_game_reduce(state: CancellationState, table: CostTable | None = None) -> tuple:
    """(game cost, certificate) emptying the sequence with moves (i)-(iii).

    Equal values at odd distance cancel for free (a block move plus a free
    reduction).  What is left is a set of pairs sitting in one parity class
    each; these are matched across the two classes in sorted order, which is
    an optimal transport on the line, and every match costs one transport
    |c - d| and clears two pairs.
    """
    table = table or CostTable()
    entries = [(-v, 1 if i % 2 == 0 else -1) for i, v in enumerate(state.values)]
    rw, diag = _play(entries, table, normalise=False)
    cert = _finish(rw, state.to_word(), diag)
    return cert.total_game_cost, cert


def l2_area_certificate(w: GroupWord, table: CostTable | None = None) -> tuple:
    """Certified bound for an identity word of L_2 via the cancellation game.

    Signs are first normalised to alternate (one a^2 relator per flipped
    letter), after which all cancellations are free reductions.
    """
    table = table or CostTable()
    l2_sequence(w)  # validates
    rw, diag = _play(word_entries(w), table, normalise=True)
    cert = _finish(rw, w, diag)
    return cert.certified_area_bound, cert


# ---------------------------------------------------------------------------
# checker

def _schema(mv, idx):
    if not isinstance(mv, dict):
        raise CertificateError("move is not an object", idx)
    for key in ("kind", "params", "game_cost", "area_cost"):
        if key not in mv:
            raise CertificateError(f"missing field {key!r}", idx)
    if mv["kind"] not in MOVE_KINDS:
        raise CertificateError(f"unknown move kind {mv['kind']!r}", idx)
    p = mv["params"]
    if not isinstance(p, dict):
        raise CertificateError("params is not an object", idx)
    need = {"freeReduce": ("index",), "transport": ("index",), "pairSwap": ("src", "dst"),
            "relatorApply": ("index", "shift", "power")}[mv["kind"]]
    for key in need:
        if not isinstance(p.get(key), int) or isinstance(p.get(key), bool):
            raise CertificateError(f"parameter {key!r} missing or not an integer", idx)
    for key in ("game_cost", "area_cost"):
        if not isinstance(mv[key], int) or isinstance(mv[key], bool):
            raise CertificateError(f"{key} is not an integer", idx)
    if "digest" not in p:
        raise CertificateError("move digest missing", idx)


@dataclass
class CheckReport:
    ok: bool
    reason: str = ""
    index: int | None = None


def check_certificate(w: GroupWord, cert, presentation: Presentation | None = None) -> CheckReport:
    """Replay a certificate; structural problems raise, semantic ones give ok=False."""
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    if presentation is not None and presentation != cert.presentation:
        return CheckReport(False, "presentation mismatch")
    if not cert.presentation.allows(cert.table):
        return CheckReport(False, "cost mode not available for this presentation")
    if not isinstance(cert.moves, list):
        raise CertificateError("moves is not a list")
    for idx, mv in enumerate(cert.moves):
        _schema(mv, idx)
    try:
        if parse_word(cert.word) != w:
            return CheckReport(False, "certificate is for a different word")
        entries = word_entries(w)
    except NotIdentityError as exc:
        return CheckReport(False, str(exc))
    R = cert.presentation.relator_entries()
    table = cert.table
    digest = _initial_digest(entries)
    game_total = area_total = 0
    for idx, mv in enumerate(cert.moves):
        kind, p = mv["kind"], mv["params"]
        n = len(entries)
        body = {k: v for k, v in p.items() if k != "digest"}
        if kind in ("freeReduce", "transport"):
            i = p["index"]
            if not 0 <= i < n - 1:
                return CheckReport(False, "index out of range", idx)
            x, y = entries[i], entries[i + 1]
            touched = [list(x), list(y)]
            if kind == "freeReduce":
                if x[0] != y[0] or x[1] != -y[1]:
                    return CheckReport(False, "entries do not cancel freely", idx)
                game, area = 0, 0
                del entries[i:i + 2]
            else:
                d = x[0] - y[0]
                game, area = abs(d), commutator_cost(d, table)
                entries[i], entries[i + 1] = y, x
        elif kind == "pairSwap":
            src, dst = p["src"], p["dst"]
            if not (0 <= src <= n - 2 and 0 <= dst <= n - 2) or (src - dst) % 2:
                return CheckReport(False, "block move out of range or parity-changing", idx)
            block = entries[src:src + 2]
            lo, hi = (dst, src) if dst < src else (src + 2, dst + 2)
            if sum(s for _, s in block) or sum(s for _, s in entries[lo:hi]):
                return CheckReport(False, "block move outside the derived subgroup", idx)
            touched = [list(x) for x in block]
            game, area = 0, 0
            del entries[src:src + 2]
            entries[dst:dst] = block
        else:
            i, shift, power = p["index"], p["shift"], p["power"]
            if not 0 <= i <= n or power not in (1, -1):
                return CheckReport(False, "bad relator insertion", idx)
            block = [(e + shift, s * power) for e, s in R]
            if power < 0:
                block.reverse()
            touched = [n]
            game, area = 0, table.relator_cost
            entries[i:i] = block
        if (mv["game_cost"], mv["area_cost"]) != (game, area):
            return CheckReport(False, "move cost disagrees with the cost table", idx)
        digest = _digest(digest, kind, body, touched)
        if p["digest"] != digest:
            return CheckReport(False, "digest mismatch (moves altered or reordered)", idx)
        game_total += game
        area_total += area
    if entries:
        return CheckReport(False, f"{len(entries)} entries remain after replay")
    if game_total != cert.total_game_cost or area_total != cert.certified_area_bound:
        return CheckReport(False, "totals differ from the sum of the moves")
    return CheckReport(True)


def verify_certificate(w: GroupWord, cert, presentation: Presentation | None = None) -> bool:
    """True iff the certificate replays w to the empty word with consistent costs.

    Raises CertificateError (carrying the offending move index) when the
    certificate does not follow the schema.
    """
    return check_certificate(w, cert, presentation).ok


# ---------------------------------------------------------------------------
# sampling identity words

def _conj(word: GroupWord, j: int) -> GroupWord:
    """t^j word t^-j, which moves every entry by -j."""
    tj = GroupWord.power("t", 1, j)
    return tj + word + tj.inverse()


def _pieces(P: Presentation, rng: random.Random, room: int, spread: int):
    R = P.relator()
    choices = []
    if len(R) <= room:
        j = rng.randint(-spread, spread)
        while len(R) + 2 * abs(j) > room:
            j = int(j / 2)
        piece = R if rng.random() < 0.5 else R.inverse()
        choices.append(_conj(piece, j))
    if room >= 4:
        i = rng.randint(-spread, spread)
        j = rng.randint(-spread, spread)
        while 4 * (abs(i) + abs(j)) + 4 > room:
            i, j = int(i / 2), int(j / 2)
        x = _conj(GroupWord.power("a", 1, rng.choice((1, -1))), i)
        y = _conj(GroupWord.power("a", 1, rng.choice((1, -1))), j)
        choices.append(x.inverse() + y.inverse() + x + y)
    if not choices and room >= 2:
        # nothing else fits: a conjugated cancelling pair closes the gap
        s = rng.choice((1, -1))
        choices.append(GroupWord([("a", 1, s), ("a", 1, -s)]))
    return choices


def sample_identity_word(P: Presentation, target_length: int, seed: int) -> GroupWord:
    """A random identity word of length within 20% of the target, deterministic in seed.

    Conjugated relators and commutators of conjugates of a are inserted at
    random positions until the length enters the band.
    """
    if target_length < 2:
        raise UsageError("target length must be at least 2")
    rng = random.Random(f"{P.name}:{target_length}:{seed}")
    lo, hi = int(0.8 * target_length + 0.999), int(1.2 * target_length)
    spread = max(1, target_length // 8)
    for _ in range(50):
        letters: list = []
        while len(letters) < lo:
            room = hi - len(letters)
            # mostly short conjugators, sometimes long ones
            options = _pieces(P, rng, room, rng.choice((1, 2, 3, spread)))
            if not options:
                break
            piece = rng.choice(options)
            at = rng.randint(0, len(letters))
            # keep insertions between whole letters; identity words are closed under this
            letters[at:at] = list(piece.letters)
        if len(letters) >= lo:
            break
    return GroupWord(letters)


__all__ = [
    "CostTable", "Presentation", "Certificate", "CancellationState", "CheckReport",
    "commutator_cost", "l2_sequence", "l2_game_reduce", "l2_area_certificate",
    "bs_area_certificate", "lm_area_certificate", "bs_proof_bound", "verify_certificate",
    "check_certificate", "sample_identity_word", "word_entries", "entries_to_word",
    "GENERAL", "DERIVED",
]
