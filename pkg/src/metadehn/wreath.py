"""The wreath product W = Z^m wr Z^k and subgroups H = <X, t_1..t_k>.

An element is a pair (base, tpart) with base in Z[T]^m and tpart in Z^k.  The
product follows the word convention of ``word_to_module``:

    (b1, s1) * (b2, s2) = (b1 + t^{-s1} b2, s1 + s2)

so the lamp for the monomial t^e sits at lattice position -e.  A shortest word
therefore costs one letter per unit of coefficient plus a shortest walk from
the origin through the lamp positions ending at tpart.  Negating everything,
that is a walk through supp(base) ending at -tpart, which is what we compute.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import MembershipError, ResourceLimitError, UsageError
from .free_module import GroupWord, ModuleElement, format_module_element, format_word, word_to_module
from .group_ring import RingElement
from .membership import SubmodulePresentation, area_search, iter_expressions
from .walks import DEFAULT_EXACT_LIMIT, walk_length


class WreathElement:
    __slots__ = ("base", "tpart", "_hash")

    def __init__(self, base: ModuleElement, tpart: Sequence[int] | None = None):
        tpart = tuple(tpart) if tpart is not None else (0,) * base.k
        if len(tpart) != base.k:
            raise UsageError(f"tpart {tpart} does not have rank {base.k}")
        self.base = base
        self.tpart = tpart
        self._hash = None

    @property
    def k(self):
        return self.base.k

    @property
    def m(self):
        return self.base.m

    @classmethod
    def identity(cls, k: int = 1, m: int = 1) -> "WreathElement":
        return cls(ModuleElement.zero(k, m))

    @classmethod
    def lamp(cls, k: int, m: int, i: int = 1) -> "WreathElement":
        """The generator a_i."""
        return cls(ModuleElement.basis(k, m, i))

    @classmethod
    def shift_generator(cls, k: int, m: int, j: int = 1) -> "WreathElement":
        """The generator t_j."""
        t = [0] * k
        t[j - 1] = 1
        return cls(ModuleElement.zero(k, m), t)

    @classmethod
    def from_word(cls, w: GroupWord, k: int | None = None, m: int | None = None) -> "WreathElement":
        return cls(*word_to_module(w, k, m))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_multiply(self, other)

    def inverse(self) -> "WreathElement":
        return wreath_inverse(self)

    def __pow__(self, n: int) -> "WreathElement":
        base = self if n >= 0 else self.inverse()
        out = WreathElement.identity(self.k, self.m)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.base and not any(self.tpart)

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.tpart == other.tpart and self.base == other.base

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.tpart))
        return self._hash

    def __repr__(self):
        return f"WreathElement({format_module_element(self.base)!r}, {self.tpart})"


def wreath_multiply(g: WreathElement, h: WreathElement) -> WreathElement:
    if (g.k, g.m) != (h.k, h.m):
        raise UsageError("wreath elements of different shapes")
    moved = h.base.shift(tuple(-s for s in g.tpart))
    return WreathElement(g.base + moved, tuple(a + b for a, b in zip(g.tpart, h.tpart)))


def wreath_inverse(g: WreathElement) -> WreathElement:
    return WreathElement(-g.base.shift(g.tpart), tuple(-s for s in g.tpart))


def evaluate(w: GroupWord, k: int = 1, m: int = 1) -> WreathElement:
    return WreathElement.from_word(w, k, m)


class Length(NamedTuple):
    length: int
    exact: bool


def wreath_length_info(g: WreathElement, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Length:
    end = tuple(-s for s in g.tpart)
    walk = walk_length(g.base.support(), end, g.k, exact_limit)
    return Length(g.base.one_norm() + walk.length, walk.exact)


def wreath_length(g: WreathElement, exact_limit: int = DEFAULT_EXACT_LIMIT) -> int:
    """Word length over {a_i, t_j}: coefficient mass plus the lamplighter walk."""
    return wreath_length_info(g, exact_limit).length


# ---------------------------------------------------------------------------
# subgroups H = <X, t_1, ..., t_k>

@dataclass(frozen=True)
class SubgroupSpec:
    S: SubmodulePresentation

    @classmethod
    def parse(cls, text: str, k: int | None = None, m: int | None = None) -> "SubgroupSpec":
        return cls(SubmodulePresentation.parse(text, k, m))

    @classmethod
    def whole(cls, k: int = 1, m: int = 1) -> "SubgroupSpec":
        return cls(SubmodulePresentation(tuple(ModuleElement.basis(k, m, i) for i in range(1, m + 1))))

    @property
    def k(self):
        return self.S.k

    @property
    def m(self):
        return self.S.m

    def generators(self) -> list:
        """The generators X followed by t_1..t_k, as wreath elements."""
        gens = [WreathElement(f) for f in self.S.generators]
        gens += [WreathElement.shift_generator(self.k, self.m, j) for j in range(1, self.k + 1)]
        return gens


def subgroup_membership(g: WreathElement, H: SubgroupSpec, budget: int = 8) -> bool | None:
    """Membership in H reduces to membership of the base in S since every t_j is in H."""
    return area_search(g.base, H.S, budget).is_member


@dataclass
class SubgroupLength:
    length: int | None
    alphas: tuple = ()
    exact: bool = False


def _expression_cost(alphas, tpart, k, exact_limit) -> tuple:
    supp = set()
    for a in alphas:
        supp |= a.support()
    walk = walk_length(supp, tuple(-s for s in tpart), k, exact_limit)
    return sum(a.one_norm() for a in alphas) + walk.length, walk.exact


def subgroup_length_info(g: WreathElement, H: SubgroupSpec, budget: int = 8,
                         exact_limit: int = DEFAULT_EXACT_LIMIT) -> SubgroupLength:
    """min over base = sum alpha_i f_i of sum |alpha_i| + walk(supp alpha, end tpart).

    Principal presentations have a unique expression, so the value is exact.
    Otherwise expressions are enumerated by increasing area up to ``budget``;
    the answer is only provisional since the enumeration is windowed.
    """
    if (g.k, g.m) != (H.k, H.m):
        raise UsageError("element and subgroup have different (k, m)")
    res = area_search(g.base, H.S, budget)
    if res.status == "not-member":
        raise MembershipError("element is not in the subgroup")
    if res.status == "unknown":
        return SubgroupLength(None)
    if res.complete:
        cost, exact = _expression_cost(res.alphas, g.tpart, g.k, exact_limit)
        return SubgroupLength(cost, res.alphas, exact)
    best, best_alphas = _expression_cost(res.alphas, g.tpart, g.k, exact_limit)[0], res.alphas
    for N in range(res.area, budget + 1):
        if N >= best:
            break
        for alphas in iter_expressions(g.base, H.S, N):
            cost = _expression_cost(alphas, g.tpart, g.k, exact_limit)[0]
            if cost < best:
                best, best_alphas = cost, alphas
    return SubgroupLength(best, best_alphas, False)


def subgroup_length(g: WreathElement, H: SubgroupSpec, budget: int = 8) -> int | None:
    """Word length of g over X and the t_j; None when the search was inconclusive."""
    return subgroup_length_info(g, H, budget).length


# ---------------------------------------------------------------------------
# breadth-first oracle

def _key(g: WreathElement) -> tuple:
    return (g.tpart, tuple(sorted((i, u, c) for i, coord in enumerate(g.base.coords) for u, c in coord.items())))


def _fast_mul(key, gen):
    """Right-multiply a packed element by a packed generator."""
    tpart, items = key
    gt, gitems = gen
    acc = {(i, u): c for i, u, c in items}
    for i, u, c in gitems:
        v = tuple(a - s for a, s in zip(u, tpart))
        acc[(i, v)] = acc.get((i, v), 0) + c
    packed = tuple(sorted((i, u, c) for (i, u), c in acc.items() if c))
    return (tuple(a + b for a, b in zip(tpart, gt)), packed)


def _unpack(key, k, m) -> WreathElement:
    tpart, items = key
    coords = [dict() for _ in range(m)]
    for i, u, c in items:
        coords[i][u] = c
    return WreathElement(ModuleElement([RingElement(k, d) for d in coords]), tpart)


class BallEntry(NamedTuple):
    distance: int
    parent: object
    generator: int


def bfs_ball(generators: Sequence[WreathElement], radius: int, max_nodes: int = 2_000_000,
             symmetric: bool = True) -> tuple:
    """Packed Cayley ball: (table key -> BallEntry, list of packed generators)."""
    if not generators:
        raise UsageError("need at least one generator")
    k, m = generators[0].k, generators[0].m
    gens = list(generators)
    if symmetric:
        gens += [g.inverse() for g in generators]
    packed = [_key(g) for g in gens]
    start = _key(WreathElement.identity(k, m))
    table = {start: BallEntry(0, None, -1)}
    frontier = deque([start])
    while frontier:
        x = frontier.popleft()
        dist = table[x].distance
        if dist == radius:
            continue
        for gi, g in enumerate(packed):
            y = _fast_mul(x, g)
            if y not in table:
                table[y] = BallEntry(dist + 1, x, gi)
                frontier.append(y)
                if len(table) > max_nodes:
                    raise ResourceLimitError(
                        f"ball of radius {radius} exceeds {max_nodes} elements (reached distance {dist + 1})")
    return table, packed


def bfs_oracle(generators: Sequence[WreathElement], radius: int, max_nodes: int = 2_000_000) -> dict:
    """Exact Cayley-graph distances from the identity for every element within ``radius``."""
    table, _ = bfs_ball(generators, radius, max_nodes)
    k, m = generators[0].k, generators[0].m
    return {_unpack(key, k, m): e.distance for key, e in table.items()}


def standard_generators(k: int = 1, m: int = 1) -> list:
    return ([WreathElement.lamp(k, m, i) for i in range(1, m + 1)]
            + [WreathElement.shift_generator(k, m, j) for j in range(1, k + 1)])


def _path_word(table, key, names) -> GroupWord:
    letters = []
    while table[key].parent is not None:
        e = table[key]
        letters.append(names[e.generator])
        key = e.parent
    out = []
    for letter in reversed(letters):
        out.extend(letter)
    return GroupWord(out)


# ---------------------------------------------------------------------------
# distortion

@dataclass
class DistortionProfile:
    rows: list  # (r, sup_H_length, witness_word, exact)
    diagnostics: list = field(default_factory=list)
    truncated: bool = False

    def values(self) -> list:
        return [v for _, v, _, _ in self.rows]

    def to_csv(self) -> str:
        lines = ["r,sup_H_length,witness_word,exact"]
        for r, v, w, e in self.rows:
            lines.append(f"{r},{'' if v is None else v},{w},{str(e).lower()}")
        return "\n".join(lines) + "\n"


def distortion_profile(H: SubgroupSpec, r_max: int, mode: str = "exact", family: int = 2,
                       max_nodes: int = 2_000_000, budget: int = 8) -> DistortionProfile:
    """sup of |g|_H over g in H with |g|_W <= r, for r = 1..r_max.

    ``exact`` enumerates the W-ball by breadth-first search, which covers every
    element of W-length at most r.  ``witness`` evaluates the witness family
    with parameter ``family`` (the l of the family) and reports lower bounds.
    """
    if r_max < 1:
        raise UsageError("r_max must be at least 1")
    if mode == "witness":
        return _witness_profile(H, r_max, family)
    if mode != "exact":
        raise UsageError(f"unknown distortion mode {mode!r}")
    k, m = H.k, H.m
    gens = standard_generators(k, m)
    names = [[("a", i, 1)] for i in range(1, m + 1)] + [[("t", j, 1)] for j in range(1, k + 1)]
    names += [[(kind, i, -s) for kind, i, s in n] for n in names]
    diagnostics = []
    reached = r_max
    table = None
    for radius in range(r_max, 0, -1):
        try:
            table, _ = bfs_ball(gens, radius, max_nodes)
            reached = radius
            break
        except ResourceLimitError as exc:
            diagnostics.append(str(exc))
    truncated = reached < r_max
    best = [0] * (reached + 1)
    arg: list = [None] * (reached + 1)
    exact_all = True
    if table is not None:
        for key, e in table.items():
            g = _unpack(key, k, m)
            if not subgroup_membership(g, H, budget):
                continue
            info = subgroup_length_info(g, H, budget)
            if info.length is None:
                exact_all = False
                continue
            exact_all = exact_all and info.exact
            if info.length > best[e.distance]:
                best[e.distance] = info.length
                arg[e.distance] = key
    rows = []
    run, run_key = 0, None
    for r in range(1, r_max + 1):
        if r <= reached:
            if best[r] > run:
                run, run_key = best[r], arg[r]
            word = format_word(_path_word(table, run_key, names)) if run_key is not None else ""
            rows.append((r, run, word, exact_all))
        else:
            rows.append((r, None, "", False))
    if truncated:
        diagnostics.append(f"rows beyond r={reached} were not computed")
    return DistortionProfile(rows, diagnostics, truncated)


def _witness_profile(H: SubgroupSpec, r_max: int, l: int) -> DistortionProfile:
    """Lower bounds from the witness family, keyed by the witnesses' W-length."""
    best: dict = {}
    n = 1
    while True:
        wit = witness_family(l, n)
        r = wit.w_length
        if r > r_max:
            break
        if (H.k, H.m) != (1, 1) or subgroup_membership(wit.g, H) is not True:
            raise UsageError("witness mode needs H to contain the witness family")
        h = subgroup_length(wit.g, H)
        if h is not None and h > best.get(r, (0, ""))[0]:
            best[r] = (h, wit.word())
        n += 1
    rows = []
    run, word = 0, ""
    for r in range(1, r_max + 1):
        if r in best and best[r][0] > run:
            run, word = best[r]
        rows.append((r, run, word, False))
    return DistortionProfile(rows, [f"witness family l={l}; rows are lower bounds"])


# ---------------------------------------------------------------------------
# witness families

@dataclass
class Witness:
    l: int
    n: int
    generator: ModuleElement
    g: WreathElement
    alpha: RingElement

    @property
    def w_length(self) -> int:
        return wreath_length(self.g)

    @property
    def h_length(self) -> int:
        return self.alpha.one_norm() + walk_length(self.alpha.support(), (0,), 1).length

    def subgroup(self) -> SubgroupSpec:
        return SubgroupSpec(SubmodulePresentation((self.generator,)))

    def word(self) -> str:
        from .free_module import ordered_form

        return format_word(ordered_form(self.g.base).word)

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "g": format_module_element(self.g.base),
            "alpha": str(self.alpha),
            "w_length": self.w_length,
            "h_length": self.h_length,
        }


def witness_family(l: int, n: int) -> Witness:
    """g_n = (n (t^n - 1)^{l-1} a, 0) in H_l = <(t-1)^{l-1} a, t> inside Z wr Z.

    The expression is alpha = n * (1 + t + ... + t^{n-1})^{l-1}, of norm n^l,
    while the W-length of g_n is linear in n.
    """
    if l < 1 or n < 1:
        raise UsageError("witness family needs l >= 1 and n >= 1")
    t = RingElement.variable(1, 1)
    gen = (t - 1) ** (l - 1)
    sigma = RingElement(1, {(j,): 1 for j in range(n)})
    alpha = (sigma ** (l - 1)) * n
    base = (t ** n - 1) ** (l - 1) * n
    return Witness(l, n, ModuleElement([gen]), WreathElement(ModuleElement([base])), alpha)


__all__ = [
    "WreathElement", "SubgroupSpec", "SubgroupLength", "DistortionProfile", "Witness", "Length",
    "wreath_multiply", "wreath_inverse", "evaluate", "wreath_length", "wreath_length_info",
    "subgroup_membership", "subgroup_length", "subgroup_length_info", "distortion_profile",
    "witness_family", "bfs_oracle", "bfs_ball", "standard_generators",
]
