"""Submodule membership, module areas and module Dehn profiles.

For a submodule S = <f_1, ..., f_l> of M = Z[T]^m the area of f in S is the
least sum of one-norms |alpha_1| + ... + |alpha_l| over expressions
f = alpha_1 f_1 + ... + alpha_l f_l.  The module Dehn function is the largest
area among members of norm at most n.

Exactness is only claimed where it is provable.  When every generator lives on
its own set of coordinates, each coordinate block is a principal submodule of a
module over an integral domain, so the coefficients are unique and are found by
exact division.  Everything else falls back to a bounded search whose answers
carry ``complete = False``.
"""

from __future__ import annotations

import logging
from math import comb
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import ParseError, ResourceLimitError, UsageError
from .free_module import ModuleElement, module_norm, parse_module_element
from .group_ring import RingElement, add_monomials, monomial_key

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CONSTANT = 2


@dataclass(frozen=True)
class SubmodulePresentation:
    """Generators f_1..f_l of a submodule of Z[T]^m (T = Z^k)."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise UsageError("a submodule presentation needs at least one generator")
        shape = (gens[0].k, gens[0].m)
        for g in gens:
            if (g.k, g.m) != shape:
                raise UsageError("generators have different (k, m)")
            if not g:
                raise UsageError("generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    @property
    def k(self) -> int:
        return self.generators[0].k

    @property
    def m(self) -> int:
        return self.generators[0].m

    @property
    def l(self) -> int:
        return len(self.generators)

    @classmethod
    def parse(cls, text: str, k: int | None = None, m: int | None = None) -> "SubmodulePresentation":
        """Generators separated by ``|``; coordinates inside one generator by ``;``.

        Without ``|`` and with ``m`` given, the semicolon-separated polynomials
        are grouped m at a time, so ``"t1-1; t1^2"`` with m = 1 is two generators.
        """
        if "|" in text:
            chunks = [c for c in text.split("|")]
        else:
            parts = [p for p in text.split(";")]
            m = m or len(parts)
            if len(parts) % m:
                raise ParseError(f"{len(parts)} polynomials do not split into generators of size m={m}")
            chunks = [";".join(parts[i:i + m]) for i in range(0, len(parts), m)]
        gens = [parse_module_element(c, k) for c in chunks]
        k = max([g.k for g in gens] + [k or 1])
        gens = [parse_module_element(c, k) for c in chunks]
        if m is not None and any(g.m != m for g in gens):
            raise ParseError(f"generators must have m={m} coordinates")
        return cls(tuple(gens))

    def combine(self, alphas: Sequence[RingElement]) -> ModuleElement:
        """alpha_1 f_1 + ... + alpha_l f_l."""
        if len(alphas) != self.l:
            raise UsageError(f"expected {self.l} coefficients, got {len(alphas)}")
        total = ModuleElement.zero(self.k, self.m)
        for a, g in zip(alphas, self.generators):
            total = total + a * g
        return total

    def __str__(self):
        return " | ".join(str(g) for g in self.generators)


@dataclass
class AreaResult:
    status: str  # "member" | "not-member" | "unknown"
    area: int | None = None
    alphas: tuple = ()
    complete: bool = False

    @property
    def is_member(self) -> bool | None:
        return {"member": True, "not-member": False}.get(self.status)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "area": self.area,
            "alphas": [str(a) for a in self.alphas],
            "complete": self.complete,
        }


# ---------------------------------------------------------------------------
# division

def laurent_divide(mu: RingElement, h: RingElement) -> tuple:
    """Divide mu by h in Z[t1^+-1, ..., tk^+-1]; returns (quotient, remainder).

    Both are first multiplied by monomials so that every exponent is
    non-negative and h is divisible by no t_i.  Division then proceeds by the
    shortlex leading term of h (a monomial order on ordinary polynomials):
    a term is reduced exactly when its monomial is a multiple of the leading
    monomial and its coefficient a multiple of the leading coefficient.  The
    result satisfies mu = h * quotient + remainder and no remainder term is
    reducible.  Because Z[t] is a factorial domain and the shifted h is coprime
    to every t_i, the remainder vanishes exactly when h divides mu.
    """
    if mu.k != h.k:
        raise UsageError(f"rank mismatch: {mu.k} vs {h.k}")
    if not h:
        raise UsageError("division by zero")
    k = mu.k
    if not mu:
        return RingElement.zero(k), RingElement.zero(k)
    mu_lo = mu.exponent_bounds()[0]
    h_lo = h.exponent_bounds()[0]
    p = dict(mu.shift([-e for e in mu_lo]).items())
    hp = h.shift([-e for e in h_lo])
    v, d, _ = hp.leading_term()
    h_terms = list(hp.items())
    q: dict = {}
    r: dict = {}
    while p:
        u = max(p, key=monomial_key)
        c = p[u]
        if all(a >= b for a, b in zip(u, v)) and c % d == 0:
            step = tuple(a - b for a, b in zip(u, v))
            cq = c // d
            q[step] = q.get(step, 0) + cq
            for w, e in h_terms:
                x = add_monomials(step, w)
                y = p.get(x, 0) - cq * e
                if y:
                    p[x] = y
                else:
                    p.pop(x, None)
        else:
            r[u] = c
            del p[u]
    quotient = RingElement(k, q).shift([a - b for a, b in zip(mu_lo, h_lo)])
    remainder = RingElement(k, r).shift(mu_lo)
    return quotient, remainder


def _principal_blocks(S: SubmodulePresentation):
    """Coordinate sets of the generators, or None if two generators overlap."""
    blocks = []
    used: set = set()
    for g in S.generators:
        coords = {j for j, c in enumerate(g.coords) if c}
        if coords & used:
            return None
        used |= coords
        blocks.append(coords)
    return blocks


def _solve_principal(f: ModuleElement, S: SubmodulePresentation, blocks) -> AreaResult:
    covered = set().union(*blocks)
    if any(f.coords[j] for j in range(S.m) if j not in covered):
        return AreaResult("not-member", complete=True)
    alphas = []
    for g, coords in zip(S.generators, blocks):
        j = min(coords)
        q, r = laurent_divide(f.coords[j], g.coords[j])
        if r:
            return AreaResult("not-member", complete=True)
        if any(q * g.coords[i] != f.coords[i] for i in coords):
            return AreaResult("not-member", complete=True)
        alphas.append(q)
    return AreaResult("member", sum(a.one_norm() for a in alphas), tuple(alphas), True)


def is_principal(S: SubmodulePresentation) -> bool:
    """True when coefficients of members are unique and found by division."""
    return _principal_blocks(S) is not None


# ---------------------------------------------------------------------------
# bounded search

def _window(f: ModuleElement, S: SubmodulePresentation, N: int, slack: int):
    max_deg = max(max((c.degree() for c in g.coords if c), default=0) for g in S.generators)
    supp = f.support()
    if supp:
        lo = [min(u[i] for u in supp) for i in range(S.k)]
        hi = [max(u[i] for u in supp) for i in range(S.k)]
    else:
        lo = hi = [0] * S.k
    pad = slack + N * max_deg
    return [x - pad for x in lo], [x + pad for x in hi]


def _search(f: ModuleElement, S: SubmodulePresentation, N: int, slack: int) -> Iterator[tuple]:
    """Yield coefficient tuples built from exactly N signed monomial atoms.

    Every solution must cancel the largest remaining term of the residual, so
    the search only branches over atoms u*f_i whose support contains it; this is
    exhaustive for expressions whose monomials lie inside the window.
    """
    lo, hi = _window(f, S, N, slack)
    gen_terms = [[{u: c for u, c in g.coords[j].items()} for j in range(S.m)] for g in S.generators]
    gen_norm = max(g.one_norm() for g in S.generators)
    residual = {(j, u): c for j, coord in enumerate(f.coords) for u, c in coord.items()}
    chosen: dict = {}

    def apply(i, u, sign):
        for j, terms in enumerate(gen_terms[i]):
            for v, c in terms.items():
                key = (j, add_monomials(u, v))
                val = residual.get(key, 0) - sign * c
                if val:
                    residual[key] = val
                else:
                    residual.pop(key, None)
        key = (i, u)
        val = chosen.get(key, 0) + sign
        if val:
            chosen[key] = val
        else:
            chosen.pop(key, None)

    def norm():
        return sum(abs(c) for c in residual.values())

    def dfs(left):
        if not residual:
            yield tuple(RingElement(S.k, {u: c for (i, u), c in chosen.items() if i == gi})
                        for gi in range(S.l))
            return
        if left == 0 or norm() > left * gen_norm:
            return
        j, x = max(residual, key=lambda key: (monomial_key(key[1]), -key[0]))
        for i in range(S.l):
            for v in gen_terms[i][j]:
                u = tuple(a - b for a, b in zip(x, v))
                if any(e < a or e > b for e, a, b in zip(u, lo, hi)):
                    continue
                for sign in (1, -1):
                    apply(i, u, sign)
                    yield from dfs(left - 1)
                    apply(i, u, -sign)

    yield from dfs(N)


def iter_expressions(f: ModuleElement, S: SubmodulePresentation, area: int,
                     window_slack: int = DEFAULT_DEGREE_CONSTANT) -> Iterator[tuple]:
    """Distinct expressions of f with sum |alpha_i| == area inside the search window."""
    seen = set()
    for alphas in _search(f, S, area, window_slack):
        if sum(a.one_norm() for a in alphas) != area or alphas in seen:
            continue
        seen.add(alphas)
        yield alphas


def area_search(f: ModuleElement, S: SubmodulePresentation, budget: int = 8,
                window_slack: int = DEFAULT_DEGREE_CONSTANT) -> AreaResult:
    """Minimal-area expression of f in S.

    Principal (coordinate-disjoint) presentations are solved exactly by
    division for any budget.  Otherwise an iterative-deepening search over
    total cost N = 0..budget is run; a hit is minimal inside the window but not
    provably so, and exhausting the budget yields ``unknown``.
    """
    if (f.k, f.m) != (S.k, S.m):
        raise UsageError("element and presentation have different (k, m)")
    if budget < 0:
        raise UsageError("budget must be non-negative")
    zero = tuple(RingElement.zero(S.k) for _ in range(S.l))
    if not f:
        return AreaResult("member", 0, zero, True)
    blocks = _principal_blocks(S)
    if blocks is not None:
        return _solve_principal(f, S, blocks)
    for N in range(1, budget + 1):
        for alphas in _search(f, S, N, window_slack):
            area = sum(a.one_norm() for a in alphas)
            return AreaResult("member", area, alphas, False)
    return AreaResult("unknown", None, (), False)


# ---------------------------------------------------------------------------
# module Dehn profiles

@dataclass
class DehnProfile:
    rows: list  # (n, value, exact)
    diagnostics: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)  # n -> alpha achieving the row

    def values(self) -> list:
        return [v for _, v, _ in self.rows]

    def to_csv(self) -> str:
        lines = ["n,delta_hat,exact"]
        lines += [f"{n},{v},{str(e).lower()}" for n, v, e in self.rows]
        return "\n".join(lines) + "\n"


def _strip_root(poly: list, root: int):
    """Divide the coefficient list (lowest first) by (t - root) if it vanishes there."""
    if not any(poly) or sum(c * root ** i for i, c in enumerate(poly)) != 0:
        return None
    # synthetic division from the top
    q = [0] * (len(poly) - 1)
    carry = 0
    for i in range(len(poly) - 1, 0, -1):
        carry = poly[i] + carry * root if i < len(poly) - 1 else poly[i]
        q[i - 1] = carry
    return q


def _cofactors(poly: list) -> list:
    """The quotients poly / (t - root)^r for root = +-1 and r >= 1.

    If f = alpha * poly then f = (t - root)^r * (alpha * q_r), and the
    coefficient of alpha * q_r at position j is a signed binomial combination of
    the coefficients of f beyond j.  That is what the pruning bound uses.
    """
    out = []
    for root in (1, -1):
        q = poly
        r = 0
        while True:
            q = _strip_root(q, root)
            if q is None:
                break
            r += 1
            out.append((r, q))
    return out


def _canonical(state: tuple) -> tuple:
    for x in state:
        if x:
            return state if x > 0 else tuple(-y for y in state)
    return state


def _principal_profile(g: ModuleElement, n_max: int, max_states: int, coeff_cap: int | None):
    """Dynamic program over coefficient sequences for one generator over Z[t^+-1].

    Members are f = alpha*g.  Up to translation, ||f|| equals
    sum_j |f_j| + 2*(span(alpha) + span(g)) and area(f) = |alpha| by uniqueness,
    so the profile is the largest |alpha| whose product fits the budget.  The
    DP walks the coefficients alpha_0, alpha_1, ... from the bottom, carrying
    the last deg(g) of them, and keeps per state the best gain at each cost.
    """
    lo = min(c.exponent_bounds()[0][0] for c in g.coords if c)
    g = g.shift((-lo,))
    d = max(c.exponent_bounds()[1][0] for c in g.coords if c)
    h = [tuple(c.coefficient((j,)) for c in g.coords) for j in range(d + 1)]
    h0 = h[0]
    r0 = next(i for i, x in enumerate(h0) if x)

    def out_cost(a, state):
        # |f_j|_1 for the next position when alpha_j = a and state = (alpha_{j-1}, ...)
        total = 0
        for r in range(len(h0)):
            v = h0[r] * a
            for i in range(1, d + 1):
                v += h[i][r] * state[i - 1]
            total += abs(v)
        return total

    def tail(state):
        if not d:
            return 0
        total = 0
        s = state
        for _ in range(d):
            total += out_cost(0, s) + 2
            s = (0,) + s[:-1]
        return total

    # per coordinate, the (multiplicity, cofactor) pairs for the roots +-1
    cof = [_cofactors([h[i][r] for i in range(d + 1)]) for r in range(len(h0))]
    cof = [c for c in cof if c]

    # P values at which the bound is sampled; on [P_i, P_i+1] the cost is at
    # least 2*P_i + (coefficient need at P_i+1), which keeps the bound admissible
    grid = [max(d, 1)]
    while 2 * grid[-1] <= n_max:
        grid.append(max(grid[-1] + 1, grid[-1] * 5 // 4))
    lb_cache: dict = {}

    def lower_bound(state):
        """Admissible bound on the cost still to pay after ``state``.

        With P further positions and f = (t - root)^r * q, the value of q at the
        current position is a combination of at most P later coefficients of f
        with weights bounded by binom(P + r - 2, r - 1), so their one-norm is
        at least |q_j| / binom(...).  Each position also costs 2.
        """
        if not cof:
            return 2 * d
        got = lb_cache.get(state)
        if got is not None:
            return got
        needs = []
        for pairs in cof:
            needs.append([(r, abs(sum(q[s] * state[s] for s in range(len(q))))) for r, q in pairs])

        def need(P):
            return sum(max(-(-v // comb(P + r - 2, r - 1)) for r, v in pairs) for pairs in needs)

        best = 2 * d + need(d)
        for a, b in zip(grid, grid[1:]):
            if 2 * a >= best:
                break
            best = min(best, 2 * a + need(b))
        best = max(best, 2 * d)
        if len(lb_cache) < 4 * max_states:
            lb_cache[state] = best
        return best

    def gain_better(bucket, st, g):
        prev = bucket.get(st)
        return prev is None or g > prev[0]

    def choices(state, budget):
        c = sum(h[i][r0] * state[i - 1] for i in range(1, d + 1))
        a_lo = -((budget + c) // abs(h0[r0])) - 1
        a_hi = (budget - c) // abs(h0[r0]) + 1
        if h0[r0] < 0:
            a_lo, a_hi = -a_hi, -a_lo
        for a in range(a_lo, a_hi + 1):
            if coeff_cap is not None and abs(a) > coeff_cap:
                continue
            cost = out_cost(a, state)
            if cost <= budget:
                yield a, cost

    best_final = [0] * (n_max + 1)
    arg_final: dict = {}
    # bucket entry: state -> (gain, parent node, chosen coefficient, orientation flip)
    buckets: list = [dict() for _ in range(n_max + 1)]
    seen: dict = {}
    parents: dict = {}
    zero_state = (0,) * d
    # alpha and -alpha are interchangeable, so the lowest coefficient is positive
    for a, cost in choices(zero_state, n_max):
        if a <= 0:
            continue
        st = ((a,) + zero_state)[:d]
        if gain_better(buckets[cost], st, a):
            buckets[cost][st] = (a, None, a, 1)
    truncated = False
    expanded = 0
    for cost in range(n_max + 1):
        for state, (gain, parent, a0, flip0) in buckets[cost].items():
            if seen.get(state, -1) >= gain:
                continue
            seen[state] = gain
            node = (cost, state)
            parents[node] = (parent, a0, flip0)
            expanded += 1
            if expanded > max_states:
                truncated = True
                break
            fin = cost + tail(state)
            if fin <= n_max and gain > best_final[fin]:
                best_final[fin] = gain
                arg_final[fin] = node
            budget = n_max - cost - 2
            if budget < 0:
                continue
            for a, c in choices(state, budget):
                nc = cost + c + 2
                if d:
                    full = (a,) + state[:-1]
                    nst = _canonical(full)
                    flip = 1 if nst == full else -1
                else:
                    nst, flip = (), 1
                ng = gain + abs(a)
                if nc + lower_bound(nst) > n_max:
                    continue
                if gain_better(buckets[nc], nst, ng):
                    buckets[nc][nst] = (ng, node, a, flip)
        buckets[cost] = {}
        if truncated:
            break

    def rebuild(node):
        seq, sign = [], 1
        while node is not None:
            parent, a, flip = parents[node]
            sign *= flip
            seq.append(sign * a)
            node = parent
        return tuple(reversed(seq))

    arg_final = {n: rebuild(node) for n, node in arg_final.items()}
    return best_final, arg_final, truncated, expanded, lo


def module_dehn_profile(S: SubmodulePresentation, n_max: int, max_states: int = 2_000_000,
                        coeff_cap: int | None = None) -> DehnProfile:
    """Rows (n, delta_hat(n), exact) for n = 1..n_max.

    Single-generator presentations over Z[t^+-1] use an exhaustive dynamic
    program, so the rows are exact unless the state guard or a coefficient cap
    cut it short (then they are certified lower bounds, each realised by an
    explicit member).  Other presentations get window-minimal areas from
    ``area_search`` over small expressions, reported as not exact.
    """
    if n_max < 1:
        raise UsageError("n_max must be at least 1")
    if S.k == 1 and S.l == 1:
        best, args, truncated, expanded, lo = _principal_profile(S.generators[0], n_max, max_states, coeff_cap)
        exact = not truncated and coeff_cap is None
        diagnostics = [f"dp states expanded: {expanded}"]
        if truncated:
            diagnostics.append(f"state guard {max_states} reached; rows are lower bounds")
        if coeff_cap is not None:
            diagnostics.append(f"coefficients capped at {coeff_cap}; rows are lower bounds")
        rows, witnesses = [], {}
        run, arg = 0, None
        for n in range(1, n_max + 1):
            if best[n] > run:
                run, arg = best[n], args.get(n)
            rows.append((n, run, exact))
            if arg is not None:
                witnesses[n] = RingElement(1, {(j - lo,): c for j, c in enumerate(arg)})
        return DehnProfile(rows, diagnostics, witnesses)
    return _window_profile(S, n_max)


def _window_profile(S: SubmodulePresentation, n_max: int, radius: int = 2, max_coeff: int = 2,
                    budget: int = 6) -> DehnProfile:
    """Lower-bound style profile from expressions with small coefficients."""
    import itertools

    monos = list(itertools.product(range(-radius, radius + 1), repeat=S.k))
    best = [0] * (n_max + 1)
    count = 0
    for gi in range(S.l):
        for u in monos:
            for c in range(1, max_coeff + 1):
                for v in monos:
                    for gj in range(S.l):
                        for e in (-1, 0, 1):
                            alphas = [RingElement.zero(S.k) for _ in range(S.l)]
                            alphas[gi] = alphas[gi] + RingElement.monomial(u, c)
                            alphas[gj] = alphas[gj] + RingElement.monomial(v, e)
                            f = S.combine(alphas)
                            if not f:
                                continue
                            n = module_norm(f)
                            if n > n_max:
                                continue
                            res = area_search(f, S, budget)
                            count += 1
                            if res.status == "member" and res.area > best[n]:
                                best[n] = res.area
    rows = []
    run = 0
    for n in range(1, n_max + 1):
        run = max(run, best[n])
        rows.append((n, run, False))
    return DehnProfile(rows, [f"window enumeration over {count} expressions; areas are window-minimal"])


def membership(f: ModuleElement, S: SubmodulePresentation, budget: int = 8) -> bool | None:
    """True/False when decided, None when the search was inconclusive."""
    return area_search(f, S, budget).is_member


__all__ = [
    "SubmodulePresentation", "AreaResult", "DehnProfile", "laurent_divide", "area_search",
    "iter_expressions", "module_dehn_profile", "membership", "is_principal", "ResourceLimitError",
]
