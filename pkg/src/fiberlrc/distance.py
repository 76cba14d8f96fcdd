"""Minimum-distance certification.

A nonzero codeword of weight w shows d <= w; the construction bound gives
d >= d_lower.  When the two meet, the distance is exact.  Codewords come
from product functions

    f = prod_{b in F0} (y0 - b) * prod_i prod_{g in F_i} (y_i - g)

whose zero sets are controlled by the choice of the value sets F_i, from
exhaustive enumeration for tiny codes, or from a randomized low-weight
search.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .code_builder import LrcCode
from .curves import FiberProductSpec, fiber_sizes, split_locus
from .errors import (
    FieldTooSmall,
    InvalidWitness,
    LOutOfRange,
    NoValidMu,
    PoolTooSmall,
    TooLarge,
)
from .gf import FieldSpec, fpoly_gcd
from .linalg import row_reduce

BRUTEFORCE_CAP = 10**8
SEARCH_BUDGET = 10**4


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class WitnessSpec:
    F0: tuple[int, ...]
    F: tuple[tuple[int, ...], ...]
    provenance: str = "constructed"
    certified_weight: int | None = None

    @property
    def l(self) -> int:
        return len(self.F0)

    def used(self, map_degrees: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """The d_{h_i} - 2 values of each F_i that enter the product."""
        return tuple(tuple(Fi[: d - 2]) for Fi, d in zip(self.F, map_degrees))

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "F0": list(self.F0),
            "F": [list(Fi) for Fi in self.F],
            "provenance": self.provenance,
            "certified_weight": self.certified_weight,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WitnessSpec":
        return cls(
            tuple(int(v) for v in obj["F0"]),
            tuple(tuple(int(v) for v in Fi) for Fi in obj["F"]),
            obj.get("provenance", "user-supplied"),
            obj.get("certified_weight"),
        )


def expected_weight(code: LrcCode, l: int | None = None) -> int:
    """n - l*d_g - sum (d_{h_i}-2) d_{y_i}: the weight of a valid witness."""
    p = code.params
    l = p.l if l is None else l
    return p.n - l * p.d_g - sum((r - 1) * dy for r, dy in zip(p.localities, p.y_degrees))


@dataclass
class WitnessCheck:
    conditions: dict[str, tuple[bool, str]] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.conditions.values())

    def failures(self) -> list[str]:
        return [f"{k}: {msg}" for k, (ok, msg) in self.conditions.items() if not ok]


def _relation_cache(spec: FiberProductSpec):
    cache: dict[tuple[int, int], list[int]] = {}

    def rel(i: int, gamma: int) -> list[int]:
        key = (i, gamma)
        if key not in cache:
            cache[key] = spec.factors[i].relation_poly(spec.field, gamma)
        return cache[key]

    return rel


def _compatible(spec, rel, i: int, gi: int, j: int, gj: int) -> bool:
    """No point over the algebraic closure has y_i = gi and y_j = gj."""
    return len(fpoly_gcd(spec.field, rel(i, gi), rel(j, gj))) <= 1


def check_witness(code: LrcCode, w: WitnessSpec, l: int | None = None) -> WitnessCheck:
    """Re-verify the five conditions that make the product function extremal.

    1. F0 lies in the split locus and every F_i value occurs as y_i on B;
    2. |F0| = l and |F_i| >= d_{h_i} - 2 with distinct entries;
    3. no point (over the algebraic closure) has y_i in F_i and y_j in F_j;
    4. no point has y0 in F0 and y_i in F_i;
    5. every used F_i value has exactly d_{y_i} points on B above it.
    """
    es = code.eval_set
    spec = es.spec
    field = spec.field
    dh = spec.map_degrees
    dy = code.params.y_degrees
    l = code.params.l if l is None else l
    out = WitnessCheck()
    used = w.used(dh)

    S = set(es.S.tolist())
    bad0 = [b for b in w.F0 if b not in S]
    badi = []
    for i, Fi in enumerate(w.F):
        col = set(es.points[:, i + 1].tolist())
        badi += [(i + 1, g) for g in Fi if g not in col]
    out.conditions["membership"] = (
        not bad0 and not badi,
        f"F0 values outside S: {bad0}; F_i values outside y_i(B): {badi}",
    )

    sizes_ok = len(w.F0) <= l and len(set(w.F0)) == len(w.F0) and len(w.F) == spec.t
    sizes_ok = sizes_ok and all(
        len(Fi) >= d - 2 and len(set(Fi)) == len(Fi) for Fi, d in zip(w.F, dh)
    )
    out.conditions["sizes"] = (
        sizes_ok and len(w.F0) == l,
        f"|F0|={len(w.F0)} (l={l}), |F_i|={[len(Fi) for Fi in w.F]}, need >= {[d - 2 for d in dh]}",
    )

    rel = _relation_cache(spec)
    clashes = []
    for i, j in itertools.combinations(range(spec.t), 2):
        for gi in used[i]:
            for gj in used[j]:
                if not _compatible(spec, rel, i, gi, j, gj):
                    clashes.append((i + 1, gi, j + 1, gj))
    out.conditions["cross_exclusion"] = (not clashes, f"clashing values: {clashes[:5]}")

    base_hits = []
    F0 = np.asarray(w.F0, dtype=np.int64)
    if len(F0):
        for i, f in enumerate(spec.factors):
            for g in used[i]:
                hit = f.holds(field, F0, np.full_like(F0, g))
                base_hits += [(int(b), i + 1, g) for b in F0[hit]]
    out.conditions["base_exclusion"] = (not base_hits, f"F0 values meeting F_i: {base_hits[:5]}")

    short = []
    for i, vals in enumerate(used):
        if not vals:
            continue
        counts = np.bincount(es.points[:, i + 1], minlength=field.order)
        short += [(i + 1, g, int(counts[g])) for g in vals if counts[g] != dy[i]]
    out.conditions["unramified"] = (
        not short,
        f"values without d_y points on B (axis, value, count): {short[:5]}",
    )
    return out


def _poly_from_roots(field: FieldSpec, roots: Sequence[int], length: int) -> np.ndarray:
    poly = [1]
    for r in roots:
        nr = field.neg(r)
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] = field.add(nxt[k + 1], c)
            nxt[k] = field.add(nxt[k], field.mul(c, nr))
        poly = nxt
    out = np.zeros(length, dtype=np.int64)
    out[: len(poly)] = poly
    return out


def witness_message(code: LrcCode, w: WitnessSpec) -> np.ndarray:
    """Coefficients of the product function in the monomial basis of V."""
    field = code.field
    dh = code.eval_set.spec.map_degrees
    if w.l > code.params.l:
        raise InvalidWitness(f"|F0|={w.l} exceeds l={code.params.l}")
    factors = [_poly_from_roots(field, w.F0, code.params.l + 1)]
    factors += [_poly_from_roots(field, g, d - 1) for g, d in zip(w.used(dh), dh)]
    msg = np.ones(1, dtype=np.int64)
    for c in factors:
        msg = field.vmul(msg[:, None], c[None, :]).reshape(-1)
    return msg


def witness_codeword(code: LrcCode, w: WitnessSpec) -> np.ndarray:
    """The product function evaluated on B."""
    field = code.field
    pts = code.eval_set.points
    dh = code.eval_set.spec.map_degrees
    word = np.ones(len(pts), dtype=np.int64)
    for b in w.F0:
        word = field.vmul(word, field.vsub(pts[:, 0], b))
    for i, vals in enumerate(w.used(dh)):
        for g in vals:
            word = field.vmul(word, field.vsub(pts[:, i + 1], g))
    return word


def witness_weight(
    code: LrcCode, w: WitnessSpec, strict: bool = True
) -> tuple[np.ndarray, int]:
    """Codeword of the witness and its Hamming weight.

    With ``strict`` the five conditions must hold (InvalidWitness names the
    failures); otherwise the codeword is still a legitimate upper bound.
    """
    if strict:
        chk = check_witness(code, w, l=w.l)
        if not chk.ok:
            raise InvalidWitness("; ".join(chk.failures()))
    word = witness_codeword(code, w)
    return word, int(np.count_nonzero(word))


# ---------------------------------------------------------------------------
# family constructors

def _subfield_nonzero(field: FieldSpec) -> list[int]:
    sub = np.flatnonzero(field.map_values(("pow", field.q)) == field.elements())
    return [int(a) for a in sub if a != 0]


def witness_hermitian_rational(spec: FiberProductSpec, l: int) -> WitnessSpec:
    """Witness for y^q + y = x^(q+1) viewed as a cover of the x-line."""
    field = spec.field
    q = field.q
    if not 0 <= l <= q * q - q - 2:
        raise LOutOfRange(f"need 0 <= l <= {q * q - q - 2}, got {l}")
    gammas = field.preimage_index("rel_trace")(1).tolist()
    norms = field.map_values("rel_norm")
    pool = [b for b in range(1, field.order) if norms[b] != 1]
    if len(pool) < l:
        raise PoolTooSmall(f"only {len(pool)} admissible base values")
    return WitnessSpec(
        tuple(pool[:l]),
        (tuple(gammas[: q - 2]),),
        "constructed",
        q**3 - l * q - (q - 2) * (q + 1),
    )


def witness_hermitian_lrc2(spec: FiberProductSpec) -> WitnessSpec:
    """Witness for the two-factor Hermitian code at l = 0."""
    field = spec.field
    q = field.q
    units = _subfield_nonzero(field)
    if len(units) < 2:
        raise FieldTooSmall(f"F_{q} has fewer than two nonzero elements")
    a1, a2 = units[0], units[1]
    xs = field.preimage_index("rel_trace")(a1).tolist()
    ys = field.preimage_index("rel_norm")(a2).tolist()
    return WitnessSpec(
        (),
        (tuple(xs[: q - 2]), tuple(ys[: q - 1])),
        "constructed",
        q**3 - 2 * q * q + q + 2,
    )


def as_f0_pool(spec: FiberProductSpec, F: Sequence[Sequence[int]]) -> list[int]:
    """Base values in S that meet none of the given coordinate values."""
    field = spec.field
    alphas = field.elements()
    keep = fiber_sizes(spec) == spec.d_g
    for f, vals in zip(spec.factors, F):
        for g in vals:
            keep &= ~f.holds(field, alphas, np.full_like(alphas, g))
    return np.flatnonzero(keep).tolist()


def witness_AS(spec: FiberProductSpec, l: int) -> WitnessSpec:
    """Witness for the Artin-Schreier product: F_i solves y^p - y = a_i^(-q)."""
    field = spec.field
    p, q, t = field.p, field.q, spec.t
    if not 0 <= l <= q * q - t * q - t - 1:
        raise LOutOfRange(f"need 0 <= l <= {q * q - t * q - t - 1}, got {l}")
    F = []
    for f in spec.factors:
        target = field.pow(field.inv(f.c), q)
        F.append(tuple(field.preimage_index("artin_schreier")(target).tolist()[: p - 2]))
    pool = as_f0_pool(spec, F)
    if len(pool) < l:
        raise PoolTooSmall(f"only {len(pool)} admissible base values for l={l}")
    weight = p**t * q * q - l * p**t - t * (p - 2) * (q + 1) * p ** (t - 1)
    return WitnessSpec(tuple(pool[:l]), tuple(F), "constructed", weight)


def _trace_kernel_norms(field: FieldSpec) -> set[int]:
    omega = np.flatnonzero(field.map_values("rel_trace") == 0)
    return set(field.map_values("rel_norm")[omega].tolist())


def find_mu(spec_or_field: FiberProductSpec | FieldSpec, require_unramified: bool = False) -> int:
    """Smallest mu in F_q^* (by enc) avoiding the norms of {a : N(a) = T(a)}.

    With ``require_unramified`` mu must also avoid the norms of the trace
    kernel, which is what makes every y2 value over mu have a full fiber
    on B.
    """
    field = spec_or_field.field if isinstance(spec_or_field, FiberProductSpec) else spec_or_field
    q = field.q
    if q <= 3:
        raise FieldTooSmall(f"need q > 3, got q={q}")
    tr = field.map_values("rel_trace")
    nm = field.map_values("rel_norm")
    forbidden = set(nm[tr == nm].tolist())
    if require_unramified:
        forbidden |= _trace_kernel_norms(field)
    for mu in _subfield_nonzero(field):
        if mu not in forbidden:
            return mu
    raise NoValidMu(f"no admissible mu in F_{q}")


def witness_THC(spec: FiberProductSpec, l: int, mu: int | None = None) -> WitnessSpec:
    """Witness for X_q: F0 from N(x)=T(x), F1 from N=mu, F2 from T=mu."""
    field = spec.field
    q = field.q
    if q <= 3:
        raise FieldTooSmall(f"need q > 3, got q={q}")
    if not 0 <= l <= q:
        raise LOutOfRange(f"need 0 <= l <= {q}, got {l}")
    if mu is None:
        mu = find_mu(field)
    tr = field.map_values("rel_trace")
    nm = field.map_values("rel_norm")
    pool = [int(x) for x in np.flatnonzero(tr == nm) if x != 0]
    if len(pool) < l:
        raise PoolTooSmall(f"only {len(pool)} base values with N(x) = T(x)")
    F1 = field.preimage_index("rel_norm")(mu).tolist()[: q - 1]
    F2 = field.preimage_index("rel_trace")(mu).tolist()[: q - 2]
    n = q**4 - q**3
    weight = n - l * q * (q + 1) - (q - 1) * q * q - (q - 2) * (q + 1) ** 2
    return WitnessSpec(tuple(pool[:l]), (tuple(F1), tuple(F2)), "constructed", weight)


def family_witness(code: LrcCode, l: int | None = None) -> WitnessSpec | None:
    """The family's constructed witness for |F0| = l, or None if out of range."""
    spec = code.eval_set.spec
    l = code.params.l if l is None else l
    try:
        if spec.family == "hermitian_rational":
            return witness_hermitian_rational(spec, l)
        if spec.family == "hermitian_lrc2":
            return witness_hermitian_lrc2(spec) if l == 0 else None
        if spec.family == "as":
            return witness_AS(spec, l)
        if spec.family == "thc":
            return witness_THC(spec, l)
    except (LOutOfRange, PoolTooSmall, FieldTooSmall, NoValidMu):
        return None
    return None


# ---------------------------------------------------------------------------
# F-set search

@dataclass
class SearchResult:
    witness: WitnessSpec | None
    status: str  # "found" | "exhausted" | "budget-exhausted"
    nodes: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def find_F_sets(code: LrcCode, l: int | None = None, budget: int = SEARCH_BUDGET) -> SearchResult:
    """Depth-first search for value sets satisfying the five conditions.

    Candidates for F_i are the values with exactly d_{y_i} points on B, tried
    in enc order.  "exhausted" means the whole space was searched without
    success; "budget-exhausted" means the node budget ran out first.
    """
    es = code.eval_set
    spec = es.spec
    field = spec.field
    l = code.params.l if l is None else l
    need = [d - 2 for d in spec.map_degrees]
    dy = code.params.y_degrees
    cands = []
    for i in range(spec.t):
        counts = np.bincount(es.points[:, i + 1], minlength=field.order)
        cands.append(np.flatnonzero(counts == dy[i]).tolist())
    rel = _relation_cache(spec)
    alphas = es.S
    nodes = 0
    out_of_budget = False

    def leaf(chosen: list[list[int]]) -> WitnessSpec | None:
        keep = np.ones(len(alphas), dtype=bool)
        for i, vals in enumerate(chosen):
            f = spec.factors[i]
            for g in vals:
                keep &= ~f.holds(field, alphas, np.full_like(alphas, g))
        pool = alphas[keep]
        if len(pool) < l:
            return None
        return WitnessSpec(
            tuple(int(b) for b in pool[:l]),
            tuple(tuple(v) for v in chosen),
            "searched",
            expected_weight(code, l),
        )

    def dfs(i: int, start: int, chosen: list[list[int]]) -> WitnessSpec | None:
        nonlocal nodes, out_of_budget
        nodes += 1
        if nodes > budget:
            out_of_budget = True
            return None
        if i == spec.t:
            return leaf(chosen)
        if len(chosen[i]) == need[i]:
            return dfs(i + 1, 0, chosen)
        pool = cands[i]
        remaining = need[i] - len(chosen[i])
        for k in range(start, len(pool) - remaining + 1):
            g = pool[k]
            if all(
                _compatible(spec, rel, i, g, j, gj)
                for j in range(i)
                for gj in chosen[j]
            ):
                chosen[i].append(g)
                res = dfs(i, k + 1, chosen)
                chosen[i].pop()
                if res is not None:
                    return res
            if out_of_budget:
                return None
        return None

    w = dfs(0, 0, [[] for _ in range(spec.t)])
    if w is not None:
        return SearchResult(w, "found", nodes)
    return SearchResult(None, "budget-exhausted" if out_of_budget else "exhausted", nodes)


# ---------------------------------------------------------------------------
# counting condition

@dataclass(frozen=True)
class CountingCheck:
    eta: tuple[int, ...]
    psi: tuple[int, ...]
    S0: int
    S: tuple[int, ...]
    factor_sums: tuple[int, ...]
    base_sum: int
    factor_ok: tuple[bool, ...]
    base_ok: bool
    alt_factor_sums: tuple[int, ...]
    alt_factor_ok: tuple[bool, ...]

    @property
    def verdict(self) -> bool:
        return self.base_ok and all(self.factor_ok)

    @property
    def alt_verdict(self) -> bool:
        """Same check with the per-step removals as counted in the proof sketch."""
        return self.base_ok and all(self.alt_factor_ok)


def check_counting(
    spec: FiberProductSpec | None,
    l: int,
    *,
    eta: Sequence[int] | None = None,
    psi: Sequence[int] | None = None,
    S0: int | None = None,
) -> CountingCheck:
    """Evaluate the sufficient counting inequalities literally.

    Factor inequality (i >= 1):  |S_i| >= sum_{j != i} (eta_i - 2) psi_i eta_j psi_j
    Base inequality:             |S_0| >= sum_j eta_j psi_j
    with eta_0 = 1, psi_0 = l and |S_i| = eta_i |S_0|.  The alternate form
    swaps the roles to (eta_j - 2) psi_j eta_i psi_i (and l eta_i psi_i for j = 0).
    """
    if spec is not None:
        eta = eta if eta is not None else spec.map_degrees
        psi = psi if psi is not None else spec.own_degrees
        if S0 is None:
            S0 = spec.params.split_count if spec.params else None
        if S0 is None:
            S0 = len(split_locus(spec)[0])
    e = (1,) + tuple(eta)
    s = (l,) + tuple(psi)
    t = len(e) - 1
    Si = tuple(e[i] * S0 for i in range(1, t + 1))
    sums, alt = [], []
    for i in range(1, t + 1):
        sums.append(sum((e[i] - 2) * s[i] * e[j] * s[j] for j in range(t + 1) if j != i))
        alt.append(
            sum(
                (e[j] * s[j] if j == 0 else (e[j] - 2) * s[j]) * e[i] * s[i]
                for j in range(t + 1)
                if j != i
            )
        )
    base = sum(e[j] * s[j] for j in range(t + 1))
    return CountingCheck(
        eta=e,
        psi=s,
        S0=S0,
        S=Si,
        factor_sums=tuple(sums),
        base_sum=base,
        factor_ok=tuple(a >= b for a, b in zip(Si, sums)),
        base_ok=S0 >= base,
        alt_factor_sums=tuple(alt),
        alt_factor_ok=tuple(a >= b for a, b in zip(Si, alt)),
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration

def _prime_field_generator(code: LrcCode) -> np.ndarray:
    """Generator of the code as an F_p-space, with symbols flattened to digits."""
    field = code.field
    # polynomial basis 1, b, b^2, ... has enc values p^s
    basis = [field.p**s for s in range(field.degree)]
    rows = []
    for row in code.G:
        for bs in basis:
            scaled = field.vmul(row, bs)
            rows.append(field._digits[scaled].reshape(-1))
    return np.asarray(rows, dtype=np.int64)


def _enumerate_block(args) -> int:
    outer_rows, inner_table, p, degree, start, stop, skip_zero = args
    K1 = outer_rows.shape[0]
    best = np.iinfo(np.int64).max
    n = inner_table.shape[1] // degree
    for idx in range(start, stop):
        v = np.zeros(inner_table.shape[1], dtype=np.int64)
        x, k = idx, 0
        while x and k < K1:
            c = x % p
            if c:
                v += c * outer_rows[k]
            x //= p
            k += 1
        words = (inner_table + v) % p
        wts = words.reshape(len(words), n, degree).any(axis=2).sum(axis=1)
        if idx == 0 and skip_zero:
            wts[0] = n + 1
        best = min(best, int(wts.min()))
    return best


def _all_combinations(rows: np.ndarray, p: int) -> np.ndarray:
    """Every F_p-combination of the rows, row index = p-adic coefficient counter."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        table = np.concatenate([(table + c * r) % p for c in range(p)], axis=0)
    return table


def exact_distance_bruteforce(
    code: LrcCode, cap: int = BRUTEFORCE_CAP, jobs: int = 1
) -> int:
    """Minimum weight over all nonzero codewords by exhaustive enumeration.

    The code is expanded to an F_p-space of dimension k*degree.  Combinations
    of the last rows are tabulated once; each combination of the leading rows
    is added to the whole table in one vectorized step.
    """
    field = code.field
    total = field.order**code.k
    if total > cap:
        raise TooLarge(f"{total} codewords exceed the cap {cap}")
    rows = _prime_field_generator(code)
    p, K = field.p, rows.shape[0]
    K2 = min(K, max(1, int(math.log(4096, p))))
    inner = _all_combinations(rows[K - K2 :][::-1], p)
    outer = rows[: K - K2]
    n_outer = p ** (K - K2)
    jobs = max(1, int(jobs))
    step = max(1, -(-n_outer // (jobs * 8)))
    tasks = [
        (outer, inner, p, field.degree, s, min(s + step, n_outer), True)
        for s in range(0, n_outer, step)
    ]
    if jobs == 1:
        return min(_enumerate_block(tk) for tk in tasks)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return min(pool.map(_enumerate_block, tasks))


# ---------------------------------------------------------------------------
# randomized low-weight search

def search_low_weight(
    code: LrcCode,
    iterations: int = 200,
    rng: np.random.Generator | None = None,
    pair_rows: bool = True,
) -> tuple[np.ndarray, int]:
    """Lee-Brickell style information-set search for light codewords.

    Each iteration brings G to systematic form on a random information set
    and inspects single rows and (optionally) all two-row combinations.
    Returns the lightest codeword seen; it is only ever an upper bound.
    """
    rng = rng or np.random.default_rng(0)
    field = code.field
    n, k = code.n, code.k
    best_word = np.ones(n, dtype=np.int64)
    best = n
    scalars = np.arange(1, field.order, dtype=np.int64)
    for _ in range(iterations):
        perm = rng.permutation(n)
        R, piv = row_reduce(field, code.G[:, perm])
        if len(piv) < k:
            continue
        inv = np.argsort(perm)
        R = R[:, inv]
        wts = np.count_nonzero(R, axis=1)
        j = int(wts.argmin())
        if wts[j] < best:
            best, best_word = int(wts[j]), R[j].copy()
        if not pair_rows:
            continue
        scaled = field.vmul(scalars[:, None], R[None, :, :].reshape(1, -1)).reshape(
            len(scalars), k, n
        )
        for a in range(k):
            combos = field.vadd(R[a][None, None, :], scaled[:, a + 1 :, :])
            cw = np.count_nonzero(combos, axis=2)
            if cw.size and cw.min() < best:
                s, b = np.unravel_index(int(cw.argmin()), cw.shape)
                best = int(cw[s, b])
                best_word = combos[s, b].copy()
    return best_word, best


def best_product_codeword(code: LrcCode, max_combinations: int = 2 * 10**6) -> WitnessSpec | None:
    """Lightest codeword of product form, found exhaustively.

    Every choice of d_{h_i} - 2 values per axis is tried (no validity
    conditions imposed); for each, the best F0 is the l base values with
    the most surviving points.  Returns None when the number of choices
    exceeds ``max_combinations``.
    """
    es = code.eval_set
    spec = es.spec
    pts = es.points
    need = [d - 2 for d in spec.map_degrees]
    values = [np.unique(pts[:, i + 1]).tolist() for i in range(spec.t)]
    if math.prod(math.comb(len(v), k) for v, k in zip(values, need)) > max_combinations:
        return None
    l = code.params.l
    base = (pts[:, 0][None, :] == es.S[:, None]).astype(np.int32)

    def zero_masks(i: int):
        combos = list(itertools.combinations(values[i], need[i]))
        col = pts[:, i + 1]
        masks = np.zeros((len(combos), len(pts)), dtype=bool)
        for r, c in enumerate(combos):
            for v in c:
                masks[r] |= col == v
        return combos, masks

    tables = [zero_masks(i) for i in range(spec.t)]
    *head, (last_combos, last_masks) = tables
    best_w, best = len(pts) + 1, None
    for choice in itertools.product(*[range(len(c)) for c, _ in head]):
        z = np.zeros(len(pts), dtype=bool)
        for (combos, masks), r in zip(head, choice):
            z |= masks[r]
        alive = ~(z[None, :] | last_masks)
        per_base = alive.astype(np.int32) @ base.T
        order = np.argsort(-per_base, axis=1, kind="stable")[:, :l]
        removed = np.take_along_axis(per_base, order, axis=1).sum(axis=1)
        weights = alive.sum(axis=1) - removed
        r = int(weights.argmin())
        if weights[r] < best_w:
            best_w = int(weights[r])
            F = [head[i][0][choice[i]] for i in range(len(head))] + [last_combos[r]]
            best = (tuple(int(b) for b in es.S[order[r]]), tuple(tuple(f) for f in F))
    if best is None:
        return None
    return WitnessSpec(best[0], best[1], "searched", best_w)


# ---------------------------------------------------------------------------
# certification

@dataclass
class Certificate:
    lower: int
    upper: int
    lower_source: str
    upper_source: str
    witness: WitnessSpec | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def d(self) -> int | None:
        return self.lower if self.exact else None

    def to_json(self) -> dict:
        out = {
            "status": "exact" if self.exact else "not certified exact",
            "lower": self.lower,
            "upper": self.upper,
            "lower_source": self.lower_source,
            "upper_source": self.upper_source,
            "notes": self.notes,
        }
        if self.exact:
            out["exact"] = self.lower
        else:
            out["interval"] = [self.lower, self.upper]
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def certify_distance(
    code: LrcCode,
    *,
    witness: WitnessSpec | None = None,
    bruteforce_cap: int = BRUTEFORCE_CAP,
    search_iterations: int = 0,
    rng: np.random.Generator | None = None,
    jobs: int = 1,
) -> Certificate:
    """Sandwich the minimum distance between the construction bound and codewords.

    Upper-bound sources, tried in order: a supplied witness, the family's
    constructed witness (using the largest admissible |F0| <= l, since the
    spaces are nested), a search for F-sets, exhaustive enumeration, and an
    optional randomized search.
    """
    lower, lower_src = code.params.d_lower, "construction bound"
    cert = Certificate(lower, code.n, lower_src, "all-ones codeword")

    def offer(word_weight: int, source: str, w: WitnessSpec | None = None):
        if word_weight < cert.upper:
            cert.upper, cert.upper_source = word_weight, source
            cert.witness = w

    candidates: list[tuple[WitnessSpec, str]] = []
    if witness is not None:
        candidates.append((witness, "supplied witness"))
    fam = family_witness(code)
    if fam is None:
        for l2 in range(code.params.l - 1, -1, -1):
            fam = family_witness(code, l2)
            if fam is not None:
                break
    if fam is not None:
        candidates.append((fam, f"family witness (|F0|={fam.l})"))
    for w, src in candidates:
        word, wt = witness_weight(code, w, strict=False)
        if not np.any(word):
            continue
        chk = check_witness(code, w, l=w.l)
        if not chk.ok:
            cert.notes.append(f"{src} fails: " + "; ".join(chk.failures()))
        offer(wt, src, w)
    if not cert.exact:
        res = find_F_sets(code)
        cert.notes.append(f"F-set search: {res.status} after {res.nodes} nodes")
        if res.found:
            _, wt = witness_weight(code, res.witness, strict=False)
            offer(wt, "searched F-sets", res.witness)
    if not cert.exact:
        prod = best_product_codeword(code)
        if prod is not None:
            cert.notes.append(f"lightest product-form codeword: weight {prod.certified_weight}")
            offer(prod.certified_weight, "exhaustive product-form search", prod)
    if not cert.exact and code.field.order**code.k <= bruteforce_cap:
        d = exact_distance_bruteforce(code, bruteforce_cap, jobs)
        cert.lower, cert.lower_source = d, "exhaustive enumeration"
        if d < cert.upper:
            cert.upper, cert.upper_source, cert.witness = d, "exhaustive enumeration", None
    if not cert.exact and search_iterations > 0:
        _, wt = search_low_weight(code, search_iterations, rng)
        offer(wt, "randomized codeword search")
    return cert
