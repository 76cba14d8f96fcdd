"""Evaluation codes C(V, B) on fiber products.

V is spanned by the monomials ``y0^j * y1^e1 * ... * yt^et`` with
``j <= l`` and ``e_i <= d_{h_i} - 2``; the generator matrix has one row
per monomial, evaluated at the points of B in order.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .curves import EvaluationSet, FamilyParams, FiberProductSpec, evaluation_set, split_locus
from .errors import LengthMismatch, LTooLarge, RankDeficient
from .gf import FieldSpec
from .linalg import matmul, rank


@dataclass(frozen=True)
class MonomialBasis:
    l: int
    map_degrees: tuple[int, ...]

    @property
    def exponent_tuples(self) -> list[tuple[int, ...]]:
        ranges = [range(self.l + 1)] + [range(d - 1) for d in self.map_degrees]
        return list(itertools.product(*ranges))

    def __len__(self) -> int:
        return (self.l + 1) * math.prod(d - 1 for d in self.map_degrees)

    def evaluate(self, field: FieldSpec, points: np.ndarray) -> np.ndarray:
        """Matrix of monomial values, rows in ``exponent_tuples`` order."""
        n = len(points)
        dims = [self.l + 1] + [d - 1 for d in self.map_degrees]
        acc = np.ones((1,) * len(dims) + (n,), dtype=np.int64)
        for axis, size in enumerate(dims):
            col = points[:, axis]
            powers = np.stack([field.vpow(col, e) for e in range(size)])
            shape = [1] * len(dims) + [n]
            shape[axis] = size
            acc = field.vmul(acc, powers.reshape(shape))
        return acc.reshape(-1, n)


@dataclass(frozen=True)
class CodeParams:
    family: str
    l: int
    n: int
    k: int
    d_lower: int
    localities: tuple[int, ...]
    rate: Fraction
    d_g: int
    split_count: int
    y_degrees: tuple[int, ...]
    own_degrees: tuple[int, ...]
    p: int | None = None
    h: int | None = None
    t: int | None = None

    @property
    def d_theorem(self) -> int:
        """The raw construction bound, which may be non-positive for large l."""
        return self.n - self.l * self.d_g - sum(
            (r - 1) * dy for r, dy in zip(self.localities, self.y_degrees)
        )

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "h": self.h,
            "t": self.t,
            "l": self.l,
            "n": self.n,
            "k": self.k,
            "d_lower": self.d_lower,
            "localities": list(self.localities),
            "rate": float(self.rate),
            "rate_exact": f"{self.rate.numerator}/{self.rate.denominator}",
        }


def _closed_form(spec: FiberProductSpec | FamilyParams) -> tuple:
    if isinstance(spec, FamilyParams):
        fp = spec
        return (fp.family, fp.map_degrees, fp.y_degrees, fp.own_degrees, fp.split_count,
                fp.p, fp.h, fp.t)
    if spec.params is not None:
        fp = spec.params
        return (fp.family, fp.map_degrees, fp.y_degrees, fp.own_degrees, fp.split_count,
                fp.p, fp.h, fp.t)
    S, _ = split_locus(spec)
    return (spec.family, spec.map_degrees, spec.y_degrees, spec.own_degrees, len(S),
            spec.field.p, None, spec.t)


def theorem3_params(
    spec: FiberProductSpec | FamilyParams, l: int, split_count: int | None = None
) -> CodeParams:
    """Length, dimension, distance bound, localities and rate of C(V, B).

    Works from closed forms only, so it applies to fields far too large
    to enumerate.  ``split_count`` overrides |S| (e.g. after filtering).
    """
    family, dh, dy, own, s, p, h, t = _closed_form(spec)
    if split_count is not None:
        s = split_count
    d_g = math.prod(dh)
    n = s * d_g
    k = (l + 1) * math.prod(d - 1 for d in dh)
    raw = n - l * d_g - sum((d - 2) * y for d, y in zip(dh, dy))
    return CodeParams(
        family=family,
        l=l,
        n=n,
        k=k,
        d_lower=max(raw, 1),
        localities=tuple(d - 1 for d in dh),
        rate=Fraction(k, n),
        d_g=d_g,
        split_count=s,
        y_degrees=tuple(dy),
        own_degrees=tuple(own),
        p=p,
        h=h,
        t=len(dh) if t is None else t,
    )


def max_l_positive(spec: FiberProductSpec | FamilyParams, split_count: int | None = None) -> int:
    """Largest l whose construction bound is still at least 1 (and l < |S|)."""
    _, dh, dy, _, s, *_ = _closed_form(spec)
    if split_count is not None:
        s = split_count
    d_g = math.prod(dh)
    slack = s * d_g - sum((d - 2) * y for d, y in zip(dh, dy)) - 1
    if slack < 0:
        return -1
    return min(slack // d_g, s - 1)


@dataclass(frozen=True, eq=False)
class LrcCode:
    field: FieldSpec
    eval_set: EvaluationSet
    basis: MonomialBasis
    G: np.ndarray
    params: CodeParams

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def encode(self, message: Sequence[int]) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.k,):
            raise LengthMismatch(f"message needs {self.k} symbols, got {msg.shape}")
        return matmul(self.field, msg, self.G)[0]

    def encode_many(self, messages) -> np.ndarray:
        msgs = np.asarray(messages, dtype=np.int64)
        if msgs.ndim != 2 or msgs.shape[1] != self.k:
            raise LengthMismatch(f"messages need {self.k} columns")
        return matmul(self.field, msgs, self.G)

    def random_messages(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.field.order, size=(count, self.k), dtype=np.int64)

    def generator_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.G.tolist())
        return buf.getvalue()

    def to_json(self) -> dict:
        return self.params.to_json()


def build_code(
    spec: FiberProductSpec,
    l: int,
    filter: Callable[[int], bool] | None = None,
    eval_set: EvaluationSet | None = None,
) -> LrcCode:
    es = eval_set if eval_set is not None else evaluation_set(spec, filter)
    if l < 0 or l >= len(es.S):
        raise LTooLarge(f"need 0 <= l < |S| = {len(es.S)}, got l={l}")
    basis = MonomialBasis(l, spec.map_degrees)
    G = basis.evaluate(spec.field, es.points)
    params = theorem3_params(spec, l, split_count=len(es.S))
    if params.n != es.n:
        raise RankDeficient(f"enumerated n={es.n} disagrees with closed form {params.n}")
    if rank(spec.field, G) != len(basis):
        raise RankDeficient("evaluation map is not injective on V")
    return LrcCode(spec.field, es, basis, G, params)
