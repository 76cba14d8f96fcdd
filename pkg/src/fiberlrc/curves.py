"""Fiber products of curves over the projective line in ``y0``.

Every factor curve is a single relation between the base coordinate
``y0`` and one coordinate ``y_i``::

    A(y_i) = c * y0^m          (default)
    A(y0)  = c * y_i^m         (swapped=True)

where ``A`` is one of the Artin-Schreier map ``y^p - y``, the relative
trace ``y^q + y`` or the relative norm ``y^(q+1)``.  Points of the fiber
product are tuples ``(y0, y1, ..., yt)`` satisfying every relation; only
affine points are ever enumerated.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyEvaluationSet, LrcError, TooLargeToEnumerate
from .gf import ENUM_CAP, FieldSpec, make_field, trace_kernel_basis

FORMS = ("artin_schreier", "trace", "norm")
_MAP_OF_FORM = {"artin_schreier": "artin_schreier", "trace": "rel_trace", "norm": "rel_norm"}
_JSON_FORM = {"artin_schreier": "AS", "trace": "trace", "norm": "norm"}

FAMILIES = ("hermitian_rational", "hermitian_lrc2", "thc", "as")


@dataclass(frozen=True)
class FactorCurveSpec:
    form: str
    c: int = 1
    m: int = 1
    swapped: bool = False

    def __post_init__(self):
        if self.form not in FORMS:
            raise LrcError(f"unknown factor form {self.form!r}")
        if self.c == 0:
            raise LrcError("factor coefficient must be nonzero")

    def form_degree(self, field: FieldSpec) -> int:
        if self.form == "artin_schreier":
            return field.p
        if self.form == "trace":
            return field.q
        return field.q + 1

    def map_degree(self, field: FieldSpec) -> int:
        """Degree of the cover Y_i -> P^1_{y0}."""
        return self.m if self.swapped else self.form_degree(field)

    def own_degree(self, field: FieldSpec) -> int:
        """Degree of y_i as a function on the factor curve itself."""
        return self.form_degree(field) if self.swapped else self.m

    def _apply_form(self, field: FieldSpec, x):
        return field.map_values(_MAP_OF_FORM[self.form])[x]

    def targets(self, field: FieldSpec, alphas) -> np.ndarray:
        alphas = np.asarray(alphas, dtype=np.int64)
        if self.swapped:
            return field.vmul(self._apply_form(field, alphas), field.inv(self.c))
        return field.vmul(self.c, field.vpow(alphas, self.m))

    def index(self, field: FieldSpec):
        if self.swapped:
            return field.preimage_index(("pow", self.m))
        return field.preimage_index(_MAP_OF_FORM[self.form])

    def solutions(self, field: FieldSpec, alpha: int) -> np.ndarray:
        """All y_i on this factor above y0 = alpha, sorted by enc."""
        return self.index(field)(int(self.targets(field, [alpha])[0]))

    def holds(self, field: FieldSpec, y0, yi) -> np.ndarray:
        y0 = np.asarray(y0, dtype=np.int64)
        yi = np.asarray(yi, dtype=np.int64)
        if self.swapped:
            lhs = self._apply_form(field, y0)
            rhs = field.vmul(self.c, field.vpow(yi, self.m))
        else:
            lhs = self._apply_form(field, yi)
            rhs = field.vmul(self.c, field.vpow(y0, self.m))
        return lhs == rhs

    def relation_poly(self, field: FieldSpec, gamma: int) -> list[int]:
        """The relation at y_i = gamma as a polynomial in y0 (low degree first)."""
        if not self.swapped:
            a = int(self._apply_form(field, gamma))
            poly = [0] * (self.m + 1)
            poly[0] = field.neg(a)
            poly[self.m] = field.add(poly[self.m], self.c)
            return poly
        rhs = field.mul(self.c, field.pow(gamma, self.m))
        deg = self.form_degree(field)
        poly = [0] * (deg + 1)
        poly[deg] = 1
        if self.form == "artin_schreier":
            poly[1] = field.neg(1)
        elif self.form == "trace":
            poly[1] = field.add(poly[1], 1)
        poly[0] = field.sub(poly[0], rhs)
        return poly

    def to_json(self) -> dict:
        return {"family": _JSON_FORM[self.form], "c": self.c, "m": self.m, "swapped": self.swapped}

    @classmethod
    def from_json(cls, obj: dict) -> "FactorCurveSpec":
        form = {"AS": "artin_schreier"}.get(obj["family"], obj["family"])
        return cls(form, int(obj.get("c", 1)), int(obj.get("m", 1)), bool(obj.get("swapped", False)))


@dataclass(frozen=True)
class FamilyParams:
    """Closed-form data of a named family; needs no field tables."""

    family: str
    p: int
    h: int
    t: int
    map_degrees: tuple[int, ...]
    y_degrees: tuple[int, ...]
    own_degrees: tuple[int, ...]
    split_count: int
    affine_points: int
    points_at_infinity: int = 1

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def d_g(self) -> int:
        return math.prod(self.map_degrees)

    @property
    def n(self) -> int:
        return self.d_g * self.split_count

    @property
    def localities(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.map_degrees)

    @property
    def max_exact_l(self) -> int | None:
        """Largest l covered by the family's exact-distance theorem, if any."""
        q, t = self.q, self.t
        if self.family == "as":
            return q * q - t * q - t - 1
        if self.family == "hermitian_rational":
            return q * q - q - 2
        if self.family == "hermitian_lrc2":
            return 0
        if self.family == "thc":
            return q
        return None


def family_params(family: str, p: int, h: int, t: int | None = None) -> FamilyParams:
    q = p**h
    if family == "hermitian_rational":
        return FamilyParams(family, p, h, 1, (q,), (q + 1,), (q + 1,), q * q, q**3)
    if family == "hermitian_lrc2":
        return FamilyParams(
            family, p, h, 2, (q, q + 1), (q + 1, q), (1, 1), q - 1, q**3
        )
    if family == "thc":
        return FamilyParams(
            family, p, h, 2, (q + 1, q), (q * q, (q + 1) ** 2), (q, q + 1), q * q - q, q**4
        )
    if family == "as":
        t = h if t is None else t
        if not 1 <= t <= h:
            raise LrcError(f"need 1 <= t <= h, got t={t}, h={h}")
        return FamilyParams(
            family,
            p,
            h,
            t,
            (p,) * t,
            ((q + 1) * p ** (t - 1),) * t,
            (q + 1,) * t,
            q * q,
            p**t * q * q,
        )
    raise LrcError(f"unknown family {family!r}")


@dataclass(frozen=True, eq=False)
class FiberProductSpec:
    field: FieldSpec
    factors: tuple[FactorCurveSpec, ...]
    family: str = "custom"
    params: FamilyParams | None = None
    kernel: tuple[int, ...] = ()

    @property
    def t(self) -> int:
        return len(self.factors)

    @property
    def map_degrees(self) -> tuple[int, ...]:
        return tuple(f.map_degree(self.field) for f in self.factors)

    @property
    def d_g(self) -> int:
        return math.prod(self.map_degrees)

    @property
    def localities(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.map_degrees)

    @property
    def own_degrees(self) -> tuple[int, ...]:
        return tuple(f.own_degree(self.field) for f in self.factors)

    @property
    def y_degrees(self) -> tuple[int, ...]:
        """Degree of each y_i on the fiber product.

        Taken from the family's closed form when available, otherwise
        own degree times the degrees of the other factors.
        """
        if self.params is not None:
            return self.params.y_degrees
        dg = self.d_g
        return tuple(o * dg // d for o, d in zip(self.own_degrees, self.map_degrees))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "field": self.field.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "kernel": list(self.kernel),
        }


def _field_for(p: int, h: int, modulus: Sequence[int] | None) -> FieldSpec:
    return make_field(p, 2 * h, modulus)


def hermitian_rational(p: int, h: int, modulus: Sequence[int] | None = None) -> FiberProductSpec:
    """Hermitian curve y^q + y = x^(q+1) as a one-factor cover of the x-line."""
    field = _field_for(p, h, modulus)
    q = p**h
    return FiberProductSpec(
        field,
        (FactorCurveSpec("trace", 1, q + 1),),
        "hermitian_rational",
        family_params("hermitian_rational", p, h),
    )


def hermitian_lrc2(p: int, h: int, modulus: Sequence[int] | None = None) -> FiberProductSpec:
    """Hermitian curve as the fiber product of u = x^q + x and u = y^(q+1)."""
    field = _field_for(p, h, modulus)
    return FiberProductSpec(
        field,
        (FactorCurveSpec("trace", 1, 1), FactorCurveSpec("norm", 1, 1)),
        "hermitian_lrc2",
        family_params("hermitian_lrc2", p, h),
    )


def hermitian_product(p: int, h: int, modulus: Sequence[int] | None = None) -> FiberProductSpec:
    """X_q: y0^q + y0 = y1^(q+1) and y2^q + y2 = y0^(q+1) over the y0-line."""
    field = _field_for(p, h, modulus)
    q = p**h
    return FiberProductSpec(
        field,
        (FactorCurveSpec("trace", 1, q + 1, swapped=True), FactorCurveSpec("trace", 1, q + 1)),
        "thc",
        family_params("thc", p, h),
    )


def artin_schreier_product(
    p: int,
    h: int,
    t: int,
    kernel: Sequence[int | str] | None = None,
    modulus: Sequence[int] | None = None,
) -> FiberProductSpec:
    """A_{q,t}: y_i^p - y_i = a_i * y0^(q+1) for a trace-kernel basis a_1..a_t."""
    params = family_params("as", p, h, t)
    field = _field_for(p, h, modulus)
    if kernel is None:
        basis = trace_kernel_basis(field)[:t]
    else:
        elems = [field.parse(a) if isinstance(a, str) else int(a) for a in kernel]
        basis = trace_kernel_basis(field, elems)
        if len(basis) != t:
            raise LrcError(f"need exactly t={t} kernel elements, got {len(basis)}")
    q = p**h
    factors = tuple(FactorCurveSpec("artin_schreier", a, q + 1) for a in basis)
    return FiberProductSpec(field, factors, "as", params, tuple(basis))


def family_spec(
    family: str,
    p: int,
    h: int,
    t: int | None = None,
    *,
    kernel: Sequence[int | str] | None = None,
    modulus: Sequence[int] | None = None,
) -> FiberProductSpec:
    if family == "hermitian_rational":
        return hermitian_rational(p, h, modulus)
    if family == "hermitian_lrc2":
        return hermitian_lrc2(p, h, modulus)
    if family == "thc":
        return hermitian_product(p, h, modulus)
    if family == "as":
        return artin_schreier_product(p, h, h if t is None else t, kernel, modulus)
    raise LrcError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# enumeration

def fiber_sizes(spec: FiberProductSpec) -> np.ndarray:
    """Number of affine points above every base value, indexed by enc."""
    field = spec.field
    alphas = field.elements()
    sizes = np.ones(field.order, dtype=np.int64)
    for f in spec.factors:
        sizes *= f.index(field).counts[f.targets(field, alphas)]
    return sizes


def fiber(spec: FiberProductSpec, alpha: int) -> np.ndarray:
    """Points above y0 = alpha as rows (y0, y1, ..., yt), lexicographically sorted."""
    sols = [f.solutions(spec.field, alpha) for f in spec.factors]
    return _cartesian(np.array([alpha], dtype=np.int64), [s[None, :] for s in sols])


def _cartesian(alphas: np.ndarray, sols: list[np.ndarray]) -> np.ndarray:
    t = len(sols)
    shape = (len(alphas),) + tuple(s.shape[1] for s in sols)
    cols = [np.broadcast_to(alphas.reshape((-1,) + (1,) * t), shape)]
    for i, s in enumerate(sols):
        sh = [len(alphas)] + [1] * t
        sh[i + 1] = s.shape[1]
        cols.append(np.broadcast_to(s.reshape(sh), shape))
    return np.stack([c.reshape(-1) for c in cols], axis=1).astype(np.int64)


def split_locus(spec: FiberProductSpec) -> tuple[np.ndarray, np.ndarray]:
    """Base values whose fiber has the full size d_g, plus every fiber size."""
    sizes = fiber_sizes(spec)
    return np.flatnonzero(sizes == spec.d_g).astype(np.int64), sizes


@dataclass(frozen=True, eq=False)
class EvaluationSet:
    spec: FiberProductSpec
    S: np.ndarray
    points: np.ndarray  # n x (t+1), lexicographic
    omega: np.ndarray
    sizes: np.ndarray = dc_field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def coordinate(self, i: int) -> np.ndarray:
        return self.points[:, i]

    def point(self, index: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.points[index])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index"] + [f"y{i}" for i in range(self.points.shape[1])])
        for idx, row in enumerate(self.points.tolist()):
            w.writerow([idx] + row)
        return buf.getvalue()


def evaluation_set(
    spec: FiberProductSpec, filter: Callable[[int], bool] | None = None
) -> EvaluationSet:
    """All points above the (optionally filtered) split locus."""
    field = spec.field
    S, sizes = split_locus(spec)
    dropped = np.array([], dtype=np.int64)
    if filter is not None:
        keep = np.array([bool(filter(int(a))) for a in S], dtype=bool)
        dropped, S = S[~keep], S[keep]
    if len(S) == 0:
        raise EmptyEvaluationSet(f"no split base values for {spec.family}")
    sols = []
    for f in spec.factors:
        idx = f.index(field)
        d = f.map_degree(field)
        starts = idx.starts[f.targets(field, S)]
        sols.append(idx.members[starts[:, None] + np.arange(d)])
    points = _cartesian(S, sols)
    ramified = np.flatnonzero((sizes > 0) & (sizes < spec.d_g))
    omega = np.union1d(ramified, dropped).astype(np.int64)
    return EvaluationSet(spec, S, points, omega, sizes)


def empirical_y_degrees(es: EvaluationSet) -> tuple[int, ...]:
    """Largest number of points of B sharing one value of each coordinate."""
    order = es.spec.field.order
    return tuple(
        int(np.bincount(es.points[:, i], minlength=order).max())
        for i in range(es.points.shape[1])
    )


@dataclass(frozen=True)
class PointCountReport:
    affine_expected: int
    points_at_infinity: int
    affine_enumerated: int | None
    method: str

    @property
    def total(self) -> int:
        return self.affine_expected + self.points_at_infinity

    @property
    def match(self) -> bool | None:
        if self.affine_enumerated is None:
            return None
        return self.affine_enumerated == self.affine_expected


def point_count_check(spec: FiberProductSpec) -> PointCountReport:
    if spec.params is None:
        raise LrcError("closed-form point count needs a named family")
    params = spec.params
    if spec.field.order > ENUM_CAP:
        return PointCountReport(
            params.affine_points, params.points_at_infinity, None, "closed_form"
        )
    try:
        enumerated = int(fiber_sizes(spec).sum())
    except TooLargeToEnumerate:  # pragma: no cover - guarded above
        enumerated = None
    return PointCountReport(
        params.affine_points, params.points_at_infinity, enumerated, "enumerated"
    )
