"""Upper bounds on minimum distance and rate, and reference constructions.

All quantities are exact integers or Fractions; ``render`` turns a Fraction
into a fixed-precision decimal string only at the presentation layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .errors import BadParams

ROUNDING = {"half_even": ROUND_HALF_EVEN, "truncate": ROUND_DOWN}


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise BadParams(f"need 1 <= k <= n, got n={n}, k={k}")


def singleton(n: int, k: int) -> int:
    _check_nk(n, k)
    return n - k + 1


def tamo_barg_rate_cap(r: int, t: int) -> Fraction:
    """1 / prod_{j=1..t} (1 + 1/(j r))."""
    if r < 1 or t < 1:
        raise BadParams(f"need r, t >= 1, got r={r}, t={t}")
    cap = Fraction(1)
    for j in range(1, t + 1):
        cap /= 1 + Fraction(1, j * r)
    return cap


def tamo_barg(n: int, k: int, r: int, t: int) -> tuple[int, Fraction]:
    """Distance bound n - sum_{i=0..t} floor((k-1)/r^i) and the rate cap."""
    _check_nk(n, k)
    cap = tamo_barg_rate_cap(r, t)
    return n - sum((k - 1) // r**i for i in range(t + 1)), cap


def bhadane_thangaraj(n: int, k: int, localities: Sequence[int]) -> int:
    """n - k + 1 - sum_i floor((k-1) / (r_1 ... r_i)) with r sorted ascending."""
    _check_nk(n, k)
    rs = sorted(int(r) for r in localities)
    if any(r < 1 for r in rs):
        raise BadParams(f"localities must be positive, got {list(localities)}")
    total, prod = 0, 1
    for r in rs:
        prod *= r
        total += (k - 1) // prod
    return n - k + 1 - total


def bmq(n: int, k: int, localities: Sequence[int]) -> int:
    """n - k - ceil(((k-1) t + 1) / (1 + sum r_i)) + 2."""
    _check_nk(n, k)
    rs = [int(r) for r in localities]
    if not rs or any(r < 1 for r in rs):
        raise BadParams(f"localities must be positive, got {rs}")
    num, den = (k - 1) * len(rs) + 1, 1 + sum(rs)
    return n - k - (-(-num // den)) + 2


@dataclass(frozen=True)
class ReferenceCode:
    n: int
    k: int
    d: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)


def product_code(r: int, t: int) -> ReferenceCode:
    """t-fold product of [r+1, r, 2] parity-check codes."""
    return ReferenceCode((r + 1) ** t, r**t, 2**t)


def wang_code(r: int, t: int) -> ReferenceCode:
    n = math.comb(r + t, t)
    return ReferenceCode(n, n - math.comb(r + t - 1, t - 1), t + 1)


def reference_constructions(r: int, t: int) -> dict[str, ReferenceCode]:
    if r < 1 or t < 1:
        raise BadParams(f"need r, t >= 1, got r={r}, t={t}")
    return {"product": product_code(r, t), "wang": wang_code(r, t)}


def hermitian_defect(q: int) -> tuple[int, Fraction]:
    """Defect of the two-factor Hermitian code against the sorted-locality bound."""
    if q < 2:
        raise BadParams(f"need q >= 2, got {q}")
    return q * q - 2 * q, Fraction(q * q - 2 * q, q**3 - q)


def render(x: Fraction | int, places: int, rounding: str = "half_even") -> str:
    """Fixed-point decimal string of an exact rational."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return str(value.quantize(Decimal(1).scaleb(-places), rounding=ROUNDING[rounding]))


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    localities: tuple[int, ...]
    singleton: int
    tamo_barg_d: int
    tamo_barg_rate_cap: Fraction
    bhadane_thangaraj: int
    bmq: int
    product_rate: Fraction
    wang_rate: Fraction
    d: int | None = None
    selected: str = "bhadane_thangaraj"

    @property
    def uniform(self) -> bool:
        return len(set(self.localities)) == 1

    @property
    def bound(self) -> int:
        return getattr(self, self.selected if self.selected != "tamo_barg" else "tamo_barg_d")

    @property
    def defect(self) -> int | None:
        return None if self.d is None else self.bound - self.d

    @property
    def relative_defect(self) -> Fraction | None:
        return None if self.d is None else Fraction(self.defect, self.n)

    def consistent(self) -> bool:
        """Every distance bound is at least the known distance."""
        if self.d is None:
            return True
        return min(self.singleton, self.tamo_barg_d, self.bhadane_thangaraj, self.bmq) >= self.d

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "localities": list(self.localities),
            "singleton": self.singleton,
            "tamo_barg_d": self.tamo_barg_d,
            "tamo_barg_rate_cap": str(self.tamo_barg_rate_cap),
            "bhadane_thangaraj": self.bhadane_thangaraj,
            "bmq": self.bmq,
            "product_rate": str(self.product_rate),
            "wang_rate": str(self.wang_rate),
            "selected": self.selected,
        }
        if self.d is not None:
            out.update(d=self.d, defect=self.defect, relative_defect=render(self.relative_defect, 4))
        return out


def bound_report(
    n: int,
    k: int,
    localities: Sequence[int],
    d: int | None = None,
    selected: str = "bhadane_thangaraj",
) -> BoundReport:
    """All bounds for one parameter set.

    Tamo-Barg assumes one locality; for mixed localities the largest is
    used, which keeps it a valid (weaker) bound.
    """
    rs = tuple(int(r) for r in localities)
    r, t = max(rs), len(rs)
    tb_d, tb_cap = tamo_barg(n, k, r, t)
    refs = reference_constructions(r, t)
    return BoundReport(
        n=n,
        k=k,
        localities=rs,
        singleton=singleton(n, k),
        tamo_barg_d=tb_d,
        tamo_barg_rate_cap=tb_cap,
        bhadane_thangaraj=bhadane_thangaraj(n, k, rs),
        bmq=bmq(n, k, rs),
        product_rate=refs["product"].rate,
        wang_rate=refs["wang"].rate,
        d=d,
        selected=selected,
    )
