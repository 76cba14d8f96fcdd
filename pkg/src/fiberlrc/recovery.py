"""Local erasure repair through the t disjoint recovery sets.

For axis j, a position's recovery set is every other point sharing all
coordinates except y_j.  A codeword restricted to such a group is a
polynomial in y_j of degree at most d_{h_j} - 2, so the erased symbol is
a fixed linear combination (Lagrange weights) of the survivors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .code_builder import LrcCode
from .errors import LengthMismatch, MalformedFiber, NotEnoughSurvivors, RepeatedAbscissa
from .gf import FieldSpec


@dataclass(frozen=True, eq=False)
class RecoveryIndex:
    field: FieldSpec
    points: np.ndarray
    others: tuple[np.ndarray, ...]  # others[j-1][i] = sorted A_{i,j}
    weights: tuple[np.ndarray, ...]  # Lagrange weights aligned with others

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def t(self) -> int:
        return len(self.others)

    def recovery_set(self, i: int, j: int) -> list[int]:
        return self.others[j - 1][i].tolist()

    def abscissa(self, a: int, j: int) -> int:
        return int(self.points[a, j])


def _groups(points: np.ndarray, j: int) -> np.ndarray:
    key = np.delete(points, j, axis=1)
    _, inverse = np.unique(key, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.lexsort((np.arange(len(points)), inverse))
    counts = np.bincount(inverse)
    if counts.min() != counts.max():
        raise MalformedFiber(f"axis {j}: group sizes {sorted(set(counts.tolist()))}")
    return order.reshape(len(counts), counts[0])


def _lagrange(field: FieldSpec, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Weights for predicting each group member from the rest.

    Returns (cols, W) with shapes (d, d-1) and (m, d, d-1): member s of
    each group is sum_a W[:, s, a] * value[cols[s, a]].
    """
    m, d = X.shape
    for s in range(d):
        for u in range(s + 1, d):
            if np.any(X[:, s] == X[:, u]):
                raise RepeatedAbscissa("two points of a recovery group share y_j")
    cols = np.array([[a for a in range(d) if a != s] for s in range(d)], dtype=np.int64)
    W = np.ones((m, d, d - 1), dtype=np.int64)
    for s in range(d):
        for ai, a in enumerate(cols[s]):
            num = np.ones(m, dtype=np.int64)
            den = np.ones(m, dtype=np.int64)
            for b in cols[s]:
                if b == a:
                    continue
                num = field.vmul(num, field.vsub(X[:, s], X[:, b]))
                den = field.vmul(den, field.vsub(X[:, a], X[:, b]))
            W[:, s, ai] = field.vmul(num, field.vinv(den))
    return cols, W


def build_recovery_index(code: LrcCode | tuple[FieldSpec, np.ndarray]) -> RecoveryIndex:
    if isinstance(code, LrcCode):
        field, points = code.field, code.eval_set.points
        expected = code.eval_set.spec.map_degrees
    else:
        field, points = code
        expected = None
    n, width = points.shape
    others, weights = [], []
    for j in range(1, width):
        groups = _groups(points, j)
        if expected is not None and groups.shape[1] != expected[j - 1]:
            raise MalformedFiber(
                f"axis {j}: groups of size {groups.shape[1]}, expected {expected[j - 1]}"
            )
        cols, W = _lagrange(field, points[groups, j])
        d = groups.shape[1]
        oth = np.empty((n, d - 1), dtype=np.int64)
        wts = np.empty((n, d - 1), dtype=np.int64)
        for s in range(d):
            oth[groups[:, s]] = groups[:, cols[s]]
            wts[groups[:, s]] = W[:, s, :]
        # keep each set sorted by position, weights permuted alongside
        perm = np.argsort(oth, axis=1)
        others.append(np.take_along_axis(oth, perm, axis=1))
        weights.append(np.take_along_axis(wts, perm, axis=1))
    return RecoveryIndex(field, points, tuple(others), tuple(weights))


def recover(
    index: RecoveryIndex, word, i: int, j: int, present=None
) -> int:
    """Value at position i interpolated from the recovery set along axis j."""
    word = np.asarray(word, dtype=np.int64)
    if len(word) != index.n:
        raise LengthMismatch(f"word has length {len(word)}, code length is {index.n}")
    A = index.others[j - 1][i]
    if present is not None and not np.all(np.asarray(present, dtype=bool)[A]):
        raise NotEnoughSurvivors(f"recovery set {j} of position {i} has erasures")
    f = index.field
    return int(f.vsum(f.vmul(index.weights[j - 1][i], word[A])))


def recover_all(index: RecoveryIndex, word, j: int) -> np.ndarray:
    """Every position re-derived from its axis-j recovery set at once."""
    word = np.asarray(word, dtype=np.int64)
    f = index.field
    return f.vsum(f.vmul(index.weights[j - 1], word[index.others[j - 1]]), axis=1)


@dataclass
class RepairReport:
    word: np.ndarray
    present: np.ndarray
    repaired: list[int] = dc_field(default_factory=list)
    sets_used: list[int] = dc_field(default_factory=list)
    failed: list[int] = dc_field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {"repaired": self.repaired, "failed": self.failed, "sets_used": self.sets_used}


def recover_multi(index: RecoveryIndex, word, present) -> RepairReport:
    """Greedily repair erasures that have an intact recovery set."""
    word = np.array(word, dtype=np.int64, copy=True)
    present = np.array(present, dtype=bool, copy=True)
    if len(word) != index.n or len(present) != index.n:
        raise LengthMismatch("word and mask must match the code length")
    report = RepairReport(word, present)
    pending = [int(i) for i in np.flatnonzero(~present)]
    while pending:
        progress = False
        still = []
        for i in pending:
            for j in range(1, index.t + 1):
                if present[index.others[j - 1][i]].all():
                    word[i] = recover(index, word, i, j)
                    present[i] = True
                    report.repaired.append(i)
                    report.sets_used.append(j)
                    progress = True
                    break
            else:
                still.append(i)
        pending = still
        if not progress:
            break
    report.failed = pending
    return report
