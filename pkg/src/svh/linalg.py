"""Exact sparse linear algebra over the rationals.

All scalars are `fractions.Fraction`, so ranks, kernels and quotient bases
are computed without any tolerance.  Matrices are stored row-sparse; the
reduced row echelon form returned by :func:`rref` is the canonical one
(rows sorted by pivot column), which makes every result deterministic and
`rref` idempotent on its own output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import SubspaceNotContained

# Rational scalar type used everywhere in the package.  Fraction already
# guarantees the invariants we need: lowest terms, positive denominator,
# exact arithmetic on arbitrary-precision integers.
Rat = Fraction

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SparseMatrixQ:
    """Sparse rational matrix: each row is a sorted list of (column, value)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[Iterable[tuple[int, Fraction]]]):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        clean: list[list[tuple[int, Fraction]]] = []
        for entries in rows:
            row = sorted((int(c), _rat(v)) for c, v in entries if v != 0)
            prev = -1
            for c, _ in row:
                if not 0 <= c < ncols:
                    raise ValueError(f"column index {c} out of range 0..{ncols - 1}")
                if c == prev:
                    raise ValueError(f"duplicate column index {c} in row")
                prev = c
            clean.append(row)
        if len(clean) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(clean)}")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "SparseMatrixQ":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged dense input")
        return cls(len(rows), ncols, [[(c, _rat(v)) for c, v in enumerate(r) if v != 0] for r in rows])

    @classmethod
    def from_dicts(cls, ncols: int, rows: Sequence[Mapping[int, Fraction]]) -> "SparseMatrixQ":
        return cls(len(rows), ncols, [list(r.items()) for r in rows])

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_dicts(self) -> list[dict[int, Fraction]]:
        return [dict(r) for r in self.rows]

    def to_dense(self) -> list[list[Fraction]]:
        out = [[_ZERO] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i][c] = v
        return out

    def matvec(self, vec: Sequence[Fraction]) -> Vector:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((v * vec[c] for c, v in row), _ZERO) for row in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrixQ):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __repr__(self) -> str:
        return f"SparseMatrixQ({self.nrows}x{self.ncols}, nnz={self.nnz})"


@dataclass(frozen=True)
class EchelonResult:
    """Canonical reduced row echelon form plus the exact kernel."""

    rank: int
    pivot_cols: list[int]
    rows: list[list[tuple[int, Fraction]]]
    nullspace: list[Vector]


def rref(m: SparseMatrixQ) -> EchelonResult:
    """Reduce `m` over the rationals.

    Pivots are chosen in the sparsest remaining column (ties broken by the
    lowest column index) to limit fill-in; the returned rows are the unique
    RREF of the input, sorted by pivot column.
    """
    work: list[dict[int, Fraction]] = [dict(r) for r in m.rows if r]
    pending: set[int] = set(range(len(work)))
    col_rows: dict[int, set[int]] = {}
    pend_count: dict[int, int] = {}
    for i, row in enumerate(work):
        for c in row:
            col_rows.setdefault(c, set()).add(i)
            pend_count[c] = pend_count.get(c, 0) + 1

    def set_entry(i: int, c: int, v: Fraction) -> None:
        row = work[i]
        if v == 0:
            if c in row:
                del row[c]
                col_rows[c].discard(i)
                if i in pending:
                    pend_count[c] -= 1
        else:
            if c not in row:
                col_rows.setdefault(c, set()).add(i)
                if i in pending:
                    pend_count[c] = pend_count.get(c, 0) + 1
            row[c] = v

    pivot_of: dict[int, int] = {}  # row id -> pivot column
    while True:
        best: tuple[int, int] | None = None
        for c, count in pend_count.items():
            if count > 0 and (best is None or (count, c) < best):
                best = (count, c)
        if best is None:
            break
        col = best[1]
        r = min(
            (i for i in col_rows[col] if i in pending),
            key=lambda i: (len(work[i]), i),
        )
        pending.discard(r)
        for c in work[r]:
            pend_count[c] -= 1
        pv = work[r][col]
        if pv != 1:
            row = {c: v / pv for c, v in work[r].items()}
            work[r] = row
        prow = work[r]
        for i in list(col_rows[col]):
            if i == r:
                continue
            f = work[i][col]
            for c, v in prow.items():
                set_entry(i, c, work[i].get(c, _ZERO) - f * v)
        pivot_of[r] = col

    order = sorted(pivot_of, key=lambda r: pivot_of[r])
    pivot_cols = [pivot_of[r] for r in order]
    rows = [sorted(work[r].items()) for r in order]

    pivot_set = set(pivot_cols)
    nullvecs: list[Vector] = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = [_ZERO] * m.ncols
        vec[free] = Fraction(1)
        for pc, rid in zip(pivot_cols, order):
            coeff = work[rid].get(free)
            if coeff is not None:
                vec[pc] = -coeff
        nullvecs.append(tuple(vec))

    return EchelonResult(len(pivot_cols), pivot_cols, rows, nullvecs)


def nullspace(m: SparseMatrixQ) -> list[Vector]:
    """Basis of the exact kernel of `m`; size equals ncols - rank."""
    return rref(m).nullspace


class _RrefBasis:
    """Incremental fully-reduced row basis used by span computations."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}  # pivot col -> row

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out = dict(vec)
        for pc in sorted(self.rows):
            coeff = out.get(pc)
            if coeff:
                for c, v in self.rows[pc].items():
                    nv = out.get(c, _ZERO) - coeff * v
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
        return out

    def insert_reduced(self, vec: dict[int, Fraction]) -> None:
        pc = min(vec)
        pv = vec[pc]
        row = {c: v / pv for c, v in vec.items()}
        for other in self.rows.values():
            coeff = other.get(pc)
            if coeff:
                for c, v in row.items():
                    nv = other.get(c, _ZERO) - coeff * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self.rows[pc] = row

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Reduce and insert; returns True if the vector enlarged the span."""
        red = self.reduce({c: _rat(v) for c, v in enumerate(vec) if v != 0})
        if not red:
            return False
        self.insert_reduced(red)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def span_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the span of the given vectors."""
    basis = _RrefBasis()
    for v in vectors:
        basis.add(v)
    return basis.dim


def solve_combination(
    vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> list[Fraction] | None:
    """Exact coefficients x with sum(x_i * vectors[i]) == target, or None.

    Free coefficients are set to zero, so the answer is deterministic.
    """
    k = len(vectors)
    n = len(target)
    for v in vectors:
        if len(v) != n:
            raise ValueError("vector length mismatch")
    # Columns are the candidate vectors, plus the target as an augmented column.
    rows = []
    for i in range(n):
        entries = [(j, _rat(vectors[j][i])) for j in range(k) if vectors[j][i] != 0]
        if target[i] != 0:
            entries.append((k, _rat(target[i])))
        rows.append(entries)
    result = rref(SparseMatrixQ(n, k + 1, rows))
    if k in result.pivot_cols:
        return None
    coeffs = [_ZERO] * k
    for pc, row in zip(result.pivot_cols, result.rows):
        aug = dict(row).get(k, _ZERO)
        coeffs[pc] = aug
    return coeffs


def quotient_basis(
    space: Sequence[Sequence[Fraction]], subspace: Sequence[Sequence[Fraction]]
) -> list[Vector]:
    """Representatives whose classes form a basis of span(space)/span(subspace).

    Raises SubspaceNotContained unless every subspace vector lies in the span
    of `space`.  Representatives are fully reduced against the subspace (and
    against previously accepted representatives), so the output is
    deterministic given the input order.
    """
    vecs = [tuple(_rat(x) for x in v) for v in space]
    subs = [tuple(_rat(x) for x in v) for v in subspace]
    lengths = {len(v) for v in vecs} | {len(v) for v in subs}
    if len(lengths) > 1:
        raise ValueError("vectors of mixed lengths")
    n = lengths.pop() if lengths else 0

    ambient = _RrefBasis()
    for v in vecs:
        ambient.add(v)
    for v in subs:
        red = ambient.reduce({c: x for c, x in enumerate(v) if x != 0})
        if red:
            raise SubspaceNotContained(
                "subspace vector does not lie in the span of the ambient space"
            )

    basis = _RrefBasis()
    for v in subs:
        basis.add(v)
    reps: list[Vector] = []
    for v in vecs:
        red = basis.reduce({c: x for c, x in enumerate(v) if x != 0})
        if red:
            out = [_ZERO] * n
            for c, x in red.items():
                out[c] = x
            reps.append(tuple(out))
            basis.insert_reduced(red)
    return reps
