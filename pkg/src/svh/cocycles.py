"""Truncated 2-cocycle systems, coboundaries, and the cohomology quotient.

A bilinear form of degree d is supported on ordered generator pairs
(A_i, B_j) with i + j = d.  The cocycle condition

    psi(x, [y,z]) = psi([x,y], z) - psi([x,z], y)

is degree-homogeneous, so each degree can be solved independently; the
solver works on a finite window |index| <= N and reports results on an
inner window |index| <= M to keep truncation artifacts away from the
quotient.  A constraint row is emitted only when every pairing with a
nonzero structure constant lands on an in-window unknown; partially
representable triples are skipped and counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import AlgebraSpec, BasisElement, LinearCombo, Window, enumerate_basis
from .errors import InnerBoundExceedsWindow, NotACocycle, OutOfWindow
from .linalg import SparseMatrixQ, Vector, quotient_basis, rref, span_rank

_ZERO = Fraction(0)

Pair = tuple[BasisElement, BasisElement]

MIXED = "mixed"


class BilinearForm:
    """Finite rational bilinear form on in-window generator pairs."""

    __slots__ = ("algebra", "window", "degree", "entries")

    def __init__(
        self,
        algebra: str,
        window: Window | int,
        entries: Mapping[Pair, Fraction] | None = None,
        degree: int | str | None = None,
    ):
        window = Window.of(window)
        clean: dict[Pair, Fraction] = {}
        degrees: set[int] = set()
        for (x, y), v in (entries or {}).items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v == 0:
                continue
            if not (window.contains(x.index) and window.contains(y.index)):
                raise OutOfWindow(f"pair ({x!r}, {y!r}) lies outside window {window.n}")
            clean[(x, y)] = v
            degrees.add(x.index + y.index)
        if degree is None:
            degree = degrees.pop() if len(degrees) == 1 else (MIXED if degrees else 0)
        elif degree != MIXED:
            bad = degrees - {degree}
            if bad:
                raise ValueError(f"entries of degree {sorted(bad)} in a degree-{degree} form")
        self.algebra = algebra
        self.window = window
        self.degree = degree
        self.entries = clean

    def evaluate(self, x: BasisElement, y: BasisElement) -> Fraction:
        """Stored value at (x, y), or 0; both arguments must be in-window."""
        if not (self.window.contains(x.index) and self.window.contains(y.index)):
            raise OutOfWindow(f"pair ({x!r}, {y!r}) lies outside window {self.window.n}")
        return self.entries.get((x, y), _ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def restrict(self, inner: Window | int) -> "BilinearForm":
        """Keep only pairs with both indices inside the smaller window."""
        inner = Window.of(inner)
        if inner.n > self.window.n:
            raise InnerBoundExceedsWindow(
                f"inner bound {inner.n} exceeds window {self.window.n}"
            )
        kept = {
            (x, y): v
            for (x, y), v in self.entries.items()
            if inner.contains(x.index) and inner.contains(y.index)
        }
        degree = self.degree if isinstance(self.degree, int) else None
        return BilinearForm(self.algebra, inner, kept, degree)

    def _merge(self, other: "BilinearForm", sign: int) -> "BilinearForm":
        if self.window.n != other.window.n:
            raise ValueError("window mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, _ZERO) + sign * v
        return BilinearForm(self.algebra, self.window, out)

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return self._merge(other, 1)

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        return self._merge(other, -1)

    def __mul__(self, scalar) -> "BilinearForm":
        scalar = Fraction(scalar)
        return BilinearForm(
            self.algebra,
            self.window,
            {k: v * scalar for k, v in self.entries.items()},
            self.degree,
        )

    __rmul__ = __mul__

    def symmetric_part(self) -> "BilinearForm":
        out: dict[Pair, Fraction] = {}
        for (x, y), v in self.entries.items():
            out[(x, y)] = out.get((x, y), _ZERO) + v / 2
            out[(y, x)] = out.get((y, x), _ZERO) + v / 2
        return BilinearForm(self.algebra, self.window, out, self.degree)

    def antisymmetric_part(self) -> "BilinearForm":
        out: dict[Pair, Fraction] = {}
        for (x, y), v in self.entries.items():
            out[(x, y)] = out.get((x, y), _ZERO) + v / 2
            out[(y, x)] = out.get((y, x), _ZERO) - v / 2
        return BilinearForm(self.algebra, self.window, out, self.degree)

    def sorted_entries(self) -> list[tuple[Pair, Fraction]]:
        return sorted(
            self.entries.items(),
            key=lambda kv: (kv[0][0].index, kv[0][0].family, kv[0][1].index, kv[0][1].family),
        )

    def as_vector(self, index: Mapping[Pair, int], size: int) -> Vector:
        vec = [_ZERO] * size
        for pair, v in self.entries.items():
            vec[index[pair]] = v
        return tuple(vec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.window.n == other.window.n and self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"BilinearForm({self.algebra}, window={self.window.n}, "
            f"degree={self.degree}, entries={len(self.entries)})"
        )


class LinearFunctional:
    """Finite rational functional on basis elements; generates coboundaries."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[BasisElement, Fraction] | None = None):
        clean: dict[BasisElement, Fraction] = {}
        for k, v in (values or {}).items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v != 0:
                clean[k] = v
        self.values = clean

    def of(self, element: BasisElement) -> Fraction:
        return self.values.get(element, _ZERO)

    def apply(self, combo: LinearCombo) -> Fraction:
        total = _ZERO
        for el, coeff in combo.items():
            v = self.values.get(el)
            if v is not None:
                total += v * coeff
        return total

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.values == other.values

    __hash__ = None

    def __repr__(self) -> str:
        bits = ", ".join(
            f"{el!r}: {v}" for el, v in sorted(self.values.items(), key=lambda kv: (kv[0].family, kv[0].index))
        )
        return f"LinearFunctional({{{bits}}})"


def pair_basis(
    spec: AlgebraSpec, w: Window | int, degree: int | None
) -> list[Pair]:
    """Ordered unknowns psi(A_i, B_j): i ascending, then family order twice."""
    w = Window.of(w)
    out: list[Pair] = []
    for i in w.indices():
        if degree is None:
            j_range: Iterable[int] = w.indices()
        else:
            j = degree - i
            if not w.contains(j):
                continue
            j_range = (j,)
        for j in j_range:
            for fa in spec.families:
                for fb in spec.families:
                    out.append((BasisElement(fa, i), BasisElement(fb, j)))
    return out


@dataclass
class CocycleSystem:
    """Sparse constraint matrix plus the unknown order it was built over.

    Iterating yields (matrix, index map) so the result unpacks as a pair.
    """

    algebra: str
    window: Window
    degree: int | None
    mode: str
    matrix: SparseMatrixQ
    pairs: list[Pair]
    index: dict[Pair, int]
    skipped_triples: int

    def __iter__(self):
        return iter((self.matrix, self.index))


def build_cocycle_system(
    spec: AlgebraSpec,
    w: Window | int,
    degree: int | None = 0,
    mode: str = "leibniz",
) -> CocycleSystem:
    """Constraint rows of the truncated cocycle condition, one per usable triple.

    ``degree=None`` builds the joint system over all in-window pairs.  Mode
    "lie" appends antisymmetry rows psi(x,y) + psi(y,x) = 0 for every
    in-window pair of the requested degree.
    """
    if mode not in ("leibniz", "lie"):
        raise ValueError(f"unknown mode {mode!r}")
    w = Window.of(w)
    bound = w.n
    pairs = pair_basis(spec, w, degree)
    index = {p: i for i, p in enumerate(pairs)}
    gens = enumerate_basis(spec, w)
    cache = {(x, y): spec.gen_bracket(x, y) for x in gens for y in gens}

    rows: list[dict[int, Fraction]] = []
    skipped = 0

    if degree is None:
        triples = ((x, y, z) for x in gens for y in gens for z in gens)
    else:
        def homogeneous():
            for x in gens:
                for y in gens:
                    k = degree - x.index - y.index
                    if -bound <= k <= bound:
                        for fam in spec.families:
                            yield x, y, BasisElement(fam, k)
        triples = homogeneous()

    for x, y, z in triples:
        yz = cache[(y, z)]
        if yz and abs(y.index + z.index) > bound:
            skipped += 1
            continue
        xy = cache[(x, y)]
        if xy and abs(x.index + y.index) > bound:
            skipped += 1
            continue
        xz = cache[(x, z)]
        if xz and abs(x.index + z.index) > bound:
            skipped += 1
            continue
        row: dict[int, Fraction] = {}
        # psi(x,[y,z]) - psi([x,y],z) + psi([x,z],y) = 0
        for t, c in yz:
            col = index[(x, t)]
            row[col] = row.get(col, _ZERO) + c
        for t, c in xy:
            col = index[(t, z)]
            row[col] = row.get(col, _ZERO) - c
        for t, c in xz:
            col = index[(t, y)]
            row[col] = row.get(col, _ZERO) + c
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)

    if mode == "lie":
        seen: set[Pair] = set()
        for x, y in pairs:
            if (y, x) in seen:
                continue
            seen.add((x, y))
            if x == y:
                rows.append({index[(x, y)]: Fraction(2)})
            else:
                rows.append({index[(x, y)]: Fraction(1), index[(y, x)]: Fraction(1)})

    matrix = SparseMatrixQ.from_dicts(len(pairs), rows)
    return CocycleSystem(spec.name, w, degree, mode, matrix, pairs, index, skipped)


def form_from_vector(
    algebra: str,
    w: Window | int,
    pairs: Sequence[Pair],
    vec: Sequence[Fraction],
) -> BilinearForm:
    entries = {pairs[i]: v for i, v in enumerate(vec) if v != 0}
    return BilinearForm(algebra, w, entries)


def cocycle_space(
    spec: AlgebraSpec,
    w: Window | int,
    degree: int | None = 0,
    mode: str = "leibniz",
) -> list[BilinearForm]:
    """Basis of the truncated cocycle space, materialized as forms."""
    system = build_cocycle_system(spec, w, degree, mode)
    basis = rref(system.matrix).nullspace
    return [form_from_vector(spec.name, system.window, system.pairs, v) for v in basis]


def coboundary_of(
    spec: AlgebraSpec,
    f: LinearFunctional,
    w: Window | int,
    degree: int | None = 0,
) -> BilinearForm:
    """The form (x, y) -> f([x, y]) over in-window pairs of the given degree."""
    w = Window.of(w)
    entries: dict[Pair, Fraction] = {}
    for x, y in pair_basis(spec, w, degree):
        value = _ZERO
        for el, coeff in spec.gen_bracket(x, y):
            fv = f.values.get(el)
            if fv is not None:
                value += fv * coeff
        if value != 0:
            entries[(x, y)] = value
    return BilinearForm(spec.name, w, entries, degree if degree is not None else MIXED)


def coboundary_space(
    spec: AlgebraSpec, w: Window | int, degree: int = 0
) -> list[BilinearForm]:
    """Basis of the coboundaries of functionals supported on in-window
    degree-`degree` basis elements."""
    w = Window.of(w)
    if not w.contains(degree):
        return []
    pairs = pair_basis(spec, w, degree)
    index = {p: i for i, p in enumerate(pairs)}
    basis: list[BilinearForm] = []
    chosen: list[Vector] = []
    for fam in spec.families:
        f = LinearFunctional({BasisElement(fam, degree): Fraction(1)})
        form = coboundary_of(spec, f, w, degree)
        if form.is_zero():
            continue
        vec = form.as_vector(index, len(pairs))
        if span_rank(chosen + [vec]) > len(chosen):
            chosen.append(vec)
            basis.append(form)
    return basis


@dataclass
class NormalizationTrace:
    """Exact record of the coboundaries subtracted by the normalizer.

    Adding them back reproduces the input:
    input = normalized + coboundary(f) + g_scale * coboundary(unit at M_0).
    """

    f: LinearFunctional
    c1: Fraction
    g_scale: Fraction


def _diagonal_action_ok(spec: AlgebraSpec) -> bool:
    """True when family L rescales: [L_0, X_k] = k * X_k for every family X."""
    if "L" not in spec.families:
        return False
    for fam in spec.families:
        terms = spec.bracket_terms("L", fam)
        if len(terms) != 1:
            return False
        poly, target = terms[0]
        if target != fam:
            return False
        # p(0, m) must equal m exactly
        at_zero = {(0, b): v for (a, b), v in poly.coeffs.items() if a == 0}
        if at_zero != {(0, 1): Fraction(1)}:
            return False
    return True


def normalization_applicable(spec: AlgebraSpec, w: Window | int, degree) -> bool:
    """Whether the f-step formulas make sense for this algebra and window."""
    w = Window.of(w)
    if degree != 0 or w.n < 1 or not _diagonal_action_ok(spec):
        return False
    L_minus1 = BasisElement("L", -1)
    for fam in spec.families:
        terms = spec.gen_bracket(L_minus1, BasisElement(fam, 1))
        if len(terms) != 1 or terms[0][0] != BasisElement(fam, 0) or terms[0][1] == 0:
            return False
    return True


def normalize_representative(
    spec: AlgebraSpec, form: BilinearForm
) -> tuple[BilinearForm, NormalizationTrace]:
    """Subtract the canonical coboundaries from a degree-0 cocycle.

    First a functional f is read off the form (f(X_0) from the (L_-1, X_1)
    entries, f(X_k) = value(L_0, X_k)/k for k != 0) and its coboundary is
    subtracted.  Then a multiple of the coboundary of the unit functional at
    M_0 is subtracted, the scalar being solved so that the (L_1, M_-1) entry
    vanishes.  Raises NotACocycle when the input violates the truncated
    cocycle rows at its own window.
    """
    w = form.window
    if form.degree != 0:
        raise ValueError("normalization expects a degree-0 form")
    if not normalization_applicable(spec, w, 0):
        raise ValueError(f"normalization formulas do not apply to {spec.name!r}")

    system = build_cocycle_system(spec, w, 0, "leibniz")
    vec = form.as_vector(system.index, len(system.pairs))
    if any(v != 0 for v in system.matrix.matvec(vec)):
        raise NotACocycle("form violates the truncated cocycle system")

    L0 = BasisElement("L", 0)
    L_minus1 = BasisElement("L", -1)
    f_values: dict[BasisElement, Fraction] = {}
    for fam in spec.families:
        ((_, k_fam),) = spec.gen_bracket(L_minus1, BasisElement(fam, 1))
        v = form.evaluate(L_minus1, BasisElement(fam, 1))
        if v != 0:
            f_values[BasisElement(fam, 0)] = v / k_fam
        for k in w.indices():
            if k == 0:
                continue
            v = form.evaluate(L0, BasisElement(fam, k))
            if v != 0:
                f_values[BasisElement(fam, k)] = v / k
    f = LinearFunctional(f_values)
    after_f = form - coboundary_of(spec, f, w, 0)

    c1 = _ZERO
    g_scale = _ZERO
    if "M" in spec.families and w.n >= 1:
        probe = (BasisElement("L", 1), BasisElement("M", -1))
        c1 = after_f.evaluate(*probe)
        unit_g = coboundary_of(spec, LinearFunctional({BasisElement("M", 0): Fraction(1)}), w, 0)
        denom = unit_g.evaluate(*probe)
        if denom != 0:
            g_scale = c1 / denom
            normalized = after_f - g_scale * unit_g
        else:
            normalized = after_f
    else:
        normalized = after_f

    return normalized, NormalizationTrace(f=f, c1=c1, g_scale=g_scale)


@dataclass
class CohomologyReport:
    """Dimensions and representatives of the inner-window quotient."""

    algebra: str
    window: int
    inner: int
    degree: int | str
    mode: str
    dim_cocycle: int
    dim_coboundary: int
    dim_cohomology: int
    skipped_triples: int
    representatives: list[BilinearForm]
    representatives_normalized: bool = False


def cohomology(
    spec: AlgebraSpec,
    w: Window | int,
    degree: int = 0,
    mode: str = "leibniz",
    inner: Window | int | None = None,
) -> CohomologyReport:
    """Quotient of cocycles by coboundaries, restricted to the inner window.

    Both spaces are solved on the full window, restricted to pairs whose two
    indices lie in [-M, M], and the quotient basis is computed there.  When
    the normalization formulas apply (degree 0 and an L family acting
    diagonally), representatives are returned in normalized form; normalizing
    changes each representative only within its cohomology class.
    """
    w = Window.of(w)
    inner = Window.of(inner if inner is not None else w.n // 2)
    if inner.n > w.n:
        raise InnerBoundExceedsWindow(f"inner bound {inner.n} exceeds window {w.n}")

    system = build_cocycle_system(spec, w, degree, mode)
    cocycles = rref(system.matrix).nullspace
    cobounds = coboundary_space(spec, w, degree)

    inner_pairs = pair_basis(spec, inner, degree)
    inner_index = {p: i for i, p in enumerate(inner_pairs)}
    size = len(inner_pairs)

    def restrict_vec(form: BilinearForm) -> Vector:
        vec = [_ZERO] * size
        for pair, v in form.entries.items():
            col = inner_index.get(pair)
            if col is not None:
                vec[col] = v
        return tuple(vec)

    cocycle_vecs = []
    for v in cocycles:
        form = form_from_vector(spec.name, w, system.pairs, v)
        cocycle_vecs.append(restrict_vec(form))
    cob_vecs = [restrict_vec(b) for b in cobounds]

    dim_c = span_rank(cocycle_vecs)
    dim_b = span_rank(cob_vecs)
    reps_vecs = quotient_basis(cocycle_vecs, cob_vecs)
    reps = [form_from_vector(spec.name, inner, inner_pairs, v) for v in reps_vecs]

    normalized = False
    if reps and normalization_applicable(spec, inner, degree):
        reps = [normalize_representative(spec, r)[0] for r in reps]
        normalized = True

    return CohomologyReport(
        algebra=spec.name,
        window=w.n,
        inner=inner.n,
        degree=degree,
        mode=mode,
        dim_cocycle=dim_c,
        dim_coboundary=dim_b,
        dim_cohomology=dim_c - dim_b,
        skipped_triples=system.skipped_triples,
        representatives=reps,
        representatives_normalized=normalized,
    )


@dataclass
class ScanTable:
    """Cohomology dimensions across a list of windows, M = floor(N/2)."""

    algebra: str
    degree: int
    mode: str
    rows: list[CohomologyReport] = field(default_factory=list)

    def dims(self) -> list[int]:
        return [r.dim_cohomology for r in self.rows]


def convergence_scan(
    spec: AlgebraSpec,
    windows: Sequence[int],
    degree: int = 0,
    mode: str = "leibniz",
) -> ScanTable:
    """One cohomology run per window, with the default inner bound."""
    windows = list(windows)
    if any(b <= a for a, b in zip(windows, windows[1:])):
        raise ValueError("windows must be strictly ascending")
    table = ScanTable(spec.name, degree, mode)
    for n in windows:
        table.rows.append(cohomology(spec, n, degree, mode, inner=n // 2))
    return table
