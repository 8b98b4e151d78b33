"""Integer-graded algebras given by structure-constant rules.

An algebra is a set of named families (L, Y, M, ...) whose generators carry
an integer index, together with bracket rules per ordered family pair.  The
coefficient of a rule is a polynomial in the two indices (``n`` for the left
argument, ``m`` for the right) and the target index is always ``n + m``.
With the antisymmetric-closure flag, rules for unlisted reversed pairs are
derived as the negated, argument-swapped originals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DuplicateRule, InvalidAlgebra, UnknownFamily

_ZERO = Fraction(0)

RESERVED_NAMES = frozenset({"n", "m"})


class BasisElement(NamedTuple):
    """One generator: a family tag plus an integer grading index."""

    family: str
    index: int

    def __repr__(self) -> str:
        return f"{self.family}_{self.index}"


class CoeffPoly:
    """Polynomial in the left index ``n`` and right index ``m`` over Q.

    Stored as a map (deg_n, deg_m) -> coefficient with no zero entries.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (a, b), v in (coeffs or {}).items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v != 0:
                clean[(int(a), int(b))] = v
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls()

    @classmethod
    def const(cls, value) -> "CoeffPoly":
        return cls({(0, 0): Fraction(value)})

    @classmethod
    def var_n(cls) -> "CoeffPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def var_m(cls) -> "CoeffPoly":
        return cls({(0, 1): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, _ZERO) + v
        return CoeffPoly(out)

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self + (-other)

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other) -> "CoeffPoly":
        if isinstance(other, (int, Fraction)):
            return CoeffPoly({k: v * other for k, v in self.coeffs.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), v1 in self.coeffs.items():
            for (a2, b2), v2 in other.coeffs.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, _ZERO) + v1 * v2
        return CoeffPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CoeffPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = CoeffPoly.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def swapped(self) -> "CoeffPoly":
        """The polynomial with n and m exchanged."""
        return CoeffPoly({(b, a): v for (a, b), v in self.coeffs.items()})

    def evaluate(self, n: int, m: int) -> Fraction:
        total = _ZERO
        for (a, b), v in self.coeffs.items():
            total += v * (n**a) * (m**b)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # mutable dict inside

    def text(self) -> str:
        """Deterministic rendering that the DSL parser accepts back."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for (a, b) in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k[0], k[1])):
            v = self.coeffs[(a, b)]
            factors = []
            if a:
                factors.append("n" if a == 1 else f"n^{a}")
            if b:
                factors.append("m" if b == 1 else f"m^{b}")
            mag = abs(v)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = " * ".join(factors)
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"CoeffPoly({self.text()})"


class LinearCombo:
    """Finite rational linear combination of basis elements."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisElement, Fraction] | None = None):
        clean: dict[BasisElement, Fraction] = {}
        for k, v in (terms or {}).items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v != 0:
                clean[k] = v
        self.terms = clean

    @classmethod
    def single(cls, element: BasisElement, coeff=1) -> "LinearCombo":
        return cls({element: Fraction(coeff)})

    @classmethod
    def zero(cls) -> "LinearCombo":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, element: BasisElement) -> Fraction:
        return self.terms.get(element, _ZERO)

    def __add__(self, other: "LinearCombo") -> "LinearCombo":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return LinearCombo(out)

    def __sub__(self, other: "LinearCombo") -> "LinearCombo":
        return self + (-1) * other

    def __mul__(self, scalar) -> "LinearCombo":
        return LinearCombo({k: v * Fraction(scalar) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCombo):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def items(self):
        return self.terms.items()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for el in sorted(self.terms, key=lambda e: (e.family, e.index)):
            bits.append(f"{self.terms[el]}*{el!r}")
        return " + ".join(bits)


@dataclass(frozen=True)
class Window:
    """Symmetric index truncation: indices range over [-n, n]."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("window bound must be non-negative")

    def contains(self, index: int) -> bool:
        return -self.n <= index <= self.n

    def indices(self) -> range:
        return range(-self.n, self.n + 1)

    @classmethod
    def of(cls, value) -> "Window":
        return value if isinstance(value, Window) else cls(int(value))


@dataclass(frozen=True)
class BracketRule:
    """[left_n, right_m] = sum of coeff(n, m) * target_{n+m}."""

    left: str
    right: str
    terms: tuple[tuple[CoeffPoly, str], ...]


def _canonical_terms(
    terms: Iterable[tuple[CoeffPoly, str]], family_order: dict[str, int]
) -> tuple[tuple[CoeffPoly, str], ...]:
    by_target: dict[str, CoeffPoly] = {}
    for poly, target in terms:
        by_target[target] = by_target.get(target, CoeffPoly.zero()) + poly
    out = []
    for target in sorted(by_target, key=lambda t: family_order[t]):
        poly = by_target[target]
        if not poly.is_zero():
            out.append((poly, target))
    return tuple(out)


class AlgebraSpec:
    """Immutable description of a graded algebra by bracket rules."""

    def __init__(
        self,
        name: str,
        families: Sequence[str],
        rules: Iterable[BracketRule] = (),
        closure_antisymmetric: bool = False,
    ):
        families = tuple(families)
        if not families:
            raise InvalidAlgebra("at least one family is required")
        if len(set(families)) != len(families):
            raise InvalidAlgebra("family names must be distinct")
        for fam in families:
            if fam in RESERVED_NAMES:
                raise InvalidAlgebra(f"family name {fam!r} is a reserved index variable")
        self.name = name
        self.families = families
        self.closure_antisymmetric = bool(closure_antisymmetric)
        self._family_order = {f: i for i, f in enumerate(families)}

        written: dict[tuple[str, str], tuple[tuple[CoeffPoly, str], ...]] = {}
        for rule in rules:
            for fam in (rule.left, rule.right, *(t for _, t in rule.terms)):
                if fam not in self._family_order:
                    raise UnknownFamily(f"family {fam!r} is not declared")
            key = (rule.left, rule.right)
            if key in written:
                raise DuplicateRule(f"duplicate bracket rule for {rule.left} {rule.right}")
            written[key] = _canonical_terms(rule.terms, self._family_order)
        self.rules = written

        if self.closure_antisymmetric:
            self._check_closure_consistency()

        # Completed ordered-pair table: written rules, plus derived reversals
        # [B_n, A_m] = -sum p(m, n) T_{n+m} when closure is on.
        table: dict[tuple[str, str], tuple[tuple[CoeffPoly, str], ...]] = {}
        for a in families:
            for b in families:
                if (a, b) in written:
                    table[(a, b)] = written[(a, b)]
                elif self.closure_antisymmetric and (b, a) in written:
                    derived = [(-poly.swapped(), t) for poly, t in written[(b, a)]]
                    table[(a, b)] = _canonical_terms(derived, self._family_order)
                else:
                    table[(a, b)] = ()
        self._table = table

    def _check_closure_consistency(self) -> None:
        for (a, b), terms in self.rules.items():
            if a == b:
                for poly, target in terms:
                    if poly + poly.swapped() != CoeffPoly.zero():
                        raise InvalidAlgebra(
                            f"closure is antisymmetric but the {a} {a} coefficient for "
                            f"target {target} is not odd under argument swap"
                        )
            elif (b, a) in self.rules:
                got = {t: p for p, t in self.rules[(b, a)]}
                want = {t: -p.swapped() for p, t in terms}
                targets = set(got) | set(want)
                for t in targets:
                    if got.get(t, CoeffPoly.zero()) != want.get(t, CoeffPoly.zero()):
                        raise InvalidAlgebra(
                            f"rules for {a} {b} and {b} {a} are not antisymmetric "
                            f"mirror images although closure is set"
                        )

    def family_position(self, family: str) -> int:
        try:
            return self._family_order[family]
        except KeyError:
            raise UnknownFamily(f"family {family!r} is not declared") from None

    def bracket_terms(self, left: str, right: str) -> tuple[tuple[CoeffPoly, str], ...]:
        """Completed rule (possibly derived by closure) for an ordered pair."""
        self.family_position(left)
        self.family_position(right)
        return self._table[(left, right)]

    def gen_bracket(self, x: BasisElement, y: BasisElement) -> tuple[tuple[BasisElement, Fraction], ...]:
        """Bracket of two generators as ((element, coefficient), ...)."""
        out = []
        for poly, target in self.bracket_terms(x.family, y.family):
            coeff = poly.evaluate(x.index, y.index)
            if coeff != 0:
                out.append((BasisElement(target, x.index + y.index), coeff))
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.families == other.families
            and self.closure_antisymmetric == other.closure_antisymmetric
            and self.rules == other.rules
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.name!r}, families={list(self.families)}, rules={len(self.rules)})"


def bracket(spec: AlgebraSpec, a, b) -> LinearCombo:
    """Bilinear extension of the generator bracket rules."""
    if isinstance(a, BasisElement):
        a = LinearCombo.single(a)
    if isinstance(b, BasisElement):
        b = LinearCombo.single(b)
    out: dict[BasisElement, Fraction] = {}
    for x, ca in a.items():
        for y, cb in b.items():
            scale = ca * cb
            for el, coeff in spec.gen_bracket(x, y):
                out[el] = out.get(el, _ZERO) + scale * coeff
    return LinearCombo(out)


def enumerate_basis(
    spec: AlgebraSpec, w: Window | int, degree: int | None = None
) -> list[BasisElement]:
    """All in-window generators, family declaration order then index ascending."""
    w = Window.of(w)
    out = []
    for fam in spec.families:
        for i in w.indices():
            if degree is None or i == degree:
                out.append(BasisElement(fam, i))
    return out


Violation = tuple[tuple[BasisElement, BasisElement, BasisElement], LinearCombo, LinearCombo]


@dataclass
class LeibnizReport:
    """Outcome of checking [x,[y,z]] = [[x,y],z] - [[x,z],y] on a window."""

    violations: list[Violation]
    checked: int
    skipped: int

    @property
    def ok(self) -> bool:
        return not self.violations


def _pair_cache(
    spec: AlgebraSpec, gens: Sequence[BasisElement]
) -> dict[tuple[BasisElement, BasisElement], tuple[tuple[BasisElement, Fraction], ...]]:
    return {(x, y): spec.gen_bracket(x, y) for x in gens for y in gens}


def check_leibniz(spec: AlgebraSpec, w: Window | int) -> LeibnizReport:
    """Verify the Leibniz identity on every fully in-window generator triple.

    Triples whose brackets produce a nonzero term with index outside the
    window are skipped (and counted): those failures would be truncation
    artifacts, not identity violations.
    """
    w = Window.of(w)
    bound = w.n
    gens = enumerate_basis(spec, w)
    cache = _pair_cache(spec, gens)
    violations: list[Violation] = []
    checked = 0
    skipped = 0

    for x in gens:
        xi = x.index
        for y in gens:
            yj = y.index
            xy = cache[(x, y)]
            if xy and abs(xi + yj) > bound:
                skipped += len(gens)
                continue
            for z in gens:
                zk = z.index
                yz = cache[(y, z)]
                if yz and abs(yj + zk) > bound:
                    skipped += 1
                    continue
                xz = cache[(x, z)]
                if xz and abs(xi + zk) > bound:
                    skipped += 1
                    continue
                if not (yz or xy or xz):
                    checked += 1
                    continue
                lhs: dict[BasisElement, Fraction] = {}
                for t, c in yz:
                    for u, c2 in cache[(x, t)]:
                        lhs[u] = lhs.get(u, _ZERO) + c * c2
                rhs: dict[BasisElement, Fraction] = {}
                for t, c in xy:
                    for u, c2 in cache[(t, z)]:
                        rhs[u] = rhs.get(u, _ZERO) + c * c2
                for t, c in xz:
                    for u, c2 in cache[(t, y)]:
                        rhs[u] = rhs.get(u, _ZERO) - c * c2
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if (lhs or rhs) and abs(xi + yj + zk) > bound:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    violations.append(((x, y, z), LinearCombo(lhs), LinearCombo(rhs)))
    return LeibnizReport(violations, checked, skipped)
