"""Seeded random rule-file generator for parser round-trip tests."""

import random
from fractions import Fraction

FAMILY_POOL = ["A", "B", "Cc", "D2", "E_x", "G", "H"]


def random_poly_text(rng: random.Random) -> str:
    """A parenthesized random polynomial in n and m with rational literals."""
    terms = []
    for _ in range(rng.randint(1, 3)):
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        bits = []
        if coeff.denominator != 1 or abs(coeff.numerator) != 1 or rng.random() < 0.5:
            bits.append(f"{abs(coeff.numerator)}/{coeff.denominator}" if coeff.denominator != 1 else str(abs(coeff.numerator)))
        for var in ("n", "m"):
            e = rng.randint(0, 2)
            if e == 1:
                bits.append(var)
            elif e == 2:
                bits.append(f"{var}^2")
        if not bits:
            bits.append(str(abs(coeff.numerator)) if coeff.numerator else "0")
        sign = "-" if coeff < 0 else ("+" if terms else "")
        term = " * ".join(bits)
        terms.append(f"{sign} {term}".strip() if sign else term)
    return "(" + " ".join(terms) + ")"


def random_rule_file(rng: random.Random) -> str:
    """DSL text with random families and rules; valid by construction."""
    families = rng.sample(FAMILY_POOL, rng.randint(1, 4))
    closure = rng.random() < 0.5
    lines = [f"algebra random-{rng.randint(0, 999)}"]
    lines.append("families " + " ".join(families))
    if closure:
        lines.append("closure antisymmetric")
    pairs = [(a, b) for a in families for b in families]
    rng.shuffle(pairs)
    for left, right in pairs[: rng.randint(0, len(pairs))]:
        if closure and left == right:
            # diagonal rules must be odd under swap: use c * (m - n) * poly(symmetric-ish)
            coeff = rng.randint(1, 3)
            text = f"({coeff} * (m - n))"
        else:
            text = random_poly_text(rng)
        n_targets = rng.randint(1, 2)
        terms = " + ".join(f"{text} {rng.choice(families)}" for _ in range(n_targets))
        lines.append(f"bracket {left} {right} -> {terms}")
        if closure:
            # never write the mirrored pair as well; closure derives it
            pairs = [p for p in pairs if p != (right, left)]
    # sprinkle comments and blank lines
    if rng.random() < 0.5:
        lines.insert(rng.randint(0, len(lines)), "# a comment line")
        lines.append("")
    return "\n".join(lines) + "\n"
