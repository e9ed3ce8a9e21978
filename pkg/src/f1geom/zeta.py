"""Counting polynomials N(q) and their zeta root data.

A counting polynomial N(q) = sum a_k q^k with integer coefficients turns
into the zeta function prod_k (s - k)^{a_k}, stored as the multiset of
(root, multiplicity) pairs.  The classical 2*pi normalization factor is
dropped throughout and only the root data is kept, so equality testing
is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


class ZetaError(ValueError):
    pass


class NonIntegralFit(ZetaError):
    pass


class InconsistentSamples(ZetaError):
    pass


@dataclass(frozen=True)
class CountingPolynomial:
    """Integer polynomial in q, coefficients stored ascending by degree."""

    coefficients: tuple[int, ...]

    @staticmethod
    def make(coefficients) -> "CountingPolynomial":
        cs = [int(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        return CountingPolynomial(tuple(cs))

    @staticmethod
    def from_qminus1_basis(cs) -> "CountingPolynomial":
        """sum c_r (q-1)^r rewritten in powers of q."""
        out = [0] * (len(cs) or 1)
        for r, c in enumerate(cs):
            for k in range(r + 1):
                out[k] += c * comb(r, k) * (-1) ** (r - k)
        return CountingPolynomial.make(out)

    def to_qminus1_basis(self) -> tuple[int, ...]:
        """Coefficients c_r with N(q) = sum c_r (q-1)^r."""
        out = [0] * (len(self.coefficients) or 1)
        for k, a in enumerate(self.coefficients):
            for r in range(k + 1):
                out[r] += a * comb(k, r)
        while out and out[-1] == 0 and len(out) > 1:
            out.pop()
        return tuple(out) if any(out) else ()

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return CountingPolynomial.make(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return CountingPolynomial.make([other * c for c in self.coefficients])
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return CountingPolynomial.make(out)

    def __sub__(self, other):
        return self + (other * -1)

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                qpow = "q" if k == 1 else f"q^{k}"
                term = qpow if abs(c) == 1 else f"{abs(c)}{qpow}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def q_poly(*coeffs_desc) -> CountingPolynomial:
    """Convenience: q_poly(1, 1, 1) = q^2 + q + 1 (descending)."""
    return CountingPolynomial.make(list(reversed(coeffs_desc)))


def parse_counting_polynomial(text: str) -> CountingPolynomial:
    """Parse a canonical polynomial string like 'q^3 - q' or '2q+1'."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise ZetaError("empty polynomial")
    tokens = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
    tokens.append(cur)
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        elif tok.startswith("+"):
            tok = tok[1:]
        if not tok:
            raise ZetaError(f"cannot parse {text!r}")
        if "q" in tok:
            head, _, tail = tok.partition("q")
            c = int(head) if head else 1
            if tail.startswith("^"):
                k = int(tail[1:])
            elif tail == "":
                k = 1
            else:
                raise ZetaError(f"cannot parse term {tok!r} in {text!r}")
        else:
            c, k = int(tok), 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return CountingPolynomial.make(out)


def fit_counting_polynomial(samples, degree_bound: int) -> CountingPolynomial:
    """Lagrange interpolation through (q, N(q)) samples with an integrality
    check; extra samples beyond degree_bound + 1 must agree exactly."""
    pts = sorted(dict(samples).items())
    if len(pts) < degree_bound + 1:
        raise ZetaError(
            f"need at least {degree_bound + 1} samples for degree {degree_bound}")
    base = pts[: degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for qi, ni in base:
        # Lagrange basis polynomial for qi, accumulated exactly
        basis = [Fraction(1)]
        denom = Fraction(1)
        for qj, _ in base:
            if qj == qi:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] += c * (-qj)
                new[k + 1] += c
            basis = new
            denom *= qi - qj
        for k, c in enumerate(basis):
            coeffs[k] += Fraction(ni) * c / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegralFit(f"interpolant has non-integer coefficients: {coeffs}")
    poly = CountingPolynomial.make([int(c) for c in coeffs])
    for q, n in pts:
        if poly(q) != n:
            raise InconsistentSamples(
                f"sample N({q})={n} disagrees with the fit {poly} = {poly(q)}")
    return poly


@dataclass(frozen=True)
class ZetaFunction:
    """Root data: prod over (root k, multiplicity a_k), exponents may be
    negative (denominator roots)."""

    roots: tuple[tuple[int, int], ...]

    @staticmethod
    def make(root_multiplicities) -> "ZetaFunction":
        agg: dict[int, int] = {}
        for k, m in dict(root_multiplicities).items():
            if m:
                agg[int(k)] = agg.get(int(k), 0) + int(m)
        return ZetaFunction(tuple(sorted((k, m) for k, m in agg.items() if m)))

    def canonical(self) -> str:
        """Machine-canonical product string, every factor spelled out."""
        if not self.roots:
            return "1"
        parts = []
        for k, m in self.roots:
            factor = f"(s-{k})"
            parts.append(factor if m == 1 else f"{factor}^{m}")
        return "".join(parts)

    def __str__(self):
        """Pretty form: s(s-1) style, with s-0 shortened to s."""
        if not self.roots:
            return "1"

        def fmt(k, m, solo):
            base = "s" if k == 0 else f"s-{k}"
            if abs(m) == 1:
                if k == 0:
                    return "s"
                return base if solo else f"({base})"
            return f"s^{abs(m)}" if k == 0 else f"({base})^{abs(m)}"

        num = [(k, m) for k, m in self.roots if m > 0]
        den = [(k, m) for k, m in self.roots if m < 0]
        solo_ok = len(num) == 1 and not den
        top = "".join(fmt(k, m, solo_ok) for k, m in num) if num else "1"
        if not den:
            return top
        return f"{top}/" + "".join(fmt(k, m, False) for k, m in den)


def zeta(N: CountingPolynomial) -> ZetaFunction:
    """Zeta of a counting polynomial: roots k with multiplicity a_k."""
    return ZetaFunction.make({k: a for k, a in enumerate(N.coefficients)})
