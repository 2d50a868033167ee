"""
Hard-Lefschetz consistency checks on Kazhdan-Lusztig data.

For a Bruhat pair y <= x with d = l(x) - l(y) and P = P_{y,x}(q), the local
Lefschetz polynomial is defined as

    (P(q) - q^d * P(1/q)) / (1 - q),

the graded character of the cokernel of the costalk-into-stalk map along the
cell of y, written as a quotient of Hilbert series of free modules over a
polynomial ring with one degree-2 generator.  For honest intersection
cohomology this cokernel is the (shifted) cohomology of a projective variety
carrying a Lefschetz operator, so the polynomial must have nonnegative
coefficients, be palindromic about (d-1)/2 and be unimodal.  Those three
checks are the executable content here; q tracks cohomological degree 2.

The global companion is the graded Poincare polynomial of a Schubert closure,
IP_x(q) = sum_{y <= x} q^l(y) P_{y,x}(q), which must be palindromic about
l(x)/2.  ``lefschetz_audit`` batch-verifies both families over a whole group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import Element
from .hecke import HeckeAlgebra
from .laurent import LaurentPoly

__all__ = [
    "LefschetzReport",
    "IHReport",
    "AuditResult",
    "local_lefschetz_poly",
    "ih_poincare",
    "lefschetz_audit",
]


@dataclass(frozen=True)
class LefschetzReport:
    """Outcome of the local check for one ordered pair (y, x).

    ``poly`` is zero exactly when y = x or the pair is incomparable, in
    which case the three verdicts are vacuously true.
    """

    y: Element
    x: Element
    y_label: str
    x_label: str
    d: int
    poly: LaurentPoly
    palindromic: bool
    unimodal: bool
    nonneg: bool

    @property
    def passed(self) -> bool:
        return self.palindromic and self.unimodal and self.nonneg

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "pair": [self.y_label, self.x_label],
                "d": self.d,
                "poly": [[e, c] for e, c in self.poly.pairs()],
                "palindromic": self.palindromic,
                "unimodal": self.unimodal,
                "nonneg": self.nonneg,
            },
            sort_keys=True,
            separators=(",", ":"),
        )


@dataclass(frozen=True)
class IHReport:
    """Global Poincare-duality verdict for one Schubert closure."""

    x: Element
    x_label: str
    poly: LaurentPoly
    palindromic: bool

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "x": self.x_label,
                "ih": [[e, c] for e, c in self.poly.pairs()],
                "palindromic": self.palindromic,
            },
            sort_keys=True,
            separators=(",", ":"),
        )


@dataclass(frozen=True)
class AuditResult:
    reports: tuple[LefschetzReport, ...]
    ih_reports: tuple[IHReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and all(r.palindromic for r in self.ih_reports)


def local_lefschetz_poly(algebra: HeckeAlgebra, y: Element, x: Element) -> LefschetzReport:
    """Build the local Lefschetz polynomial and its three property verdicts."""
    W = algebra.system
    d = x.length - y.length
    P = algebra.kl_polynomial(y, x)
    numerator = P - P.bar().shift(d)
    poly = numerator.div_exact(LaurentPoly({0: 1, 1: -1})) if numerator else LaurentPoly.zero()
    return LefschetzReport(
        y=y,
        x=x,
        y_label=W.format_element(y),
        x_label=W.format_element(x),
        d=d,
        poly=poly,
        palindromic=poly.is_palindromic(Fraction(d - 1, 2)),
        unimodal=poly.is_unimodal_nonneg(),
        nonneg=all(c >= 0 for _, c in poly.pairs()),
    )


def ih_poincare(algebra: HeckeAlgebra, x: Element) -> LaurentPoly:
    """IP_x(q) = sum over y <= x of q^l(y) * P_{y,x}(q).

    For x the longest element every P is 1 and this is the length generating
    function of the whole group.
    """
    total = LaurentPoly.zero()
    for y in algebra.kl_element(x).support():
        total = total + algebra.kl_polynomial(y, x).shift(y.length)
    return total


def lefschetz_audit(algebra: HeckeAlgebra) -> AuditResult:
    """Run the local check on every comparable pair and the global one everywhere."""
    W = algebra.system
    reports = []
    ih_reports = []
    for x in W.all_elements():
        support = algebra.kl_element(x).support()
        for y in support:
            reports.append(local_lefschetz_poly(algebra, y, x))
        poly = ih_poincare(algebra, x)
        ih_reports.append(
            IHReport(
                x=x,
                x_label=W.format_element(x),
                poly=poly,
                palindromic=poly.is_palindromic(Fraction(x.length, 2)),
            )
        )
    return AuditResult(reports=tuple(reports), ih_reports=tuple(ih_reports))
