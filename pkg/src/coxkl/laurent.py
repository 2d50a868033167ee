"""
Exact integer Laurent polynomials in one variable.

A polynomial is stored sparsely as a map from integer exponent to nonzero
integer coefficient; the zero polynomial has an empty map.  Coefficients are
plain Python ints, so they never overflow.  The same type serves both the
Hecke-algebra variable ``v`` and the Kazhdan-Lusztig variable ``q``; which
letter the exponent tracks is contextual and only matters for display.

>>> v = LaurentPoly.monomial(1)
>>> (v + v**-1) * (v + v**-1)
LaurentPoly('v^-2 + 2 + v^2')
>>> (LaurentPoly.one() - v**2).div_exact(LaurentPoly.one() - v)
LaurentPoly('1 + v')
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = ["InexactDivision", "LaurentPoly"]


class InexactDivision(ArithmeticError):
    """Raised by :meth:`LaurentPoly.div_exact` when no exact quotient exists."""


CoeffSource = Union[Mapping[int, int], Iterable[tuple[int, int]]]


class LaurentPoly:
    """An integer Laurent polynomial, immutable after construction."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: CoeffSource = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if not isinstance(e, int) or isinstance(a, bool) or not isinstance(a, int):
                raise TypeError(f"exponents and coefficients must be ints, got ({e!r}, {a!r})")
            if a:
                na = c.get(e, 0) + a
                if na:
                    c[e] = na
                else:
                    del c[e]
        self._c = c

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls.monomial(0)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        """The monomial ``coeff * v^exp``."""
        return cls({exp: coeff} if coeff else {})

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        # Trusted constructor: `c` must be normalized and never mutated again.
        p = cls.__new__(cls)
        p._c = c
        return p

    # -- inspection ----------------------------------------------------

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All (exponent, coefficient) pairs, sorted by exponent.

        This is also the JSON serialization of a polynomial (a list of
        two-element lists).
        """
        return tuple(sorted(self._c.items()))

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        """Lowest exponent with nonzero coefficient; raises on zero."""
        if not self._c:
            raise ValueError("the zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        """Highest exponent with nonzero coefficient; raises on zero."""
        if not self._c:
            raise ValueError("the zero polynomial has no exponents")
        return max(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    # -- ring structure ------------------------------------------------

    def __add__(self, other: int | LaurentPoly) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            na = c.get(e, 0) + a
            if na:
                c[e] = na
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other: int | LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: int | LaurentPoly) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                na = c.get(e, 0) + a1 * a2
                if na:
                    c[e] = na
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._c) == 1:
                ((e, a),) = self._c.items()
                if a in (1, -1):
                    return LaurentPoly._raw({e * n: a if n % 2 else 1})
            raise ValueError("negative powers exist only for unit monomials")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``v^k`` (exponent shift)."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> LaurentPoly:
        """The substitution ``v -> v^-1`` (negate every exponent)."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def eval_at_one(self) -> int:
        """Sum of all coefficients, i.e. the value at ``v = 1``."""
        return sum(self._c.values())

    # -- predicates ----------------------------------------------------

    def is_palindromic(self, center: int | Fraction) -> bool:
        """True iff ``coeff(center + j) == coeff(center - j)`` for all ``j``.

        ``center`` must be an integer or half-integer (pass a ``Fraction``
        for half-integral centers).
        """
        c2 = 2 * Fraction(center)
        if c2.denominator != 1:
            raise ValueError(f"center must be an integer or half-integer, got {center!r}")
        c2 = int(c2)
        return all(a == self._c.get(c2 - e, 0) for e, a in self._c.items())

    def is_unimodal_nonneg(self) -> bool:
        """True iff coefficients are >= 0 and rise then fall, with no inner gap.

        The coefficient sequence is read densely from the lowest to the
        highest nonzero exponent, so an interior zero between two positive
        coefficients fails the test.  Requires an ordinary polynomial (no
        negative exponents); the zero polynomial passes vacuously.
        """
        if not self._c:
            return True
        lo, hi = self.min_exp, self.max_exp
        if lo < 0:
            raise ValueError("unimodality is defined for ordinary polynomials only")
        seq = [self._c.get(e, 0) for e in range(lo, hi + 1)]
        if any(a < 0 for a in seq):
            return False
        rising = True
        for prev, cur in zip(seq, seq[1:]):
            if rising:
                if cur < prev:
                    rising = False
            elif cur > prev:
                return False
        return True

    # -- division ------------------------------------------------------

    def div_exact(self, other: LaurentPoly) -> LaurentPoly:
        """Return ``c`` with ``self == other * c``; raise if none exists.

        Division proceeds from the lowest exponent; any nonzero remainder
        (including a coefficient that is not divisible over the integers)
        raises :class:`InexactDivision`.
        """
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly divisor, got {other!r}")
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        a_lo, a_hi = self.min_exp, self.max_exp
        b_lo, b_hi = other.min_exp, other.max_exp
        # Dense remainder over the exponent window of `self`.
        rem = [self._c.get(e, 0) for e in range(a_lo, a_hi + 1)]
        div = [other._c.get(e, 0) for e in range(b_lo, b_hi + 1)]
        q_len = len(rem) - len(div) + 1
        if q_len <= 0:
            raise InexactDivision(f"{self} is not divisible by {other}")
        lead = div[0]
        quot = [0] * q_len
        for k in range(q_len):
            r = rem[k]
            if r:
                if r % lead:
                    raise InexactDivision(f"{self} is not divisible by {other}")
                c = quot[k] = r // lead
                for j, b in enumerate(div):
                    rem[k + j] -= c * b
        if any(rem):
            raise InexactDivision(f"{self} is not divisible by {other}")
        return LaurentPoly({a_lo - b_lo + k: c for k, c in enumerate(quot)})

    # -- comparison and display -----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def format(self, var: str = "v") -> str:
        """Render with ascending exponents, e.g. ``1 + 2q + q^3``."""
        if not self._c:
            return "0"
        parts: list[str] = []
        for e, a in sorted(self._c.items()):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                pw = var if e == 1 else f"{var}^{e}"
                body = pw if mag == 1 else f"{mag}{pw}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly('{self.format()}')"


if __name__ == "__main__":
    import doctest

    doctest.testmod()
