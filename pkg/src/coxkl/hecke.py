"""
The Hecke algebra of a finite Coxeter system and its Kazhdan-Lusztig basis.

Conventions.  We work throughout in the v-normalization: the standard basis
{H_x} satisfies

    H_s^2 = H_e + (v^-1 - v) H_s,

the bar involution sends v to v^-1 and H_x to (H_{x^-1})^-1, and the KL basis
element uH(x) is the unique bar-invariant element

    uH(x) = H_x + sum_{y < x} h_{y,x}(v) H_y,     h_{y,x} in v*Z[v].

The classical q-polynomials are recovered through
h_{y,x}(v) = v^(l(x)-l(y)) P_{y,x}(v^-2); equivalently P_{y,x}(q) =
sum_i h^i_{y,x} q^((l(x)-l(y)-i)/2), where h^i is the coefficient of v^i.
(In the q^(1/2)-normalization of Kazhdan-Lusztig's C'_x basis the same
numbers appear as C'_x = sum h^i_{y,x} q^(-i/2) T~_y; only the v-form is
implemented.)

KL elements are computed by the standard recursion on the smallest left
descent and memoized; the memo table can be persisted to a JSON cache keyed
by a hash of the Coxeter matrix and generator order.
"""
from __future__ import annotations

import json
from types import MappingProxyType
from typing import Iterable, Mapping

from .coxeter import CoxeterError, CoxeterSystem, Element
from .laurent import LaurentPoly

__all__ = ["MalformedKL", "HeckeElt", "HeckeAlgebra", "CACHE_SCHEMA"]

CACHE_SCHEMA = 1


class MalformedKL(RuntimeError):
    """An h-polynomial violates the KL degree or parity constraints (a bug)."""


def _acc(dst: dict[int, int], src: Mapping[int, int], shift: int, factor: int) -> None:
    # dst += factor * v^shift * src, dropping zeros.
    for e, c in src.items():
        k = e + shift
        n = dst.get(k, 0) + c * factor
        if n:
            dst[k] = n
        else:
            dst.pop(k, None)


class HeckeElt:
    """A finite sum  sum_y c_y(v) H_y  in the standard basis.

    Immutable; ``terms`` maps canonical elements to nonzero Laurent
    polynomials.  Addition, subtraction and scalar multiplication are
    coefficient-wise; ``*`` between two elements is the Hecke product.
    """

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[Element, LaurentPoly]):
        clean: dict[Element, LaurentPoly] = {}
        for el, p in sorted(terms.items(), key=lambda kv: kv[0].sort_key):
            system._id(el)
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.monomial(0, p)
            if p:
                clean[el] = p
        self.system = system
        self._terms = clean

    @classmethod
    def standard(cls, system: CoxeterSystem, x: Element) -> HeckeElt:
        """The standard basis element H_x."""
        return cls(system, {x: LaurentPoly.one()})

    @property
    def terms(self) -> Mapping[Element, LaurentPoly]:
        return MappingProxyType(self._terms)

    def coeff(self, x: Element) -> LaurentPoly:
        return self._terms.get(x, LaurentPoly.zero())

    def support(self) -> tuple[Element, ...]:
        return tuple(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple((el.word, p.pairs()) for el, p in self._terms.items()))

    def __add__(self, other: HeckeElt) -> HeckeElt:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        out = dict(self._terms)
        for el, p in other._terms.items():
            out[el] = out.get(el, LaurentPoly.zero()) + p
        return HeckeElt(self.system, out)

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return HeckeElt(self.system, {el: p * other for el, p in self._terms.items()})
        if isinstance(other, HeckeElt):
            return self._product(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.__mul__(other)
        return NotImplemented

    def mul_by_gen(self, s: int, side: str = "right") -> HeckeElt:
        """Multiply by the generator H_s on the given side.

        H_y H_s = H_{ys} when ys > y and H_{ys} + (v^-1 - v) H_y otherwise;
        the left case is symmetric.
        """
        W = self.system
        if not 0 <= s < W.rank:
            raise CoxeterError(f"generator index {s} out of range")
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        table = W._right if side == "right" else W._left
        lengths = W._lengths
        out: dict[int, dict[int, int]] = {}
        for el, p in self._terms.items():
            yi = W._id(el)
            ti = table[yi][s]
            _acc(out.setdefault(ti, {}), p._c, 0, 1)
            if lengths[ti] < lengths[yi]:
                d = out.setdefault(yi, {})
                _acc(d, p._c, -1, 1)
                _acc(d, p._c, 1, -1)
        return _from_raw(W, out)

    def _product(self, other: HeckeElt) -> HeckeElt:
        if self.system is not other.system:
            raise CoxeterError("cannot multiply elements over different systems")
        W = self.system
        right = W._right
        lengths = W._lengths
        # self * H_y is computed by folding mul_by_gen along a reduced word
        # of y, then scaled by c_y and accumulated.
        start = {W._id(el): dict(p._c) for el, p in self._terms.items()}
        total: dict[int, dict[int, int]] = {}
        for el, p in other._terms.items():
            cur = start
            for s in el.word:
                nxt: dict[int, dict[int, int]] = {}
                for yi, poly in cur.items():
                    ti = right[yi][s]
                    _acc(nxt.setdefault(ti, {}), poly, 0, 1)
                    if lengths[ti] < lengths[yi]:
                        d = nxt.setdefault(yi, {})
                        _acc(d, poly, -1, 1)
                        _acc(d, poly, 1, -1)
                cur = {yi: d for yi, d in nxt.items() if d}
            for yi, poly in cur.items():
                d = total.setdefault(yi, {})
                for e2, c2 in p._c.items():
                    _acc(d, poly, e2, c2)
        return _from_raw(W, total)

    def bar(self) -> HeckeElt:
        """The bar involution: v -> v^-1 and H_x -> (H_{x^-1})^-1.

        Computed additively from bar(H_s) = H_s + (v - v^-1) H_e folded along
        the reduced word of each support element.
        """
        W = self.system
        right = W._right
        lengths = W._lengths
        total: dict[int, dict[int, int]] = {}
        for el, p in self._terms.items():
            cur: dict[int, dict[int, int]] = {0: {0: 1}}
            for s in el.word:
                # Multiply on the right by bar(H_s) = H_s + (v - v^-1) H_e.
                nxt: dict[int, dict[int, int]] = {}
                for yi, poly in cur.items():
                    ti = right[yi][s]
                    _acc(nxt.setdefault(ti, {}), poly, 0, 1)
                    if lengths[ti] > lengths[yi]:
                        d = nxt.setdefault(yi, {})
                        _acc(d, poly, 1, 1)
                        _acc(d, poly, -1, -1)
                    # descending case: (v^-1 - v) from the quadratic relation
                    # cancels the (v - v^-1) scalar term, leaving H_{ys} alone
                cur = {yi: d for yi, d in nxt.items() if d}
            barp = {-e: c for e, c in p._c.items()}
            for yi, poly in cur.items():
                d = total.setdefault(yi, {})
                for e2, c2 in barp.items():
                    _acc(d, poly, e2, c2)
        return _from_raw(W, total)

    def __repr__(self) -> str:
        W = self.system
        if not self._terms:
            return "HeckeElt(0)"
        bits = [f"({p})H[{W.format_element(el)}]" for el, p in self._terms.items()]
        return "HeckeElt(" + " + ".join(bits) + ")"


def _from_raw(system: CoxeterSystem, raw: dict[int, dict[int, int]]) -> HeckeElt:
    return HeckeElt(
        system,
        {system._el(i): LaurentPoly._raw(d) for i, d in raw.items() if d},
    )


class HeckeAlgebra:
    """KL basis machinery over one Coxeter system, with a memoized table.

    The memo maps x to the full coefficient family {h_{y,x}}.  It can be
    loaded from and saved to a JSON cache file; a cache whose fingerprint
    does not match the system is ignored rather than migrated.

    The memo behaves as a concurrent memo table: entries are stored only
    once fully built, the result is independent of interleaving, and
    concurrent callers at worst duplicate work.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        # xid -> yid -> {exponent: coefficient}; entries are frozen once stored.
        self._h: dict[int, dict[int, dict[int, int]]] = {}
        self.computed_count = 0
        self.persisted = False  # True once backed by a cache file

    # -- KL recursion ---------------------------------------------------

    def _kl_raw(self, xi: int) -> dict[int, dict[int, int]]:
        got = self._h.get(xi)
        if got is not None:
            return got
        W = self.system
        left = W._left
        lengths = W._lengths
        word = W._words[xi]
        if not word:
            res: dict[int, dict[int, int]] = {xi: {0: 1}}
        else:
            # Pivot on the smallest left descent s (the first letter of the
            # ShortLex word); with u = sx the product uH(s) uH(u) equals
            # uH(x) + sum of mu(z, u) uH(z) over z < u with sz < z.
            s = word[0]
            ui = left[xi][s]
            C = self._kl_raw(ui)
            T: dict[int, dict[int, int]] = {}
            for yi, p in C.items():
                syi = left[yi][s]
                _acc(T.setdefault(syi, {}), p, 0, 1)
                up = lengths[syi] > lengths[yi]
                _acc(T.setdefault(yi, {}), p, 1 if up else -1, 1)
            for zi, p in C.items():
                if lengths[left[zi][s]] < lengths[zi]:
                    m = p.get(1, 0)
                    if m:
                        for wi, pw in self._kl_raw(zi).items():
                            _acc(T.setdefault(wi, {}), pw, 0, -m)
            res = {yi: d for yi, d in T.items() if d}
            assert res[xi] == {0: 1}, "KL element must be unitriangular"
            assert all(
                min(d) >= 1 and all((e - lengths[xi] + lengths[yi]) % 2 == 0 for e in d)
                for yi, d in res.items()
                if yi != xi
            ), "h-polynomials must lie in v*Z[v] with the length parity"
        self._h[xi] = res
        self.computed_count += 1
        return res

    def kl_element(self, x: Element) -> HeckeElt:
        """The bar-invariant basis element uH(x) = sum_y h_{y,x}(v) H_y."""
        xi = self.system._id(x)
        return _from_raw(self.system, {yi: dict(d) for yi, d in self._kl_raw(xi).items()})

    def kl_table(self) -> None:
        """Compute (or finish computing) uH(x) for every x in the group."""
        for xi in range(self.system.order):
            self._kl_raw(xi)

    def h_poly(self, y: Element, x: Element) -> LaurentPoly:
        """h_{y,x}(v): the H_y-coefficient of uH(x); zero unless y <= x."""
        W = self.system
        yi, xi = W._id(y), W._id(x)
        d = self._kl_raw(xi).get(yi)
        return LaurentPoly(d) if d else LaurentPoly.zero()

    def kl_polynomial(self, y: Element, x: Element) -> LaurentPoly:
        """P_{y,x}(q), from h_{y,x}(v) = v^(l(x)-l(y)) P_{y,x}(v^-2)."""
        h = self.h_poly(y, x)
        d = x.length - y.length
        out: dict[int, int] = {}
        for i, c in h.pairs():
            j = d - i
            if j < 0 or j % 2:
                raise MalformedKL(f"h_poly({y!r}, {x!r}) = {h} is not a valid KL family member")
            out[j // 2] = c
        return LaurentPoly(out)

    def mu(self, y: Element, x: Element) -> int:
        """The coefficient of v in h_{y,x}; drives the recursion."""
        return self.h_poly(y, x).coeff(1)

    # -- basis conversion -------------------------------------------------

    def to_kl_basis(self, a: HeckeElt) -> dict[Element, LaurentPoly]:
        """Coefficients c_x with a = sum_x c_x(v) uH(x).

        Works by peeling the maximal-length support: those coefficients are
        already final because every uH(x) is unitriangular in length.
        """
        if a.system is not self.system:
            raise CoxeterError("element does not belong to this algebra's system")
        W = self.system
        rem = {W._id(el): dict(p._c) for el, p in a.terms.items()}
        out: dict[int, dict[int, int]] = {}
        while rem:
            top = max(W._lengths[yi] for yi in rem)
            layer = [yi for yi in rem if W._lengths[yi] == top]
            for xi in layer:
                c = rem.pop(xi)
                out[xi] = c
                for yi, hp in self._kl_raw(xi).items():
                    if yi == xi:
                        continue
                    d = rem.setdefault(yi, {})
                    for e2, c2 in c.items():
                        _acc(d, hp, e2, -c2)
            rem = {yi: d for yi, d in rem.items() if d}
        return {
            W._el(xi): LaurentPoly(d)
            for xi, d in sorted(out.items(), key=lambda kv: W._el(kv[0]).sort_key)
        }

    def bott_samelson(self, word: Iterable[int]) -> dict[Element, LaurentPoly]:
        """KL-basis decomposition of the product uH(s_1) ... uH(s_k).

        The coefficients are the graded multiplicities with which the
        indecomposable objects indexed by group elements occur in the
        corresponding iterated tensor (Bott-Samelson) object.
        """
        W = self.system
        acc = HeckeElt.standard(W, W.identity)
        for s in word:
            acc = acc.mul_by_gen(s) + LaurentPoly.monomial(1) * acc
        return self.to_kl_basis(acc)

    # -- persistence -------------------------------------------------------

    def save_cache(self, path) -> None:
        """Write the memo table as deterministic JSON (sorted keys)."""
        W = self.system
        kl = {
            W.format_element(W._el(xi)): {
                W.format_element(W._el(yi)): [[e, c] for e, c in sorted(d.items())]
                for yi, d in table.items()
            }
            for xi, table in self._h.items()
        }
        blob = json.dumps(
            {"schema": CACHE_SCHEMA, "coxeter_hash": W.fingerprint, "kl": kl},
            sort_keys=True,
            separators=(",", ":"),
        )
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(blob)
            fh.write("\n")
        self.persisted = True

    def load_cache(self, path) -> bool:
        """Load a cache file; return False (and load nothing) on mismatch.

        A missing file, unreadable JSON, wrong schema or wrong fingerprint
        all just return False: stale caches are ignored, never migrated.
        """
        W = self.system
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return False
        if not isinstance(data, dict) or data.get("schema") != CACHE_SCHEMA:
            return False
        if data.get("coxeter_hash") != W.fingerprint:
            return False
        try:
            loaded: dict[int, dict[int, dict[int, int]]] = {}
            for xw, table in data["kl"].items():
                xi = W._id(W.parse_element(xw))
                loaded[xi] = {
                    W._id(W.parse_element(yw)): {int(e): int(c) for e, c in pairs if int(c)}
                    for yw, pairs in table.items()
                }
        except (CoxeterError, KeyError, TypeError, ValueError):
            return False
        self._h.update(loaded)
        self.persisted = True
        return True
