"""
Finite Coxeter systems with canonical-form elements.

A system is built from a Coxeter matrix (diagonal 1, off-diagonal entries in
{2,3,4,5,6}).  Construction enumerates the whole group through its reflection
representation and precomputes multiplication-by-generator tables, lengths,
descent sets and inverses, so that every later operation is table lookup.
Elements are identified with their ShortLex-least reduced word under the
generator order fixed at construction; ``all_elements()`` lists them sorted
by (length, word), and every other ordering in the package derives from that.

Infinite matrices are rejected: the diagram is first checked against the
classification of finite types (any diagram outside the catalog presents an
infinite group), and the enumeration itself enforces a configurable element
count bound as a second line of defense.

Matrix entries equal to 5 force golden-ratio arithmetic in the reflection
representation; scalars are therefore pairs (a, b) meaning a + b*phi with
phi^2 = phi + 1, which stays exact over plain ints for every allowed entry.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import LaurentPoly

__all__ = [
    "CoxeterError",
    "InfiniteGroupError",
    "Element",
    "Coset",
    "CoxeterSystem",
]

DEFAULT_MAX_ELEMENTS = 10**7


class CoxeterError(ValueError):
    """Invalid Coxeter matrix or element data."""


class InfiniteGroupError(CoxeterError):
    """The Coxeter matrix presents an infinite group (or exceeds the bound)."""


@dataclass(frozen=True)
class Element:
    """A group element in canonical form.

    ``word`` is the ShortLex-least reduced word (a tuple of generator
    indices); the Coxeter length is its length.  Equality and hashing go
    through the word, so elements compare correctly across system instances
    built from the same matrix.
    """

    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Sorting key giving the canonical (length, ShortLex) order."""
        return (len(self.word), self.word)

    def __repr__(self) -> str:
        return f"Element({'.'.join(map(str, self.word)) or 'e'})"


@dataclass(frozen=True)
class Coset:
    """A coset ``a * W_I`` of a standard parabolic subgroup.

    ``elements`` is sorted by (length, word); ``min_rep`` and ``max_rep`` are
    the unique representatives of minimal and maximal length.
    """

    min_rep: Element
    max_rep: Element
    elements: tuple[Element, ...]

    def __contains__(self, el: object) -> bool:
        return el in self.elements


# ---------------------------------------------------------------------------
# Finite-type catalog
# ---------------------------------------------------------------------------
#
# Classification of the connected diagrams (all bond labels in {3,..,6}) that
# present finite groups.  Anything else is infinite, which lets construction
# reject e.g. affine matrices without enumerating to the element bound.

_FIXED_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}


def _classify_component(verts: list[int], edges: dict[tuple[int, int], int]) -> tuple[str, int] | None:
    """Return (type label, group order) for a connected diagram, or None."""
    k = len(verts)
    if k == 1:
        return ("A1", 2)
    if len(edges) != k - 1:
        return None  # connected with a cycle
    deg = {v: 0 for v in verts}
    for u, w in edges:
        deg[u] += 1
        deg[w] += 1
    if max(deg.values()) > 3:
        return None
    branch = [v for v in verts if deg[v] == 3]
    big = [(e, m) for e, m in edges.items() if m > 3]
    if len(branch) > 1:
        return None
    if len(branch) == 1:
        if big:
            return None
        # Arm lengths (in edges) from the branch vertex.
        adj = {v: [] for v in verts}
        for u, w in edges:
            adj[u].append(w)
            adj[w].append(u)
        arms = []
        for start in adj[branch[0]]:
            n, prev, cur = 1, branch[0], start
            while deg[cur] == 2:
                nxt = next(x for x in adj[cur] if x != prev)
                prev, cur, n = cur, nxt, n + 1
            arms.append(n)
        p, q, r = sorted(arms)
        if p == 1 and q == 1:
            return (f"D{k}", 2 ** (k - 1) * math.factorial(k))
        if p == 1 and q == 2 and 2 <= r <= 4:
            label = f"E{k}"
            return (label, _FIXED_ORDERS[label])
        return None
    # Path.
    if not big:
        return (f"A{k}", math.factorial(k + 1))
    if len(big) > 1:
        return None
    ((u, w), m) = big[0]
    if k == 2:
        label = {4: "B2", 5: "H2", 6: "G2"}[m]
        return (label, 2 * m)
    terminal = deg[u] == 1 or deg[w] == 1
    if m == 4:
        if terminal:
            return (f"B{k}", 2**k * math.factorial(k))
        if k == 4:
            return ("F4", _FIXED_ORDERS["F4"])
        return None
    if m == 5 and terminal and k in (3, 4):
        label = f"H{k}"
        return (label, _FIXED_ORDERS[label])
    return None


def _classify_matrix(matrix: Sequence[Sequence[int]]) -> tuple[str, int] | None:
    """Classify a full Coxeter matrix; None if the group is infinite."""
    n = len(matrix)
    seen: set[int] = set()
    labels: list[str] = []
    order = 1
    for start in range(n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for t in range(n):
                if t not in seen and matrix[u][t] >= 3:
                    seen.add(t)
                    comp.append(t)
                    stack.append(t)
        edges = {
            (u, w): matrix[u][w]
            for i, u in enumerate(comp)
            for w in comp[i + 1 :]
            if matrix[u][w] >= 3
        }
        got = _classify_component(comp, edges)
        if got is None:
            return None
        labels.append(got[0])
        order *= got[1]
    labels.sort()
    return ("x".join(labels), order)


# ---------------------------------------------------------------------------
# Built-in matrices
# ---------------------------------------------------------------------------


def _builtin_matrix(code: str) -> list[list[int]]:
    code = code.strip().upper()
    if len(code) < 2 or code[0] not in "ABDGFH" or not code[1:].isdigit():
        raise CoxeterError(f"unknown type code {code!r} (expected e.g. A3, B2, D4, G2, F4, H3)")
    letter, n = code[0], int(code[1:])
    mins = {"A": 1, "B": 2, "D": 2, "G": 2, "F": 4, "H": 3}
    fixed = {"G": 2, "F": 4, "H": 3}
    if n < mins[letter] or (letter in fixed and n != fixed[letter]):
        raise CoxeterError(f"unsupported rank for type {letter}: {code!r}")
    m = [[3 if abs(i - j) == 1 else (1 if i == j else 2) for j in range(n)] for i in range(n)]
    if letter == "B":
        m[n - 2][n - 1] = m[n - 1][n - 2] = 4
    elif letter == "D":
        if n >= 3:
            m[n - 2][n - 1] = m[n - 1][n - 2] = 2
            m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        else:
            m[0][1] = m[1][0] = 2
    elif letter == "G":
        m[0][1] = m[1][0] = 6
    elif letter == "F":
        m[1][2] = m[2][1] = 4
    elif letter == "H":
        m[0][1] = m[1][0] = 5
    return m


def _default_names(rank: int) -> tuple[str, ...]:
    # Rank <= 2 uses the textbook letters s, t; larger ranks use s1, s2, ...
    if rank == 1:
        return ("s",)
    if rank == 2:
        return ("s", "t")
    return tuple(f"s{i + 1}" for i in range(rank))


def _uniquely_decodable(names: Sequence[str]) -> bool:
    """Sardinas-Patterson test: no concatenation of names parses two ways."""
    codes = set(names)
    suffixes: set[str] = set()
    for a in codes:
        for b in codes:
            if a != b and b.startswith(a):
                suffixes.add(b[len(a) :])
    seen: set[str] = set()
    while suffixes - seen:
        seen |= suffixes
        nxt: set[str] = set()
        for d in suffixes:
            if d in codes:
                return False
            for c in codes:
                if c.startswith(d):
                    nxt.add(c[len(d) :])
                elif d.startswith(c):
                    nxt.add(d[len(c) :])
        suffixes = nxt - {""}
    return True


# ---------------------------------------------------------------------------
# CoxeterSystem
# ---------------------------------------------------------------------------


class CoxeterSystem:
    """A finite Coxeter group with precomputed Cayley tables.

    Immutable after construction apart from a lazily filled Bruhat-order
    memo, whose entries are idempotent booleans; concurrent readers may
    duplicate work but always observe consistent values.

    >>> W = CoxeterSystem.from_type("A2")
    >>> W.order
    6
    >>> [W.format_element(x) for x in W.all_elements()]
    ['e', 's', 't', 'st', 'ts', 'sts']
    """

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        names: Sequence[str] | None = None,
        *,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
    ):
        self._matrix = self._validate_matrix(matrix)
        self.rank = len(self._matrix)
        self.generator_names = self._validate_names(names, self.rank)
        classified = _classify_matrix(self._matrix)
        if classified is None:
            raise InfiniteGroupError(
                "the Coxeter matrix presents an infinite group (diagram outside the finite catalog)"
            )
        self.type_label, expected_order = classified
        self._enumerate(max_elements)
        assert self.order == expected_order, "enumeration disagrees with the catalog order"
        self._bruhat_cache: dict[tuple[int, int], bool] = {}

    # -- construction helpers -------------------------------------------

    @staticmethod
    def _validate_matrix(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        rows = tuple(tuple(row) for row in matrix)
        n = len(rows)
        if n == 0:
            raise CoxeterError("rank must be positive")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CoxeterError(f"matrix is not square: row {i} has length {len(row)}")
            for j, m in enumerate(row):
                if isinstance(m, bool) or not isinstance(m, int):
                    raise CoxeterError(f"matrix entries must be ints, got {m!r}")
                if i == j:
                    if m != 1:
                        raise CoxeterError(f"diagonal entry m({i},{i}) must be 1, got {m}")
                elif m not in (2, 3, 4, 5, 6):
                    raise CoxeterError(
                        f"off-diagonal entry m({i},{j}) must lie in 2..6, got {m}"
                    )
                elif rows[j][i] != m:
                    raise CoxeterError(f"matrix is not symmetric at ({i},{j})")
        return rows

    @staticmethod
    def _validate_names(names: Sequence[str] | None, rank: int) -> tuple[str, ...]:
        if names is None:
            return _default_names(rank)
        out = tuple(names)
        if len(out) != rank:
            raise CoxeterError(f"expected {rank} generator names, got {len(out)}")
        for name in out:
            if not name or not isinstance(name, str) or name == "e" or "," in name or " " in name:
                raise CoxeterError(f"bad generator name {name!r}")
        if len(set(out)) != rank:
            raise CoxeterError("generator names must be distinct")
        if not _uniquely_decodable(out):
            raise CoxeterError(
                f"generator names {out!r} are ambiguous when concatenated into words"
            )
        return out

    def _enumerate(self, max_elements: int) -> None:
        n = self.rank
        # Cartan-style pairing a[s][t] as (int, phi) pairs: a_ss = 2 and for a
        # bond of label m the two directed entries multiply to 4cos^2(pi/m).
        # Asymmetric integer choices are fine on forest diagrams; label 5
        # needs the golden ratio on both sides.
        pair_for = {3: ((-1, 0), (-1, 0)), 4: ((-1, 0), (-2, 0)), 5: ((0, -1), (0, -1)), 6: ((-1, 0), (-3, 0))}
        updates: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for s in range(n):
            updates[s].append((s, 2, 0))
            for t in range(n):
                m = self._matrix[s][t]
                if s != t and m >= 3:
                    a = pair_for[m][0] if s < t else pair_for[m][1]
                    updates[s].append((t, a[0], a[1]))

        ident = [0] * (2 * n * n)
        for i in range(n):
            ident[2 * (i * n + i)] = 1
        ident_t = tuple(ident)

        def apply_right(state: tuple[int, ...], s: int) -> tuple[int, ...]:
            # Right multiplication by the reflection s: every column j with
            # a_sj != 0 picks up -a_sj times column s.
            out = list(state)
            for j, ca, cb in updates[s]:
                for i in range(n):
                    si = 2 * (i * n + s)
                    xa, xb = state[si], state[si + 1]
                    base = 2 * (i * n + j)
                    out[base] -= ca * xa + cb * xb
                    out[base + 1] -= ca * xb + cb * xa + cb * xb
            return tuple(out)

        index: dict[tuple[int, ...], int] = {ident_t: 0}
        states = [ident_t]
        words: list[tuple[int, ...]] = [()]
        right: list[list[int]] = []
        e = 0
        while e < len(states):
            row = [0] * n
            st = states[e]
            for s in range(n):
                img = apply_right(st, s)
                i = index.get(img)
                if i is None:
                    i = len(states)
                    if i >= max_elements:
                        raise InfiniteGroupError(
                            f"enumeration exceeded the element bound {max_elements}"
                        )
                    index[img] = i
                    states.append(img)
                    words.append(words[e] + (s,))
                row[s] = i
            right.append(row)
            e += 1

        order = len(states)
        self._words = words
        self._lengths = [len(w) for w in words]
        self._right = right
        self._elements = tuple(Element(w) for w in words)
        self._index_by_word = {w: i for i, w in enumerate(words)}

        # Inverses: the reversed word of x spells x^{-1}.
        inv = [0] * order
        for i, w in enumerate(words):
            j = 0
            for s in reversed(w):
                j = right[j][s]
            inv[i] = j
        self._inv = inv

        # Left table via (s x)^{-1} = x^{-1} s.
        self._left = [[inv[right[inv[i]][s]] for s in range(n)] for i in range(order)]

        lengths = self._lengths
        self._rdesc = [
            frozenset(s for s in range(n) if lengths[right[i][s]] < lengths[i])
            for i in range(order)
        ]
        self._ldesc = [
            frozenset(s for s in range(n) if lengths[self._left[i][s]] < lengths[i])
            for i in range(order)
        ]

    # -- alternate constructors -----------------------------------------

    @classmethod
    def from_type(cls, code: str, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CoxeterSystem:
        """Build a standard system from a type code such as "A3" or "H3"."""
        return cls(_builtin_matrix(code), max_elements=max_elements)

    @classmethod
    def from_json(cls, data: dict, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CoxeterSystem:
        """Build from the JSON shape {"rank": n, "matrix": [[..]], "names": [..]}."""
        try:
            rank = data["rank"]
            matrix = data["matrix"]
        except (TypeError, KeyError) as exc:
            raise CoxeterError(f"matrix JSON needs 'rank' and 'matrix' keys: {exc}")
        if len(matrix) != rank:
            raise CoxeterError(f"declared rank {rank} but matrix has {len(matrix)} rows")
        return cls(matrix, data.get("names"), max_elements=max_elements)

    @classmethod
    def from_json_file(cls, path, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CoxeterSystem:
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), max_elements=max_elements)

    # -- basic accessors -------------------------------------------------

    @property
    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        return self._matrix

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def identity(self) -> Element:
        return self._elements[0]

    @property
    def generators(self) -> tuple[Element, ...]:
        return tuple(self._elements[self._right[0][s]] for s in range(self.rank))

    @property
    def fingerprint(self) -> str:
        """Hash of the matrix plus generator order; keys persisted caches."""
        blob = json.dumps(
            {"matrix": [list(r) for r in self._matrix], "names": list(self.generator_names)},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.type_label}, order {self.order})"

    def _id(self, el: Element) -> int:
        i = self._index_by_word.get(el.word)
        if i is None:
            raise CoxeterError(f"{el!r} is not a canonical element of {self!r}")
        return i

    def _el(self, i: int) -> Element:
        return self._elements[i]

    # -- words and parsing ------------------------------------------------

    def element(self, word: Iterable[int]) -> Element:
        """Canonicalize an arbitrary word in generator indices."""
        i = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise CoxeterError(f"generator index {s} out of range")
            i = self._right[i][s]
        return self._elements[i]

    def generator_index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise CoxeterError(f"unknown generator name {name!r}") from None

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Tokenize concatenated generator names into indices; "e" is empty.

        Name sets are validated to be uniquely decodable, so a parsable word
        has exactly one tokenization; this finds it by dynamic programming
        over string positions.
        """
        if text == "e" or text == "":
            return ()
        n = len(text)
        # parent[pos] = (previous position, generator index) on a parse path.
        parent: list[tuple[int, int] | None] = [None] * (n + 1)
        reachable = [False] * (n + 1)
        reachable[0] = True
        for pos in range(n):
            if not reachable[pos]:
                continue
            for idx, name in enumerate(self.generator_names):
                end = pos + len(name)
                if end <= n and not reachable[end] and text.startswith(name, pos):
                    reachable[end] = True
                    parent[end] = (pos, idx)
        if not reachable[n]:
            raise CoxeterError(f"cannot parse element word {text!r}")
        word: list[int] = []
        pos = n
        while pos:
            prev, idx = parent[pos]
            word.append(idx)
            pos = prev
        return tuple(reversed(word))

    def parse_element(self, text: str) -> Element:
        """Parse a word of concatenated generator names; "e" is the identity."""
        return self.element(self.parse_word(text))

    def format_element(self, el: Element) -> str:
        """Inverse of :meth:`parse_element` on canonical elements."""
        self._id(el)
        if not el.word:
            return "e"
        return "".join(self.generator_names[s] for s in el.word)

    # -- group operations --------------------------------------------------

    def multiply(self, a: Element, b: Element) -> Element:
        i = self._id(a)
        self._id(b)
        for s in b.word:
            i = self._right[i][s]
        return self._elements[i]

    def inverse(self, a: Element) -> Element:
        return self._elements[self._inv[self._id(a)]]

    def apply_gen(self, a: Element, s: int, side: str = "right") -> Element:
        if not 0 <= s < self.rank:
            raise CoxeterError(f"generator index {s} out of range")
        table = self._right if side == "right" else self._left
        return self._elements[table[self._id(a)][s]]

    def descents(self, a: Element, side: str = "right") -> frozenset[int]:
        """Generator indices s with l(as) < l(a) (or l(sa) < l(a) on the left)."""
        if side == "right":
            return self._rdesc[self._id(a)]
        if side == "left":
            return self._ldesc[self._id(a)]
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def all_elements(self) -> tuple[Element, ...]:
        """Every element once, sorted by (length, ShortLex word)."""
        return self._elements

    def bruhat_leq(self, y: Element, x: Element) -> bool:
        """Bruhat order, via the descent recursion on the left."""
        return self._bruhat_leq(self._id(y), self._id(x))

    def _bruhat_leq(self, yi: int, xi: int) -> bool:
        lengths = self._lengths
        if lengths[yi] > lengths[xi]:
            return False
        if lengths[yi] == lengths[xi]:
            return yi == xi
        key = (yi, xi)
        got = self._bruhat_cache.get(key)
        if got is None:
            # Take s with sx < x; then y <= x iff (sy <= sx if sy < y else y <= sx).
            s = self._words[xi][0]
            sx = self._left[xi][s]
            sy = self._left[yi][s]
            if lengths[sy] < lengths[yi]:
                got = self._bruhat_leq(sy, sx)
            else:
                got = self._bruhat_leq(yi, sx)
            self._bruhat_cache[key] = got
        return got

    # -- parabolic subgroups and cosets -------------------------------------

    def _check_subset(self, I: Iterable[int]) -> tuple[int, ...]:
        out = tuple(sorted(set(I)))
        for s in out:
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < self.rank:
                raise CoxeterError(f"bad generator subset entry {s!r}")
        return out

    def parabolic_elements(self, I: Iterable[int]) -> tuple[Element, ...]:
        """The standard parabolic subgroup W_I, sorted by (length, word)."""
        I = self._check_subset(I)
        seen = {0}
        queue = [0]
        for i in queue:
            for s in I:
                j = self._right[i][s]
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return tuple(self._elements[i] for i in sorted(seen))

    def longest_element(self, I: Iterable[int] | None = None) -> Element:
        """The longest element of W_I (of the whole group when I is None)."""
        I = tuple(range(self.rank)) if I is None else self._check_subset(I)
        return self._elements[self._ascend(0, I)]

    def _ascend(self, i: int, I: tuple[int, ...]) -> int:
        lengths, right = self._lengths, self._right
        while True:
            for s in I:
                j = right[i][s]
                if lengths[j] > lengths[i]:
                    i = j
                    break
            else:
                return i

    def _descend(self, i: int, I: tuple[int, ...]) -> int:
        lengths, right = self._lengths, self._right
        while True:
            for s in I:
                j = right[i][s]
                if lengths[j] < lengths[i]:
                    i = j
                    break
            else:
                return i

    def coset_max_rep(self, I: Iterable[int], a: Element) -> Element:
        """Longest element of a*W_I; every s in I is one of its right descents."""
        return self._elements[self._ascend(self._id(a), self._check_subset(I))]

    def coset_min_rep(self, I: Iterable[int], a: Element) -> Element:
        """Shortest element of a*W_I; no s in I is one of its right descents."""
        return self._elements[self._descend(self._id(a), self._check_subset(I))]

    def cosets(self, I: Iterable[int]) -> tuple[Coset, ...]:
        """Partition of the group into cosets a*W_I, sorted by minimal rep."""
        I = self._check_subset(I)
        groups: dict[int, list[int]] = {}
        for i in range(self.order):
            groups.setdefault(self._descend(i, I), []).append(i)
        out = []
        for mini in sorted(groups):
            members = sorted(groups[mini])
            out.append(
                Coset(
                    min_rep=self._elements[mini],
                    max_rep=self._elements[members[-1]],
                    elements=tuple(self._elements[j] for j in members),
                )
            )
        return tuple(out)

    def balanced_poincare(self, I: Iterable[int]) -> LaurentPoly:
        """Sum of v^(l(w_I) - 2 l(z)) over z in W_I; bar-invariant by symmetry."""
        members = self.parabolic_elements(I)
        top = members[-1].length
        return LaurentPoly((top - 2 * z.length, 1) for z in members)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
