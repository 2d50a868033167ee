"""
Independent oracles used by the test suite.

Nothing here calls the code paths under test: group arithmetic is rechecked
through explicit reflection matrices on a root system, Bruhat order through
the subword property, and the KL basis through a brute-force linear solve
against the bar matrix.  Laurent polynomials are plain {exp: coeff} dicts
with their own little helper functions.
"""
from __future__ import annotations

from itertools import combinations

# ---------------------------------------------------------------------------
# Plain-dict Laurent polynomial helpers
# ---------------------------------------------------------------------------


def padd(a, b, factor=1, shift=0):
    out = dict(a)
    for e, c in b.items():
        k = e + shift
        n = out.get(k, 0) + c * factor
        if n:
            out[k] = n
        else:
            del out[k]
    return out


def pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            n = out.get(k, 0) + c1 * c2
            if n:
                out[k] = n
            else:
                del out[k]
    return out


def pbar(a):
    return {-e: c for e, c in a.items()}


def pneg(a):
    return {e: -c for e, c in a.items()}


# ---------------------------------------------------------------------------
# Reflection-matrix model for types A and B
# ---------------------------------------------------------------------------


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _matvec(m, v):
    return tuple(sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(v)))


def reflection_model(code: str):
    """Generator matrices and positive roots for a built-in type A/B code.

    The matrices realize the same bond pattern as the package's built-in
    matrices (type B has its 4-bond between the last two generators).
    """
    letter, n = code[0].upper(), int(code[1:])
    if letter == "A":
        dim = n + 1
        mats = []
        for i in range(n):
            m = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
            m[i][i] = m[i + 1][i + 1] = 0
            m[i][i + 1] = m[i + 1][i] = 1
            mats.append(tuple(tuple(r) for r in m))
        roots = []
        for i in range(dim):
            for j in range(i + 1, dim):
                v = [0] * dim
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
    elif letter == "B":
        dim = n
        mats = []
        for i in range(n - 1):
            m = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
            m[i][i] = m[i + 1][i + 1] = 0
            m[i][i + 1] = m[i + 1][i] = 1
            mats.append(tuple(tuple(r) for r in m))
        m = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
        m[dim - 1][dim - 1] = -1
        mats.append(tuple(tuple(r) for r in m))
        roots = []
        for i in range(dim):
            v = [0] * dim
            v[i] = 1
            roots.append(tuple(v))
        for i in range(dim):
            for j in range(i + 1, dim):
                for sign in (1, -1):
                    v = [0] * dim
                    v[i], v[j] = 1, sign
                    roots.append(tuple(v))
    else:
        raise ValueError(f"no reflection model for {code}")
    return mats, roots


def model_matrix(mats, word):
    n = len(mats[0])
    m = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    for s in word:
        m = _matmul(m, mats[s])
    return m


def model_length(m, roots):
    """Number of positive roots sent to negative roots by the matrix."""
    posset = set(roots)
    count = 0
    for a in roots:
        img = _matvec(m, a)
        neg = tuple(-x for x in img)
        if neg in posset:
            count += 1
        elif img not in posset:
            raise AssertionError(f"matrix does not permute the roots: {a} -> {img}")
    return count


# ---------------------------------------------------------------------------
# Bruhat order via the subword property
# ---------------------------------------------------------------------------


def subword_leq(W, y, x) -> bool:
    """y <= x iff some length-l(y) subword of x's reduced word equals y."""
    word = x.word
    k = y.length
    if k > len(word):
        return False
    return any(W.element(tuple(word[i] for i in idx)) == y for idx in combinations(range(len(word)), k))


# ---------------------------------------------------------------------------
# Brute-force KL basis: bar-matrix linear solve
# ---------------------------------------------------------------------------


def _hecke_rmul_gen(W, elt, s):
    # elt: {Element: polydict}; right multiplication by H_s in the standard
    # basis with H_s^2 = H_e + (v^-1 - v) H_s.
    out = {}
    for y, p in elt.items():
        t = W.apply_gen(y, s, "right")
        out[t] = padd(out.get(t, {}), p)
        if t.length < y.length:
            q = padd(padd({}, p, shift=-1), p, factor=-1, shift=1)
            out[y] = padd(out.get(y, {}), q)
    return {y: p for y, p in out.items() if p}


def bar_matrix(W):
    """bar(H_y) in the standard basis for every y, as {y: {z: polydict}}."""
    cols = {}
    for y in W.all_elements():
        acc = {W.identity: {0: 1}}
        for s in y.word:
            # acc *= bar(H_s) = H_s + (v - v^-1) H_e
            nxt = _hecke_rmul_gen(W, acc, s)
            for z, p in acc.items():
                q = padd(padd({}, p, shift=1), p, factor=-1, shift=-1)
                nxt[z] = padd(nxt.get(z, {}), q)
            acc = {z: p for z, p in nxt.items() if p}
        cols[y] = acc
    return cols


def kl_basis_bruteforce(W):
    """Solve for every KL basis element by triangular linear algebra.

    For each x, the unknown coefficients c_z (z below x) satisfy
    c_z - bar(c_z) = sum over longer y of bar(c_y) R(z, y), where R is the
    bar matrix; since c_z has only positive exponents, it is the positive
    part of the right-hand side.  No mu-recursion is involved.
    """
    cols = bar_matrix(W)
    by_length = {}
    for el in W.all_elements():
        by_length.setdefault(el.length, []).append(el)
    out = {}
    for x in W.all_elements():
        c = {x: {0: 1}}
        for level in range(x.length - 1, -1, -1):
            for z in by_length[level]:
                g = {}
                for y, cy in c.items():
                    r = cols[y].get(z)
                    if r:
                        g = padd(g, pmul(pbar(cy), r))
                cz = {e: v for e, v in g.items() if e > 0}
                if g != padd(cz, pneg(pbar(cz))):
                    raise AssertionError(f"inconsistent bar solve at ({z}, {x}): {g}")
                if cz:
                    c[z] = cz
        out[x] = c
    return out


# ---------------------------------------------------------------------------
# Graded dimension series of a free polynomial ring (generators in degree 2)
# ---------------------------------------------------------------------------


def poly_ring_series(rank: int, n_max: int) -> list[int]:
    """Coefficients of (1 + q^2 + q^4 + ...)^rank up to degree n_max."""
    series = [1] + [0] * n_max
    gen = [1 if n % 2 == 0 else 0 for n in range(n_max + 1)]
    for _ in range(rank):
        series = [sum(series[j] * gen[n - j] for j in range(n + 1)) for n in range(n_max + 1)]
    return series
