"""Root systems, the invariant pairing, Weyl words and parabolic data.

Roots and weights live in the simple-root basis as integer (or Fraction)
coordinate tuples.  The bilinear form is normalized so short roots have
squared length 2.  Vertex indices are 0-based internally; the Dynkin
labels of the supported diagrams are index + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class RootSystemError(ValueError):
    pass


def _cartan_and_d(family, rank):
    n = rank
    if family == "A":
        a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
              for j in range(n)] for i in range(n)]
        d = [1] * n
    elif family == "B":
        if n < 2:
            raise RootSystemError("B requires rank >= 2")
        a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
              for j in range(n)] for i in range(n)]
        a[n - 1][n - 2] = -2  # alpha_n short
        d = [2] * (n - 1) + [1]
    elif family == "C":
        if n < 2:
            raise RootSystemError("C requires rank >= 2")
        a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
              for j in range(n)] for i in range(n)]
        a[n - 2][n - 1] = -2  # alpha_n long
        d = [1] * (n - 1) + [2]
    elif family == "D":
        if n < 4:
            raise RootSystemError("D requires rank >= 4")
        a = [[0] * n for _ in range(n)]
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        d = [1] * n
    elif family == "E7":
        if n != 7:
            raise RootSystemError("E7 has rank 7")
        a = [[0] * 7 for _ in range(7)]
        # chain 1-2-3-4-6-7 with 5 hanging off 4 (diagram labels)
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6)]
        for i in range(7):
            a[i][i] = 2
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        d = [1] * 7
    else:
        raise RootSystemError(f"unsupported family {family!r}")
    return tuple(tuple(row) for row in a), tuple(d)


_POS_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E7": lambda n: 63,
}


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: tuple
    d: tuple
    positive_roots: tuple

    def simple_root(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def weight_h(self, mu, i):
        """mu(h_i) for mu in simple-root coordinates."""
        return sum(m * self.cartan[i][j] for j, m in enumerate(mu))

    def pair(self, mu, nu):
        """(mu, nu), exact; integral on the root lattice."""
        out = 0
        for i, m in enumerate(mu):
            if m:
                row = self.cartan[i]
                di = self.d[i]
                out += m * di * sum(row[j] * nn for j, nn in enumerate(nu))
        return out

    def fundamental_weight(self, i):
        """varpi_i in simple-root coordinates (Fractions)."""
        n = self.rank
        a = [[Fraction(self.cartan[r][c]) for c in range(n)] for r in range(n)]
        b = [Fraction(1) if r == i else Fraction(0) for r in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col])
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] *= inv
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] -= f * b[col]
        return tuple(b)

    def reflect(self, i, v):
        """s_i(v) in simple-root coordinates."""
        c = sum(self.cartan[i][j] * x for j, x in enumerate(v))
        return tuple(x - c if j == i else x for j, x in enumerate(v))

    def reflection_matrix(self, i):
        return tuple(self.reflect(i, tuple(1 if k == j else 0 for k in range(self.rank)))
                     for j in range(self.rank))


def mat_apply(m, v):
    """m stored column-wise: m[j] = image of e_j."""
    n = len(v)
    out = [0] * n
    for j, x in enumerate(v):
        if x:
            col = m[j]
            for k in range(n):
                out[k] += x * col[k]
    return tuple(out)


def mat_mul(m1, m2):
    """Composition m1 o m2, column-wise storage."""
    return tuple(mat_apply(m1, col) for col in m2)


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))


@lru_cache(maxsize=None)
def build_root_system(family, rank):
    cartan, d = _cartan_and_d(family, rank)
    rs = RootSystem(family, rank, cartan, d, ())
    simple = [rs.simple_root(i) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                w = rs.reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    pos = sorted(v for v in seen if all(c >= 0 for c in v))
    assert len(pos) == _POS_COUNT[family](rank), "positive root count mismatch"
    object.__setattr__(rs, "positive_roots", tuple(pos))
    return rs


def reduced_word(rs, target):
    """Reduced word [i_1, ..., i_k] with target = s_{i_1} ... s_{i_k}.

    Greedy descent: repeatedly strip a simple reflection sending the
    smallest possible simple root to a negative root.
    """
    n = rs.rank
    refl = [rs.reflection_matrix(i) for i in range(n)]
    w = target
    word = []
    ident = mat_identity(n)
    guard = len(rs.positive_roots) + 1
    while w != ident:
        for i in range(n):
            img = mat_apply(w, rs.simple_root(i))
            if all(c <= 0 for c in img) and any(img):
                break
        else:
            raise RootSystemError("matrix is not a Weyl group element")
        w = mat_mul(w, refl[i])
        word.append(i)
        if len(word) > guard:
            raise RootSystemError("reduced word does not terminate; invalid input")
    word.reverse()
    return word


def longest_element(rs, subset=None):
    """Longest element of W (or of the parabolic W_subset) as a matrix."""
    n = rs.rank
    idxs = range(n) if subset is None else sorted(subset)
    refl = {i: rs.reflection_matrix(i) for i in idxs}
    w = mat_identity(n)
    while True:
        for i in idxs:
            img = mat_apply(w, rs.simple_root(i))
            if all(c >= 0 for c in img):
                w = mat_mul(w, refl[i])
                break
        else:
            return w


_REGULAR = {
    # family -> validator and defaults
}


def _regular_info(family, rank, i0):
    """Return (i0, r) for a regular pair, 0-based i0; raise otherwise."""
    if family == "A":
        if rank % 2 != 1:
            raise RootSystemError("regular type A needs odd rank (A_{2n-1})")
        n = (rank + 1) // 2
        want = n - 1
        if i0 is None:
            i0 = want
        if i0 != want:
            raise RootSystemError(f"(A_{rank}, i0={i0 + 1}) is not regular")
        return i0, n
    if family == "B":
        if i0 is None:
            i0 = 0
        if i0 != 0:
            raise RootSystemError("regular type B needs i0 = 1")
        return 0, 2
    if family == "C":
        if rank < 3:
            raise RootSystemError("regular type C needs rank >= 3")
        if i0 is None:
            i0 = rank - 1
        if i0 != rank - 1:
            raise RootSystemError("regular type C needs i0 = n")
        return i0, rank
    if family == "D":
        if i0 is None:
            i0 = 0
        if i0 == 0:
            return 0, 2
        if i0 == rank - 1 and rank % 2 == 0:
            return i0, rank // 2
        raise RootSystemError(f"(D_{rank}, i0={i0 + 1}) is not regular")
    if family == "E7":
        if i0 is None:
            i0 = 0
        if i0 != 0:
            raise RootSystemError("regular type E7 needs i0 = 1")
        return 0, 3
    raise RootSystemError(f"unsupported family {family!r}")


@dataclass(frozen=True)
class ParabolicDatum:
    rs: RootSystem
    i0: int                      # 0-based vertex index
    r: int                       # number of non-open orbits
    complement_roots: tuple      # positive roots outside the Levi
    convex_order: tuple          # same set, ordered by a reduced word
    lambda_r: tuple              # -2 varpi_{i0} in simple-root coordinates

    @property
    def levi(self):
        return tuple(i for i in range(self.rs.rank) if i != self.i0)

    @property
    def d_i0(self):
        return self.rs.d[self.i0]

    def index_of(self, root):
        return self.convex_order.index(root)

    @property
    def num_generators(self):
        return len(self.convex_order)


def parabolic_datum(family, rank, i0=None):
    """Parabolic data for one of the six regular pairs of diagrams."""
    i0_, r = _regular_info(family, rank, i0)
    rs = build_root_system(family, rank)
    comp = tuple(b for b in rs.positive_roots if b[i0_] >= 1)
    assert all(b[i0_] == 1 for b in comp), "nilradical is not abelian"

    w0 = longest_element(rs)
    wI = longest_element(rs, subset=[i for i in range(rank) if i != i0_])
    word = reduced_word(rs, mat_mul(wI, w0))
    assert len(word) == len(comp)
    order = []
    w = mat_identity(rank)
    refl = [rs.reflection_matrix(i) for i in range(rank)]
    for t, it in enumerate(word):
        beta = mat_apply(w, rs.simple_root(it))
        order.append(beta)
        w = mat_mul(w, refl[it])
    assert set(order) == set(comp), "convex order does not enumerate the complement"
    assert order[0] == rs.simple_root(i0_)

    varpi = rs.fundamental_weight(i0_)
    lam = tuple(-2 * c for c in varpi)
    assert all(c.denominator == 1 and c <= 0 for c in lam), "lambda_r not integral"
    lam = tuple(int(c) for c in lam)
    return ParabolicDatum(rs, i0_, r, comp, tuple(order), lam)


def kostant_partition_count(rs, mu):
    """Number of ways to write mu as a multiset of positive roots (brute force)."""
    roots = rs.positive_roots

    def count(idx, rem):
        if all(c == 0 for c in rem):
            return 1
        if idx == len(roots):
            return 0
        b = roots[idx]
        total = 0
        k = 0
        cur = rem
        while all(c >= 0 for c in cur):
            total += count(idx + 1, cur)
            cur = tuple(c - cc for c, cc in zip(cur, b))
            k += 1
        return total

    return count(0, tuple(mu))
