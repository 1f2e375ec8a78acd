"""Multipartitions (0/1 vectors), dominance, tableaux with their degrees,
permutations with canonical reduced words, box partitions and Schur
polynomials.

Multipartitions are plain tuples of 0/1 entries of length l; the boxes sit at
the 1-based positions where the entry is 1.
"""
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import NamedTuple


# ---------------------------------------------------------------- permutations

class Permutation:
    """Permutation of {1..n} in one-line notation: w[i-1] = w(i)."""

    __slots__ = ("oneline",)

    def __init__(self, oneline):
        self.oneline = tuple(oneline)
        if sorted(self.oneline) != list(range(1, len(self.oneline) + 1)):
            raise ValueError(f"not a permutation: {oneline}")

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @classmethod
    def from_word(cls, word, n):
        """s_{i1} s_{i2} ... s_{ik} as a composition of functions."""
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(i, n)
        return w

    @classmethod
    def simple(cls, i, n):
        one = list(range(1, n + 1))
        one[i - 1], one[i] = one[i], one[i - 1]
        return cls(one)

    @property
    def n(self):
        return len(self.oneline)

    def __call__(self, i):
        return self.oneline[i - 1]

    def __mul__(self, other):
        """Composition: (self * other)(i) = self(other(i))."""
        return Permutation(self.oneline[j - 1] for j in other.oneline)

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.oneline, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def length(self):
        w = self.oneline
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def reduced_word(self):
        return _reduced_word(self.oneline)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.oneline == other.oneline

    def __hash__(self):
        return hash(self.oneline)

    def __repr__(self):
        return f"Permutation({list(self.oneline)})"


@lru_cache(maxsize=None)
def _reduced_word(oneline):
    """Lexicographically least reduced word, peeling left descents greedily."""
    w = list(oneline)
    word = []
    while True:
        pos = {v: i for i, v in enumerate(w)}
        for i in range(1, len(w)):
            # s_i w is shorter iff i+1 stands left of i
            if pos[i + 1] < pos[i]:
                word.append(i)
                a, b = pos[i], pos[i + 1]
                w[a], w[b] = i + 1, i
                break
        else:
            return tuple(word)


def all_permutations(n):
    """S_n in lexicographic one-line order."""
    return [Permutation(w) for w in permutations(range(1, n + 1))]


# ------------------------------------------------------------- multipartitions

def positions(lam):
    """1-based box positions j_1 < ... < j_n."""
    return tuple(i + 1 for i, v in enumerate(lam) if v)


def size(lam):
    return sum(lam)


def check_multipartition(lam):
    lam = tuple(lam)
    if any(v not in (0, 1) for v in lam):
        raise ValueError(f"entries must be 0 or 1: {lam}")
    return tuple(int(v) for v in lam)


def enumerate_multipartitions(n, l):
    """All 0/1 vectors of length l with n ones, largest in dominance first."""
    if not 0 <= n <= l:
        raise ValueError(f"need 0 <= n <= l, got n={n}, l={l}")
    out = []
    for ones in combinations(range(l), n):
        lam = [0] * l
        for j in ones:
            lam[j] = 1
        out.append(tuple(lam))
    return sorted(out, reverse=True)


def _prefix(lam):
    out, s = [], 0
    for v in lam:
        s += v
        out.append(s)
    return out


def dominance_leq(lam, mu):
    """lam <= mu: every prefix sum of mu is at least that of lam."""
    if len(lam) != len(mu) or sum(lam) != sum(mu):
        raise ValueError("dominance compares shapes with equal n and l")
    return all(x <= y for x, y in zip(_prefix(lam), _prefix(mu)))


def dominance_lt(lam, mu):
    return lam != mu and dominance_leq(lam, mu)


def minimal_multipartition(n, l):
    """All ones right-justified."""
    return tuple([0] * (l - n) + [1] * n)


def maximal_multipartition(n, l):
    return tuple([1] * n + [0] * (l - n))


def fmt_multipartition(lam):
    return ",".join(str(v) for v in lam)


def parse_multipartition(text):
    return check_multipartition(tuple(int(x) for x in text.replace(" ", "").split(",")))


# ----------------------------------------------------------- two-block shapes

class TwoBlockShape(NamedTuple):
    """The shape (0^a 1^b 0^c 1^d) with a+b = r, c+d = s, n = b+d."""
    a: int
    b: int
    c: int
    d: int

    @property
    def r(self):
        return self.a + self.b

    @property
    def s(self):
        return self.c + self.d

    @property
    def n(self):
        return self.b + self.d

    def multipartition(self):
        return tuple([0] * self.a + [1] * self.b + [0] * self.c + [1] * self.d)

    def label(self):
        return f"(0^{self.a} 1^{self.b} 0^{self.c} 1^{self.d})"


def two_block_shapes(n, r, s):
    """P_n^{r,s}, ordered like their multipartitions (largest first)."""
    out = []
    for b in range(max(0, n - s), min(r, n) + 1):
        d = n - b
        out.append(TwoBlockShape(r - b, b, s - d, d))
    return sorted(out, key=lambda t: t.multipartition(), reverse=True)


def two_block_of(lam, r):
    """Recover (a,b,c,d) from a multipartition in P_n^{r,s}, or None."""
    first, second = lam[:r], lam[r:]
    b = sum(first)
    d = sum(second)
    a = len(first) - b
    c = len(second) - d
    shape = TwoBlockShape(a, b, c, d)
    return shape if shape.multipartition() == tuple(lam) else None


def truncated_dimension(shape):
    a, b, c, d = shape
    return comb(a + b, a) * comb(a + c + d, d) * _factorial(b + d)


def binomial_identity_holds(a, b, c, d):
    lhs = comb(a + b, a) * comb(a + c + d, d)
    rhs = sum(comb(c + d, c + j) * comb(b + j, j) * comb(a + b, j + b)
              for j in range(min(a, d) + 1))
    return lhs == rhs


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# ------------------------------------------------------------------- tableaux

class Tableau:
    """A filling of the boxes of a multipartition by 1..n.

    labels[k-1] is the label in the k-th box j_k. The standard tableau has
    labels (1, ..., n). The permutation w_t sends labels[k-1] back to k; with
    this choice psi_t^* y^mu psi_h lands in the right ideal it should.
    """

    __slots__ = ("shape", "labels")

    def __init__(self, shape, labels):
        self.shape = tuple(shape)
        self.labels = tuple(labels)
        if sorted(self.labels) != list(range(1, size(self.shape) + 1)):
            raise ValueError("tableau filling must be a bijection onto 1..n")

    @classmethod
    def standard(cls, shape):
        return cls(shape, range(1, size(shape) + 1))

    def perm(self):
        return Permutation(self.labels).inverse()

    def degree(self):
        n, l = size(self.shape), len(self.shape)
        return n * l - sum(positions(self.shape)) - 2 * self.perm().length()

    def restrict(self, k):
        """The multipartition formed by the boxes with labels <= k."""
        js = positions(self.shape)
        sub = [0] * len(self.shape)
        for j, lab in zip(js, self.labels):
            if lab <= k:
                sub[j - 1] = 1
        return tuple(sub)

    def as_map(self):
        return {j: lab for j, lab in zip(positions(self.shape), self.labels)}

    def __eq__(self, other):
        return isinstance(other, Tableau) and (self.shape, self.labels) == (other.shape, other.labels)

    def __hash__(self):
        return hash((self.shape, self.labels))

    def __repr__(self):
        return f"Tableau({fmt_multipartition(self.shape)}; {self.as_map()})"


def tableaux(mu):
    """All n! tableaux of shape mu, generated by permuting the standard filling."""
    n = size(mu)
    return [Tableau(mu, w.oneline) for w in all_permutations(n)]


def tableau_degree(t):
    return t.degree()


def tab_geq(h, t):
    """h >= t: h restricted to labels <= k dominates t restricted, for every k."""
    n = size(h.shape)
    if size(t.shape) != n or len(h.shape) != len(t.shape):
        raise ValueError("tableau order compares tableaux with equal n and l")
    return all(dominance_leq(t.restrict(k), h.restrict(k)) for k in range(1, n + 1))


def tab_lambda(lam, mu):
    """Tab^lam(mu): tableaux of shape mu dominating the standard tableau of lam."""
    t_lam = Tableau.standard(lam)
    return [t for t in tableaux(mu) if tab_geq(t, t_lam)]


# ------------------------------------------------------- box partitions, Schur

def box_partitions(a, b):
    """Partitions with at most a parts, each at most b, padded to length a."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == a:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            rec(prefix + [v], v)

    rec([], b)
    return out


def complement_partition(mu, a, b):
    """mu in P(a,b) -> mu-hat in P(b,a) built from the complement in the box."""
    mu = tuple(mu) + (0,) * (a - len(mu))
    if len(mu) > a or any(x > b for x in mu) or list(mu) != sorted(mu, reverse=True):
        raise ValueError(f"{mu} does not fit an {a}x{b} box")
    mc = [b - mu[a - 1 - i] for i in range(a)]
    return tuple(sum(1 for x in mc if x >= j) for j in range(1, b + 1))


def schur_poly(mu, nvars):
    """Schur polynomial in nvars variables as {exponent tuple: int coefficient}.

    Bialternant det(y_i^(mu_j + nvars - j)) / Vandermonde with exact division.
    """
    import sympy

    mu = tuple(mu) + (0,) * (nvars - len(mu))
    if len(mu) > nvars:
        return {}
    if nvars == 0:
        return {(): 1}
    ys = sympy.symbols(f"y1:{nvars + 1}")
    m = sympy.Matrix(nvars, nvars, lambda i, j: ys[i] ** (mu[j] + nvars - 1 - j))
    num = sympy.Poly(m.det(method="berkowitz"), *ys)
    vdm = sympy.Poly(sympy.prod([ys[i] - ys[j] for i in range(nvars)
                                 for j in range(i + 1, nvars)]), *ys)
    quo, rem = sympy.div(num, vdm)
    assert rem.is_zero, "bialternant division must be exact"
    return {tuple(int(e) for e in mon): int(c) for mon, c in quo.terms()}
