"""Cyclotomic nilHecke algebras over F_p as concrete matrix algebras.

The algebra acts faithfully on F_p[y_1..y_n]/(h_{l-n+1}, ..., h_l) with the
dots acting by multiplication and the crossings by divided differences.
Elements are coordinate vectors over the monomial basis y^a psi_w.

Words are tuples of letters ("y", i) or ("p", i) read left to right as a
product; "p" stands for a crossing.
"""
import re
from functools import lru_cache
from itertools import product
from math import comb, factorial

import numpy as np

from .combinatorics import (Permutation, all_permutations, dominance_lt,
                            enumerate_multipartitions, positions, tableaux,
                            complement_partition, schur_poly)
from .coeff import PrimeField
from .linalg import RowSpace, mm, pivot_solver, rank, nullspace, as_mod


# ------------------------------------------------------------------- polynomials

def demazure(i, f):
    """Divided difference (f - s_i f) / (y_i - y_{i+1}) on {exponents: coeff} dicts."""
    out = {}
    for e, v in f.items():
        e = list(e)
        al, be = e[i - 1], e[i]
        if al == be:
            continue
        if al > be:
            sign, span = 1, al - be
        else:
            sign, span = -1, be - al
        for k in range(span):
            g = list(e)
            if sign > 0:
                g[i - 1], g[i] = al - 1 - k, be + k
            else:
                g[i - 1], g[i] = al + k, be - 1 - k
            g = tuple(g)
            out[g] = out.get(g, 0) + sign * v
    out = {e: v for e, v in out.items() if v}
    _check_divided_difference(i, f, out)
    return out


def _check_divided_difference(i, f, quot):
    lhs = {}
    for e, v in quot.items():
        for shift, s in ((i - 1, 1), (i, -1)):
            g = list(e)
            g[shift] += 1
            g = tuple(g)
            lhs[g] = lhs.get(g, 0) + s * v
    rhs = dict(f)
    for e, v in f.items():
        g = list(e)
        g[i - 1], g[i] = g[i], g[i - 1]
        g = tuple(g)
        rhs[g] = rhs.get(g, 0) - v
    clean = lambda d: {k: v for k, v in d.items() if v}
    assert clean(lhs) == clean(rhs), "divided difference is not exact"


def complete_monomials(k, nvars):
    """Exponent vectors of all monomials of degree k in nvars variables."""
    if nvars == 0:
        return [()] if k == 0 else []
    out = []
    for first in range(k, -1, -1):
        for rest in complete_monomials(k - first, nvars - 1):
            out.append((first,) + rest)
    return out


class PolyQuotient:
    """F_p[y_1..y_n] modulo the complete symmetric polynomials h_{l-n+1..l}.

    Normal forms rewrite the leading term y_i^(l-i+1) of h_{l-i+1}(y_1, ..., y_i)
    (lex order with y_n > ... > y_1); the resulting model is validated
    through the algebra it generates (see NHRep).
    """

    def __init__(self, n, l, p):
        self.n, self.l, self.p = n, l, p
        self.exponents = list(product(*[range(l - i + 1) for i in range(1, n + 1)]))
        self.index = {e: k for k, e in enumerate(self.exponents)}
        self.dim = len(self.exponents)
        self._tails = {}
        for i in range(1, n + 1):
            k = l - i + 1
            tail = []
            for m in complete_monomials(k, i):
                if m[-1] == k:
                    continue
                tail.append(m)
            self._tails[i] = tail
        self._nf = {}

    def normal_form(self, e):
        """Coordinates (dict index -> coeff mod p) of the monomial y^e."""
        e = tuple(e)
        hit = self._nf.get(e)
        if hit is not None:
            return hit
        bad = next((i for i in range(self.n, 0, -1) if e[i - 1] > self.l - i), None)
        if bad is None:
            out = {self.index[e]: 1}
        else:
            k = self.l - bad + 1
            base = list(e)
            base[bad - 1] -= k
            out = {}
            for m in self._tails[bad]:
                g = list(base)
                for off, x in enumerate(m):
                    g[off] += x
                for idx, v in self.normal_form(g).items():
                    out[idx] = (out.get(idx, 0) - v) % self.p
            out = {i: v for i, v in out.items() if v}
        self._nf[e] = out
        return out

    def vector(self, poly):
        v = np.zeros(self.dim, dtype=np.int64)
        for e, c in poly.items():
            for idx, x in self.normal_form(e).items():
                v[idx] += c * x
        return v % self.p

    def multiplication_matrix(self, i):
        """Column j holds y_i times the j-th basis monomial."""
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, e in enumerate(self.exponents):
            g = list(e)
            g[i - 1] += 1
            m[:, j] = self.vector({tuple(g): 1})
        return m

    def demazure_matrix(self, i):
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, e in enumerate(self.exponents):
            m[:, j] = self.vector(demazure(i, {e: 1}))
        return m


# ------------------------------------------------------------------------ words

_TOKEN = re.compile(r"(y|p|psi)(\d+)(?:\^(\d+))?")


def parse_word(text):
    """'y1^2 p1 p2' -> (('y',1),('y',1),('p',1),('p',2))."""
    letters = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        kind = "y" if m.group(1) == "y" else "p"
        letters.extend([(kind, int(m.group(2)))] * int(m.group(3) or 1))
    return tuple(letters)


def word_str(letters):
    if not letters:
        return "1"
    out = []
    for kind, i in letters:
        name = f"y{i}" if kind == "y" else f"psi{i}"
        if out and out[-1][0] == name:
            out[-1][1] += 1
        else:
            out.append([name, 1])
    return " ".join(n if k == 1 else f"{n}^{k}" for n, k in out)


def shift_word(letters, offset):
    return tuple((k, i + offset) for k, i in letters)


def y_word(exps, offset=0):
    return tuple(("y", i + 1 + offset) for i, a in enumerate(exps) for _ in range(a))


def psi_word(perm, offset=0):
    return tuple(("p", i + offset) for i in perm.reduced_word())


def star_word(letters):
    return tuple(reversed(letters))


def word_degree(letters):
    return sum(2 if k == "y" else -2 for k, _ in letters)


class NHWord:
    """Formal Z-linear combination of words."""

    def __init__(self, terms=()):
        self.terms = [(int(c), tuple(w)) for c, w in terms]

    @classmethod
    def of(cls, letters, coeff=1):
        return cls([(coeff, letters)])

    def __add__(self, other):
        return NHWord(self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, int):
            return NHWord([(c * other, w) for c, w in self.terms])
        return NHWord([(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


# ---------------------------------------------------------------------- algebra

class NHRep:
    """NH_n^l over F_p in its faithful polynomial representation."""

    def __init__(self, n, l, p, check=True):
        if not 0 <= n <= l:
            raise ValueError(f"need 0 <= n <= l, got n={n}, l={l}")
        self.n, self.l, self.p = n, l, p
        self.field = PrimeField(p)
        self._poly = PolyQuotient(n, l, p)
        self.exponents = list(self._poly.exponents)
        self.d = self._poly.dim
        self.Y = [self._poly.multiplication_matrix(i) for i in range(1, n + 1)]
        self.Psi = [self._poly.demazure_matrix(i) for i in range(1, n)]
        self._finish(check)

    def _finish(self, check):
        self._setup_basis()
        self._right = {}
        self._left_cache = {}
        self._D = None
        if check:
            self.check_relations()
            self.check_dimension()

    @property
    def poly(self):
        if self._poly is None:
            self._poly = PolyQuotient(self.n, self.l, self.p)
        return self._poly

    def to_arrays(self):
        """The data a cached copy is rebuilt from."""
        z = np.zeros((0, self.d, self.d), dtype=np.int64)
        return {"exponents": np.array(self.exponents, dtype=np.int64).reshape(len(self.exponents), self.n),
                "Y": np.stack(self.Y) if self.Y else z,
                "Psi": np.stack(self.Psi) if self.Psi else z,
                "D": self.D}

    @classmethod
    def from_arrays(cls, n, l, p, arrays, check=True):
        self = cls.__new__(cls)
        self.n, self.l, self.p = n, l, p
        self.field = PrimeField(p)
        self._poly = None
        self.exponents = [tuple(int(x) for x in e) for e in arrays["exponents"]]
        self.d = len(self.exponents)
        self.Y = [np.asarray(m, dtype=np.int64) for m in arrays["Y"]]
        self.Psi = [np.asarray(m, dtype=np.int64) for m in arrays["Psi"]]
        self._finish(check)
        self._D = np.asarray(arrays["D"], dtype=np.int64)
        return self

    # -- basis and coordinates

    def _setup_basis(self):
        perms = all_permutations(self.n)
        self.basis_keys = [(a, w) for a in self.exponents for w in perms]
        self.basis_words = [y_word(a) + psi_word(w) for a, w in self.basis_keys]
        self.degrees = np.array([2 * sum(a) - 2 * w.length() for a, w in self.basis_keys],
                                dtype=np.int64)
        self.dim = len(self.basis_keys)
        self.mats = np.stack([self.word_matrix(w) for w in self.basis_words])
        flat = self.mats.reshape(self.dim, -1)
        self._piv, self._Q = pivot_solver(flat, self.p)
        self.index = {key: j for j, key in enumerate(self.basis_keys)}

    def expected_dimension(self):
        return factorial(self.n) ** 2 * comb(self.l, self.n)

    def check_dimension(self):
        if self.dim != self.expected_dimension():
            raise AssertionError(f"basis has {self.dim} elements, expected {self.expected_dimension()}")
        # closure: products of generators with basis elements stay in the span
        space = RowSpace(self.mats.reshape(self.dim, -1), self.p)
        for g in self.generator_letters():
            prods = mm(self.mats, self.gen_matrix(g), self.p).reshape(self.dim, -1)
            if not space.contains(prods):
                raise AssertionError(f"span of the monomial basis is not closed under {g}")
            prods = mm(self.gen_matrix(g), self.mats, self.p).reshape(self.dim, -1)
            if not space.contains(prods):
                raise AssertionError(f"span of the monomial basis is not closed under {g}")

    def generator_letters(self):
        return [("y", i) for i in range(1, self.n + 1)] + [("p", i) for i in range(1, self.n)]

    def gen_matrix(self, letter):
        kind, i = letter
        if kind == "y":
            if not 1 <= i <= self.n:
                raise ValueError(f"y{i} out of range for n={self.n}")
            return self.Y[i - 1]
        if not 1 <= i < self.n:
            raise ValueError(f"psi{i} out of range for n={self.n}")
        return self.Psi[i - 1]

    def word_matrix(self, letters):
        m = np.eye(self.d, dtype=np.int64)
        for letter in letters:
            m = mm(m, self.gen_matrix(letter), self.p)
        return m

    def coords_of_matrix(self, x):
        x = np.asarray(x)
        flat = x.reshape(x.shape[:-2] + (-1,))
        return mm(flat[..., self._piv], self._Q, self.p)

    def matrix_of(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        flat = mm(coords, self.mats.reshape(self.dim, -1), self.p)
        return flat.reshape(coords.shape[:-1] + (self.d, self.d))

    def in_algebra(self, x):
        c = self.coords_of_matrix(x)
        return not ((self.matrix_of(c) - as_mod(x, self.p)) % self.p).any()

    # -- elements

    def element(self, coords, word=None):
        return NHElement(self, coords, word)

    def zero(self):
        return NHElement(self, np.zeros(self.dim, dtype=np.int64))

    def one(self):
        return self.element_from_word(NHWord.of(()))

    def basis_element(self, j):
        return NHElement(self, np.eye(self.dim, dtype=np.int64)[j], NHWord.of(self.basis_words[j]))

    def element_from_word(self, word):
        if isinstance(word, str):
            word = NHWord.of(parse_word(word))
        elif isinstance(word, tuple):
            word = NHWord.of(word)
        m = np.zeros((self.d, self.d), dtype=np.int64)
        for c, w in word.terms:
            m = (m + c * self.word_matrix(w)) % self.p
        return NHElement(self, self.coords_of_matrix(m), word)

    def element_from_poly(self, poly, offset=0):
        """A polynomial {exponents: coeff} in y_{offset+1}, ... as an element."""
        terms = [(c, y_word(e, offset)) for e, c in poly.items()]
        return self.element_from_word(NHWord(terms))

    def mul(self, a, b):
        return self.coords_of_matrix(mm(self.matrix_of(a), self.matrix_of(b), self.p))

    # -- multiplication operators on coordinates

    def right_op(self, letter):
        """N x N matrix of x -> x * g for a generator letter."""
        if letter not in self._right:
            self._right[letter] = self.right_op_matrix(self.gen_matrix(letter))
        return self._right[letter]

    def right_op_matrix(self, g):
        return self.coords_of_matrix(mm(self.mats, g, self.p))

    def left_op_matrix(self, g):
        """Row j holds the coordinates of g * B_j."""
        return self.coords_of_matrix(mm(g, self.mats, self.p))

    def right_op_element(self, coords):
        return self.right_op_matrix(self.matrix_of(coords))

    def left_op_element(self, coords):
        return self.left_op_matrix(self.matrix_of(coords))

    # -- relations

    def check_relations(self):
        p, n = self.p, self.n
        eye = np.eye(self.d, dtype=np.int64)
        Y, P = self.Y, self.Psi
        eq = lambda a, b: not ((as_mod(a, p) - as_mod(b, p)) % p).any()
        for i in range(n):
            for j in range(n):
                assert eq(mm(Y[i], Y[j], p), mm(Y[j], Y[i], p)), "dots do not commute"
        for i in range(n - 1):
            assert eq(mm(P[i], P[i], p), 0), f"psi{i + 1}^2 != 0"
            lhs = mm(Y[i], P[i], p) - mm(P[i], Y[i + 1], p)
            assert eq(lhs, eye), f"y{i + 1} psi{i + 1} - psi{i + 1} y{i + 2} != 1"
            lhs = mm(P[i], Y[i], p) - mm(Y[i + 1], P[i], p)
            assert eq(lhs, eye), f"psi{i + 1} y{i + 1} - y{i + 2} psi{i + 1} != 1"
            for j in range(n):
                if j not in (i, i + 1):
                    assert eq(mm(Y[j], P[i], p), mm(P[i], Y[j], p)), "far dot-crossing commutation"
            for j in range(n - 1):
                if abs(i - j) > 1:
                    assert eq(mm(P[i], P[j], p), mm(P[j], P[i], p)), "far crossings commute"
            if i + 1 < n - 1:
                a = mm(mm(P[i], P[i + 1], p), P[i], p)
                b = mm(mm(P[i + 1], P[i], p), P[i + 1], p)
                assert eq(a, b), "braid relation"
        if n:
            y1l = np.linalg.matrix_power(Y[0].astype(object), self.l) % p
            assert eq(y1l.astype(np.int64), 0), "y_1^l != 0"
        return True

    # -- differential

    def letter_differential(self, letter):
        kind, i = letter
        if kind == "y":
            y = self.gen_matrix(letter)
            return mm(y, y, self.p)
        y_i, y_next, psi = self.Y[i - 1], self.Y[i], self.Psi[i - 1]
        return (-mm(y_i, psi, self.p) - mm(psi, y_next, self.p)) % self.p

    def word_differential(self, letters):
        """Leibniz expansion of the differential on a word, as a matrix."""
        k = len(letters)
        out = np.zeros((self.d, self.d), dtype=np.int64)
        if k == 0:
            return out
        mats = [self.gen_matrix(x) for x in letters]
        prefix = [np.eye(self.d, dtype=np.int64)]
        for m in mats:
            prefix.append(mm(prefix[-1], m, self.p))
        suffix = np.eye(self.d, dtype=np.int64)
        for pos in range(k - 1, -1, -1):
            term = mm(mm(prefix[pos], self.letter_differential(letters[pos]), self.p), suffix, self.p)
            out = (out + term) % self.p
            suffix = mm(mats[pos], suffix, self.p)
        return out

    @property
    def D(self):
        """N x N matrix of the differential on coordinates (row j = d(B_j))."""
        if self._D is None:
            rows = np.stack([self.word_differential(w) for w in self.basis_words]) \
                if self.dim else np.zeros((0, self.d, self.d), dtype=np.int64)
            self._D = self.coords_of_matrix(rows) if self.dim else np.zeros((0, 0), dtype=np.int64)
        return self._D

    def differential(self, x):
        return NHElement(self, mm(x.coords, self.D, self.p))

    def word_differential_element(self, word):
        m = np.zeros((self.d, self.d), dtype=np.int64)
        for c, w in word.terms:
            m = (m + c * self.word_differential(w)) % self.p
        return NHElement(self, self.coords_of_matrix(m))

    def dp_zero(self):
        m = np.eye(self.dim, dtype=np.int64)
        for _ in range(self.p):
            m = mm(m, self.D, self.p)
        return not m.any()

    # -- embeddings

    def embedding_from(self, small, offset=0):
        """Matrix sending coordinates of NH_m (strands shifted by offset) into self."""
        if small.l != self.l or small.p != self.p or small.n + offset > self.n:
            raise ValueError("incompatible embedding")
        mats = np.stack([self.word_matrix(shift_word(w, offset)) for w in small.basis_words])
        return self.coords_of_matrix(mats)

    def __repr__(self):
        return f"NHRep(n={self.n}, l={self.l}, p={self.p}, dim={self.dim})"


class NHElement:
    """An element of NH_n^l: coordinates over the monomial basis."""

    __slots__ = ("rep", "coords", "word")

    def __init__(self, rep, coords, word=None):
        self.rep = rep
        self.coords = as_mod(coords, rep.p)
        self.word = word

    def _wrap(self, coords, word=None):
        return NHElement(self.rep, coords, word)

    def __add__(self, other):
        w = self.word + other.word if self.word is not None and other.word is not None else None
        return self._wrap(self.coords + other.coords, w)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._wrap(-self.coords, -self.word if self.word is not None else None)

    def __mul__(self, other):
        if isinstance(other, int):
            w = self.word * other if self.word is not None else None
            return self._wrap(self.coords * other, w)
        w = self.word * other.word if self.word is not None and other.word is not None else None
        return self._wrap(self.rep.mul(self.coords, other.coords), w)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.rep.one() * other
        return isinstance(other, NHElement) and other.rep is self.rep and \
            not ((self.coords - other.coords) % self.rep.p).any()

    def __hash__(self):
        return hash(self.coords.tobytes())

    def is_zero(self):
        return not self.coords.any()

    def matrix(self):
        return self.rep.matrix_of(self.coords)

    def lift(self):
        """A word representative (the stored one, else the canonical one)."""
        if self.word is not None:
            return self.word
        terms = [(int(c), self.rep.basis_words[j]) for j, c in enumerate(self.coords) if c]
        return NHWord(terms)

    def homogeneous_parts(self):
        out = {}
        for deg in sorted(set(self.rep.degrees[self.coords != 0].tolist())):
            mask = self.rep.degrees == deg
            out[deg] = self._wrap(np.where(mask, self.coords, 0))
        return out

    def degree(self):
        parts = self.homogeneous_parts()
        if len(parts) != 1:
            raise ValueError("element is not homogeneous")
        return next(iter(parts))

    def star(self):
        """Anti-automorphism fixing generators: reverse every word."""
        w = self.lift()
        return self.rep.element_from_word(NHWord([(c, star_word(x)) for c, x in w.terms]))

    def terms(self):
        return [(self.rep.basis_words[j], int(c)) for j, c in enumerate(self.coords) if c]

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for w, c in self.terms():
            parts.append(f"{c}*{word_str(w)}" if c != 1 else word_str(w))
        return " + ".join(parts)


# ------------------------------------------------------------------ idempotents

def e_word(k, offset=0):
    """e_k = y_1^(k-1) ... y_k^0 psi_{w0} on strands offset+1..offset+k."""
    return y_word(tuple(range(k - 1, -1, -1)), offset) + psi_word(Permutation.longest(k), offset)


def e_prime_word(k, offset=0):
    """psi_{w0} y_1^0 ... y_k^(k-1) (without the sign)."""
    return psi_word(Permutation.longest(k), offset) + y_word(tuple(range(k)), offset)


def e_prime_sign(k):
    return -1 if (k * (k - 1) // 2) % 2 else 1


def idempotent_e(rep, composition):
    """e_i = e_{i_1} (x) ... (x) e_{i_r} placed side by side."""
    if sum(composition) != rep.n:
        raise ValueError("composition must sum to n")
    letters, off = (), 0
    for k in composition:
        letters += e_word(k, off)
        off += k
    return rep.element_from_word(NHWord.of(letters))


def e_prime(rep, k, offset=0):
    return rep.element_from_word(NHWord.of(e_prime_word(k, offset), e_prime_sign(k)))


def e_star(rep, m, a):
    """Generator of the restriction bimodule: sign-corrected e'_a on the last a strands."""
    if m + a != rep.n:
        raise ValueError("e_star lives in NH_{m+a}")
    return e_prime(rep, a, m)


def psi_ab_word(a, b, offset=0):
    """prod_{k=b..1} (psi_k psi_{k+1} ... psi_{k+a-1})."""
    letters = ()
    for k in range(b, 0, -1):
        letters += tuple(("p", k + i + offset) for i in range(a))
    return letters


def psi_w0(rep):
    return rep.element_from_word(NHWord.of(psi_word(Permutation.longest(rep.n))))


def e_mu_ab(rep, mu, a, b):
    """(-1)^|mu^| pi_mu(y_1..y_a) e_(a,b) psi e_(a+b) pi_mu^(y_(a+1)..y_(a+b)).

    The middle crossing is the shuffle psi_{b,a}; with it the e^mu over all
    mu in the a x b box are orthogonal idempotents summing to e_(a,b).
    """
    if a + b != rep.n:
        raise ValueError("e_mu_ab lives in NH_{a+b}")
    muhat = complement_partition(mu, a, b)
    sign = -1 if sum(muhat) % 2 else 1
    left = rep.element_from_poly(schur_poly(mu, a), 0) if a else rep.one()
    right = rep.element_from_poly(schur_poly(muhat, b), a) if b else rep.one()
    mid = idempotent_e(rep, (a, b)) * rep.element_from_word(NHWord.of(psi_ab_word(b, a))) \
        * idempotent_e(rep, (a + b,))
    return left * mid * right * sign


def idempotent_variants(rep):
    """Named elements used by the functor constructions."""
    n = rep.n
    out = {"psi_w0": psi_w0(rep), "e_prime": e_prime(rep, n)}
    for a in range(1, n):
        b = n - a
        out[f"psi_{a},{b}"] = rep.element_from_word(NHWord.of(psi_ab_word(a, b)))
        out[f"e_star_{b},{a}"] = e_star(rep, b, a)
    return out


# ---------------------------------------------------------------- cellular basis

def y_mu_exponents(mu):
    """y^mu = prod_k y_k^(l - j_k)."""
    l = len(mu)
    return tuple(l - j for j in positions(mu))


def cellular_word(mu, h, t):
    """psi_h^* y^mu psi_t."""
    return star_word(psi_word(h.perm())) + y_word(y_mu_exponents(mu)) + psi_word(t.perm())


def cellular_basis(rep):
    """All (mu, h, t, psi_ht^mu); raises if they are not a basis."""
    out = []
    for mu in enumerate_multipartitions(rep.n, rep.l):
        tabs = tableaux(mu)
        for h in tabs:
            for t in tabs:
                out.append((mu, h, t, rep.element_from_word(NHWord.of(cellular_word(mu, h, t)))))
    coords = np.stack([x[3].coords for x in out]) if out else np.zeros((0, rep.dim))
    if rank(coords, rep.p) != rep.dim:
        raise AssertionError("cellular elements are linearly dependent")
    return out


def cell_ideal(rep, mu, cells=None):
    """Row space spanned by the cellular elements of shapes strictly above mu."""
    if cells is None:
        cells = cellular_basis(rep)
    rows = [x[3].coords for x in cells if dominance_lt(mu, x[0])]
    if not rows:
        return RowSpace(np.zeros((0, rep.dim), dtype=np.int64), rep.p, rep.dim)
    return RowSpace(np.stack(rows), rep.p)


def is_differential_stable(rep, space):
    if space.dim == 0:
        return True
    return space.contains(mm(space.rows, rep.D, rep.p))


# ------------------------------------------------------------------------ trace

class Trace:
    """A homogeneous symmetric linear form on NH_n^l with its Gram certificate."""

    def __init__(self, rep, vector, degree, gram_rank):
        self.rep = rep
        self.vector = vector
        self.degree = degree
        self.gram_rank = gram_rank

    def __call__(self, x):
        c = x.coords if isinstance(x, NHElement) else np.asarray(x)
        return int(mm(c, self.vector, self.rep.p))

    @property
    def nondegenerate(self):
        return self.gram_rank == self.rep.dim


def trace_functional(rep):
    """Solve for tau: homogeneous of degree -2n(l-n), tau(xg) = tau(gx) for generators g."""
    p = rep.p
    top = 2 * rep.n * (rep.l - rep.n)
    support = np.flatnonzero(rep.degrees == top)
    constraints = []
    for g in rep.generator_letters():
        gm = rep.gen_matrix(g)
        comm = (rep.right_op_matrix(gm) - rep.left_op_matrix(gm)) % p
        constraints.append(comm[:, support])
    if constraints:
        sol = nullspace(np.concatenate(constraints), p)
    else:
        sol = np.eye(len(support), dtype=np.int64)
    if sol.shape[0] == 0:
        raise AssertionError("no symmetric form of the required degree")
    vec = np.zeros(rep.dim, dtype=np.int64)
    vec[support] = sol[0]
    # normalise to 1 on the first basis element it sees
    first = np.flatnonzero(vec)[0]
    vec = vec * pow(int(vec[first]), p - 2, p) % p
    gram = gram_matrix(rep, vec)
    r = rank(gram, p)
    if r != rep.dim:
        raise AssertionError("trace form is degenerate")
    return Trace(rep, vec, -top, r)


def gram_matrix(rep, vec):
    """G[i, j] = tau(B_i B_j)."""
    p = rep.p
    # tau(B_i B_j) = sum_k coords(B_i B_j)_k vec_k; coords are linear in the matrix
    w = np.zeros(rep.d * rep.d, dtype=np.int64)
    w[rep._piv] = mm(rep._Q, vec, p)
    wm = w.reshape(rep.d, rep.d)
    # tau(X) = sum_{ab} X_ab wm_ab, so tau(B_i B_j) = trace(B_i B_j wm^T)
    left = rep.mats.reshape(rep.dim, rep.d, rep.d)
    right = mm(rep.mats, wm.T, p)
    return np.einsum("iab,jba->ij", left.astype(object), right.astype(object)).astype(np.int64) % p \
        if rep.dim * rep.d * rep.d * (p - 1) ** 2 > 2 ** 52 else \
        np.rint(np.einsum("iab,jba->ij", left.astype(np.float64), right.astype(np.float64))).astype(np.int64) % p


_rep_source = None


def set_rep_source(source):
    """Route build_rep through source(n, l, p), e.g. an on-disk cache; None restores."""
    global _rep_source
    _rep_source = source
    build_rep.cache_clear()


@lru_cache(maxsize=None)
def build_rep(n, l, p):
    """Shared, cached NH_n^l over F_p."""
    if _rep_source is not None:
        return _rep_source(n, l, p)
    return NHRep(n, l, p)
