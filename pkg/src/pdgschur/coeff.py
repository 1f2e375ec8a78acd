"""Exact coefficients: prime fields, integer Laurent polynomials in q,
quantum integers and binomials, and the cyclotomic ring O_p = Z[q]/(Psi_p(q^2)).
"""
from functools import lru_cache


def is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class PrimeField:
    """The field F_p; scalars are plain ints in [0, p)."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class Laurent:
    """Integer Laurent polynomial in q, stored as {exponent: coefficient}."""

    __slots__ = ("_c", "_h")

    def __init__(self, terms=None):
        c = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, v in items:
                v = int(v)
                if v:
                    e = int(e)
                    s = c.get(e, 0) + v
                    if s:
                        c[e] = s
                    else:
                        c.pop(e, None)
        self._c = c
        self._h = None

    @classmethod
    def monomial(cls, e, coeff=1):
        return cls({e: coeff})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Laurent):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot make a Laurent polynomial from {x!r}")

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def min_degree(self):
        return min(self._c) if self._c else None

    def max_degree(self):
        return max(self._c) if self._c else None

    def __add__(self, other):
        other = Laurent.coerce(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        other = Laurent.coerce(other)
        out = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Laurent({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by q^k."""
        return Laurent({e + k: v for e, v in self._c.items()})

    def bar(self):
        """The involution q -> q^-1."""
        return Laurent({-e: v for e, v in self._c.items()})

    def at_one(self):
        return sum(self._c.values())

    def is_nonnegative(self):
        return all(v > 0 for v in self._c.values())

    def exact_div(self, other):
        """Quotient by a nonzero Laurent polynomial; raises if not exact."""
        other = Laurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        lo_a, lo_b = self.min_degree(), other.min_degree()
        rem = {e - lo_a: v for e, v in self._c.items()}
        div = {e - lo_b: v for e, v in other._c.items()}
        db = max(div)
        lead = div[db]
        quot = {}
        while rem and max(rem) >= db:
            e = max(rem)
            v = rem[e]
            if v % lead:
                raise ArithmeticError("inexact Laurent division")
            qv, k = v // lead, e - db
            quot[k] = qv
            for e2, v2 in div.items():
                s = rem.get(e2 + k, 0) - qv * v2
                if s:
                    rem[e2 + k] = s
                else:
                    rem.pop(e2 + k, None)
        if rem:
            raise ArithmeticError("inexact Laurent division")
        return Laurent(quot).shift(lo_a - lo_b)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._h is None:
            self._h = hash(tuple(sorted(self._c.items())))
        return self._h

    def to_json(self):
        """Term list [[exponent, coefficient], ...] in increasing exponent."""
        return [[e, v] for e, v in self.items()]

    @classmethod
    def from_json(cls, terms):
        return cls([(e, v) for e, v in terms])

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                qq = "q" if e == 1 else f"q^{e}"
                body = qq if mag == 1 else f"{mag}*{qq}"
            if not parts:
                parts.append(("-" if v < 0 else "") + body)
            else:
                parts.append(("- " if v < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Laurent({self})"


ZERO = Laurent()
ONE = Laurent({0: 1})
Q = Laurent({1: 1})


def quantum_int(m):
    """[m] = q^{1-|m|} + q^{3-|m|} + ... + q^{|m|-1}."""
    m = abs(m)
    return Laurent({1 - m + 2 * i: 1 for i in range(m)})


def quantum_factorial(m):
    out = ONE
    for k in range(1, m + 1):
        out = out * quantum_int(k)
    return out


@lru_cache(maxsize=None)
def quantum_binom(a, b):
    """Balanced quantum binomial via the q-Pascal rule."""
    if a < 0 or b < 0 or b > a:
        raise ValueError(f"quantum_binom({a}, {b}) out of range")
    if b == 0 or b == a:
        return ONE
    return quantum_binom(a - 1, b).shift(b) + quantum_binom(a - 1, b - 1).shift(b - a)


def cyclotomic_modulus(p):
    """Psi_p(q^2) = 1 + q^2 + ... + q^(2p-2)."""
    return Laurent({2 * i: 1 for i in range(p)})


def op_reduce(f, p):
    """Canonical representative of f in O_p."""
    f = Laurent.coerce(f)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.is_zero():
        return CyclotomicScalar(ZERO, p, _reduced=True)
    low = f.min_degree()
    if low < 0:
        # q^(2p) = 1 in O_p, so this only changes the representative
        k = (-low + 2 * p - 1) // (2 * p)
        f = f.shift(2 * p * k)
    rem = dict(f._c)
    top = 2 * p - 2
    while rem and max(rem) >= top:
        e = max(rem)
        v = rem.pop(e)
        for i in range(p - 1):
            t = e - top + 2 * i
            s = rem.get(t, 0) - v
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return CyclotomicScalar(Laurent(rem), p, _reduced=True)


class CyclotomicScalar:
    """Element of O_p held as its canonical remainder."""

    __slots__ = ("rep", "p")

    def __init__(self, rep, p, _reduced=False):
        if not _reduced:
            rep = op_reduce(rep, p).rep
        self.rep = rep
        self.p = p

    def _check(self, other):
        if isinstance(other, (int, Laurent)):
            other = op_reduce(other, self.p)
        if other.p != self.p:
            raise ValueError("mixing different O_p rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        return op_reduce(self.rep + other.rep, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return op_reduce(self.rep - other.rep, self.p)

    def __mul__(self, other):
        other = self._check(other)
        return op_reduce(self.rep * other.rep, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return op_reduce(-self.rep, self.p)

    def is_zero(self):
        return self.rep.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Laurent)):
            other = op_reduce(other, self.p)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.p == other.p and self.rep == other.rep

    def __hash__(self):
        return hash((self.p, self.rep))

    def __repr__(self):
        return f"O_{self.p}({self.rep})"
