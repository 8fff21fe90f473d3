"""Exact polynomial algebra over the rationals.

Sparse uni/bivariate polynomials with Fraction coefficients, subresultant
resultants over the integers, rational root finding, and the odd-index
division polynomials of a Weierstrass model.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd, lcm as _lcm
from typing import Iterable, Mapping, Sequence


class ExactPoly:
    """Immutable sparse polynomial in one or two named variables.

    Coefficients are Fractions kept in lowest terms (Fraction guarantees
    this); zero coefficients are never stored, so the zero polynomial has
    an empty coefficient map.
    """

    __slots__ = ("variables", "coeffs", "_hash")

    def __init__(self, variables: Sequence[str], coeffs: Mapping[tuple, object]):
        variables = tuple(variables)
        if len(variables) not in (1, 2):
            raise ValueError("one or two variables required")
        nv = len(variables)
        clean = {}
        for exps, c in coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "coeffs", {e: c for e, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactPoly is immutable")

    # --- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value, variables=("X",)) -> "ExactPoly":
        z = (0,) * len(variables)
        return cls(variables, {z: Fraction(value)})

    @classmethod
    def variable(cls, name: str, variables=None) -> "ExactPoly":
        variables = (name,) if variables is None else tuple(variables)
        e = tuple(1 if v == name else 0 for v in variables)
        if sum(e) != 1:
            raise ValueError(f"{name!r} not among {variables}")
        return cls(variables, {e: Fraction(1)})

    @classmethod
    def from_dense(cls, coeffs: Iterable, variable="X") -> "ExactPoly":
        """Univariate from low-to-high dense coefficient list."""
        return cls((variable,), {(i,): Fraction(c) for i, c in enumerate(coeffs)})

    # --- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self, variable=None) -> int:
        """Degree in one variable (or the only one). -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        if variable is None:
            if len(self.variables) != 1:
                raise ValueError("variable required for bivariate polynomials")
            variable = self.variables[0]
        i = self.variables.index(variable)
        return max(e[i] for e in self.coeffs)

    def to_dense(self) -> list:
        """Univariate low-to-high dense Fraction list ([] for zero)."""
        if len(self.variables) != 1:
            raise ValueError("univariate only")
        if not self.coeffs:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for (i,), c in self.coeffs.items():
            out[i] = c
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def __eq__(self, other):
        return (isinstance(other, ExactPoly)
                and self.variables == other.variables
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.variables, frozenset(self.coeffs.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "ExactPoly(0)"
        terms = []
        for exps in sorted(self.coeffs, reverse=True):
            c = self.coeffs[exps]
            mono = "*".join(f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "ExactPoly(" + " + ".join(terms) + ")"

    # --- arithmetic -------------------------------------------------------

    def _check_same(self, other):
        if self.variables != other.variables:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(other, self.variables)
        self._check_same(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ExactPoly(self.variables, out)

    def __neg__(self):
        return ExactPoly(self.variables, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(other, self.variables)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(other, self.variables)
        self._check_same(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return ExactPoly(self.variables, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = ExactPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scaled(self, factor) -> "ExactPoly":
        factor = Fraction(factor)
        return ExactPoly(self.variables, {e: c * factor for e, c in self.coeffs.items()})

    # --- evaluation and substitution ---------------------------------------

    def evaluate(self, *values) -> Fraction:
        if len(values) != len(self.variables):
            raise ValueError("wrong number of values")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for exps, c in self.coeffs.items():
            term = c
            for v, e in zip(vals, exps):
                term *= v ** e
            total += term
        return total

    def substitute(self, variable: str, replacement: "ExactPoly") -> "ExactPoly":
        """Substitute a polynomial (in the remaining variable) for one variable."""
        if len(self.variables) != 2:
            raise ValueError("substitute targets bivariate polynomials")
        i = self.variables.index(variable)
        j = 1 - i
        keep = self.variables[j]
        if replacement.variables != (keep,):
            raise ValueError("replacement must be univariate in the other variable")
        out = ExactPoly.constant(0, (keep,))
        for exps, c in self.coeffs.items():
            term = ExactPoly((keep,), {(exps[j],): c})
            out = out + term * replacement ** exps[i]
        return out

    def derivative(self, variable=None) -> "ExactPoly":
        if variable is None:
            if len(self.variables) != 1:
                raise ValueError("variable required")
            variable = self.variables[0]
        i = self.variables.index(variable)
        out = {}
        for exps, c in self.coeffs.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            e[i] -= 1
            out[tuple(e)] = c * exps[i]
        return ExactPoly(self.variables, out)

    # --- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        entries = sorted((list(e), str(c.numerator), str(c.denominator))
                         for e, c in self.coeffs.items())
        return {"variables": list(self.variables),
                "terms": [[e, n, d] for e, n, d in entries]}

    @classmethod
    def from_json(cls, data: dict) -> "ExactPoly":
        coeffs = {tuple(e): Fraction(int(n), int(d)) for e, n, d in data["terms"]}
        return cls(tuple(data["variables"]), coeffs)


# --- dense univariate helpers (Fraction lists, low-to-high) -----------------

def dense_trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def dense_eval(c: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def dense_derivative(c: Sequence) -> list:
    return [c[i] * i for i in range(1, len(c))]


def dense_divmod(a: Sequence, b: Sequence):
    """Quotient and remainder over the rationals."""
    a = [Fraction(x) for x in a]
    b = dense_trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    dense_trim(r)
    while r and len(r) >= len(b):
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = factor
        for i, bc in enumerate(b):
            r[i + shift] -= factor * bc
        dense_trim(r)
    return dense_trim(q), r


def dense_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over the rationals."""
    a = dense_trim([Fraction(x) for x in a])
    b = dense_trim([Fraction(x) for x in b])
    while b:
        _, r = dense_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_part(c: Sequence) -> list:
    """c divided by gcd(c, c'); roots preserved, multiplicities dropped."""
    c = dense_trim([Fraction(x) for x in c])
    if len(c) <= 1:
        return c
    g = dense_gcd(c, dense_derivative(c))
    q, r = dense_divmod(c, g)
    assert not r
    return q


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# --- public operations --------------------------------------------------------


def poly_resultant(a: ExactPoly, b: ExactPoly) -> int:
    """Resultant of two univariate integer polynomials (Sylvester value).

    Computed by the subresultant polynomial remainder sequence, which keeps
    intermediate coefficient growth polynomial in the input size.
    """
    for p in (a, b):
        if p.is_zero():
            raise ValueError("resultant of the zero polynomial is undefined")
        if len(p.variables) != 1:
            raise ValueError("univariate polynomials required")
        if not p.is_integral():
            raise ValueError("integer coefficients required")
    if a.variables != b.variables:
        raise ValueError("variable mismatch")
    A = [int(c) for c in a.to_dense()]
    B = [int(c) for c in b.to_dense()]
    return _int_resultant(A, B)


def _pseudo_rem(A: list, B: list) -> list:
    """Integer pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B."""
    db = len(B) - 1
    lead = B[-1]
    steps = len(A) - len(B) + 1
    R = A[:]
    for _ in range(steps):
        if len(R) - 1 < db:
            # degree already dropped; scaling must still total lead^(delta+1)
            R = [c * lead for c in R]
            continue
        top = R[-1]
        deg = len(R) - 1
        R = [c * lead for c in R]
        for j in range(db + 1):
            R[deg - db + j] -= top * B[j]
        while R and R[-1] == 0:
            R.pop()
    return R


def _int_resultant(A: list, B: list) -> int:
    # Subresultant PRS; all divisions below are exact in Z.
    sign = 1
    da, db = len(A) - 1, len(B) - 1
    if da < db:
        A, B, da, db = B, A, db, da
        if (da * db) % 2:
            sign = -sign
    if da == 0:
        return sign  # two nonzero constants
    if db == 0:
        return sign * B[0] ** da
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if (da % 2) and (db % 2):
            sign = -sign
        R = _pseudo_rem(A, B)
        A = B
        divisor = g * h ** delta
        B = [c // divisor for c in R]
        if not B:
            return 0
        g = A[-1]
        if delta >= 1:
            h = g ** delta // h ** (delta - 1)
        if len(B) == 1:
            da = len(A) - 1
            if da == 0:
                return sign
            return sign * B[0] ** da // h ** (da - 1)


def rational_roots(a: ExactPoly) -> set:
    """All rational roots of a univariate rational polynomial, multiplicity dropped.

    Candidate search over the primitive integer model: r/s in lowest terms
    needs r | constant term and s | leading coefficient.
    """
    if a.is_zero():
        raise ValueError("zero polynomial")
    if len(a.variables) != 1:
        raise ValueError("univariate polynomial required")
    dense = a.to_dense()
    # clear denominators to a primitive integer polynomial (same roots)
    den = _lcm(*[c.denominator for c in dense])
    ints = [int(c * den) for c in dense]
    content = 0
    for c in ints:
        content = _gcd(content, c)
    ints = [c // content for c in ints]
    roots = set()
    # strip zero roots
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
        ints = ints[shift:]
    if len(ints) == 1:
        return roots
    a0, an = ints[0], ints[-1]
    for r in _divisors(a0):
        for s in _divisors(an):
            if _gcd(r, s) != 1:
                continue
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if cand in roots:
                    continue
                if dense_eval(ints, cand) == 0:
                    roots.add(cand)
    return roots


def division_polynomial(model, n: int) -> ExactPoly:
    """The n-division polynomial in X of a long Weierstrass model, odd n only.

    Roots are the x-coordinates of the nonzero n-torsion points.  Y is
    eliminated with the curve equation at every recurrence step, so all
    intermediate objects are univariate.  Even n has no univariate form in
    this normalization and raises ValueError.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2 == 0:
        raise ValueError("even-index division polynomials are not supported")
    b2, b4, b6, b8 = (Fraction(model.b2), Fraction(model.b4),
                      Fraction(model.b6), Fraction(model.b8))
    # psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    B = [b6, 2 * b4, b2, Fraction(4)]
    # cofactors u_k: psi_k = u_k for odd k, psi_k = u_k * psi_2 for even k
    memo = {
        0: [],
        1: [Fraction(1)],
        2: [Fraction(1)],
        3: [b8, 3 * b6, 3 * b4, b2, Fraction(3)],
        4: [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6,
            5 * b4, b2, Fraction(2)],
    }

    def mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, pc in enumerate(p):
            if pc:
                for j, qc in enumerate(q):
                    out[i + j] += pc * qc
        return dense_trim(out)

    def sub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] -= c
        return dense_trim(out)

    def u(k):
        if k in memo:
            return memo[k]
        if k % 2:
            m = (k - 1) // 2
            t1 = mul(u(m + 2), mul(u(m), mul(u(m), u(m))))
            t2 = mul(u(m - 1), mul(u(m + 1), mul(u(m + 1), u(m + 1))))
            if m % 2 == 0:
                val = sub(mul(mul(B, B), t1), t2)
            else:
                val = sub(t1, mul(mul(B, B), t2))
        else:
            m = k // 2
            inner = sub(mul(u(m + 2), mul(u(m - 1), u(m - 1))),
                        mul(u(m - 2), mul(u(m + 1), u(m + 1))))
            val = mul(u(m), inner)
        memo[k] = val
        return val

    return ExactPoly.from_dense(u(n), "X")


def substitute_and_clear(h: ExactPoly, y_numerator, clearing_power: int) -> ExactPoly:
    """X^clearing_power * h(X, y_numerator/X) as a polynomial in X.

    The second variable is replaced by y_numerator/X and denominators are
    cleared by the stated power; requires Y-degree <= clearing_power so the
    result has no negative exponents.
    """
    if len(h.variables) != 2:
        raise ValueError("bivariate polynomial required")
    ydeg = h.degree(h.variables[1])
    if ydeg > clearing_power:
        raise ValueError(f"Y-degree {ydeg} exceeds clearing power {clearing_power}")
    a = Fraction(y_numerator)
    xvar = h.variables[0]
    out = {}
    for (i, j), c in h.coeffs.items():
        e = i - j + clearing_power
        out[(e,)] = out.get((e,), Fraction(0)) + c * a ** j
    return ExactPoly((xvar,), out)


def content_valuation(a: ExactPoly, prime: int) -> int:
    """Minimum p-adic valuation over all coefficients of an integer polynomial."""
    if a.is_zero():
        raise ValueError("zero polynomial")
    if prime < 2:
        raise ValueError("prime must be >= 2")
    if not a.is_integral():
        raise ValueError("integer coefficients required")
    best = None
    for c in a.coeffs.values():
        v = 0
        n = int(c)
        while n % prime == 0:
            n //= prime
            v += 1
        best = v if best is None else min(best, v)
        if best == 0:
            break
    return best
