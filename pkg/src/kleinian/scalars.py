"""Exact arithmetic in the cyclotomic field Q(zeta_k).

Elements are stored as coefficient vectors over the power basis
1, u, ..., u^(phi(k)-1) of Q[u]/(Phi_k(u)), with arbitrary-precision
rational coefficients.  k is fixed per field object; the session default
is k=4, i.e. the Gaussian rationals Q(i).  No floating point anywhere.
"""

from __future__ import annotations

from math import gcd

try:
    from gmpy2 import mpq as _mpq

    def rat(p, q=1):
        return _mpq(p, q)
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq

    def rat(p, q=1):
        return _mpq(p, q)


_RAT_ZERO = rat(0)
_RAT_ONE = rat(1)


def _euler_phi(k):
    result = k
    m, p = k, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    """Exact division of integer coefficient lists (ascending); den monic-ish."""
    num = list(num)
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        q = c // lead
        quot[i - deg_d] = q
        for j, d in enumerate(den):
            num[i - deg_d + j] -= q * d
    assert all(c == 0 for c in num[:deg_d]) and all(c == 0 for c in num[deg_d:])
    return quot


def cyclotomic_poly(k):
    """Integer coefficients (ascending) of the k-th cyclotomic polynomial."""
    # Phi_k = (u^k - 1) / prod_{d|k, d<k} Phi_d
    num = [0] * (k + 1)
    num[0], num[k] = -1, 1
    for d in range(1, k):
        if k % d == 0:
            num = _poly_divmod_int(num, cyclotomic_poly(d))
    return num


class CycField:
    """The field Q(zeta_k), together with reduction data mod Phi_k."""

    _cache = {}

    def __new__(cls, k):
        if k < 1:
            raise ValueError("cyclotomic index k must be >= 1")
        try:
            return cls._cache[k]
        except KeyError:
            pass
        self = super().__new__(cls)
        self.k = k
        phi = cyclotomic_poly(k)
        self.degree = len(phi) - 1
        d = self.degree
        # u^(d+j) reduced mod Phi_k, for j = 0 .. d-2 (enough for products)
        tails = []
        cur = [rat(-c) for c in phi[:d]]  # u^d = -(lower part)
        tails.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [_RAT_ZERO] * d
            top = cur[d - 1]
            for i in range(d - 1):
                nxt[i + 1] = cur[i]
            if top:
                for i in range(d):
                    nxt[i] += top * tails[0][i]
            cur = nxt
            tails.append(tuple(cur))
        self._tails = tails
        self.zero = CycScalar(self, tuple([_RAT_ZERO] * d))
        one = [_RAT_ZERO] * d
        one[0] = _RAT_ONE
        self.one = CycScalar(self, tuple(one))
        cls._cache[k] = self
        return self

    def __repr__(self):
        return f"CycField(k={self.k})"

    def scalar(self, value):
        """Embed a rational (int, Fraction, mpq, or CycScalar) into the field."""
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise ValueError("scalar belongs to a different field")
            return value
        coeffs = [_RAT_ZERO] * self.degree
        coeffs[0] = rat(value)
        return CycScalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs):
        vals = [rat(c) for c in coeffs]
        if len(vals) != self.degree:
            raise ValueError("coefficient vector has wrong length")
        return CycScalar(self, tuple(vals))

    def zeta(self):
        """The primitive k-th root of unity u (equals 1 when k=1, -1 when k=2)."""
        if self.degree == 1:
            return self.one if self.k == 1 else -self.one
        coeffs = [_RAT_ZERO] * self.degree
        coeffs[1] = _RAT_ONE
        return CycScalar(self, tuple(coeffs))

    def i(self):
        """The imaginary unit; requires 4 | k."""
        if self.k % 4 != 0:
            raise ValueError(f"Q(zeta_{self.k}) does not contain i (need 4 | k)")
        return self.zeta() ** (self.k // 4)

    def unity_bound(self):
        """Every root of unity in the field has order dividing lcm(2,k)."""
        return self.k * 2 // gcd(2, self.k)

    def roots_of_unity(self):
        """All roots of unity in the field: the group generated by -zeta."""
        z = self.zeta()
        out, cur = [], self.one
        n = self.unity_bound()
        seen = set()
        for _ in range(n):
            if cur not in seen:
                seen.add(cur)
                out.append(cur)
            if (-cur) not in seen:
                seen.add(-cur)
                out.append(-cur)
            cur = cur * z
        return out

    def _reduce(self, conv):
        """Reduce a convolution of length <= 2*degree-1 to the power basis."""
        d = self.degree
        out = list(conv[:d]) + [_RAT_ZERO] * (d - len(conv)) if len(conv) < d else list(conv[:d])
        for j in range(d, len(conv)):
            c = conv[j]
            if c:
                tail = self._tails[j - d]
                for i in range(d):
                    if tail[i]:
                        out[i] += c * tail[i]
        return CycScalar(self, tuple(out))


class CycScalar:
    """An element of Q(zeta_k); immutable, exact."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, type(_RAT_ZERO))):
            return self.field.scalar(other)
        return None

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_part(self):
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycScalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        d = self.field.degree
        if d == 1:
            return CycScalar(self.field, (a[0] * b[0],))
        conv = [_RAT_ZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return self.field._reduce(conv)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_k."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_k)")
        if self.is_rational():
            coeffs = [_RAT_ZERO] * self.field.degree
            coeffs[0] = 1 / rat(self.coeffs[0])
            return CycScalar(self.field, tuple(coeffs))
        phi = [rat(c) for c in cyclotomic_poly(self.field.k)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [_RAT_ZERO], [_RAT_ONE]
        while True:
            r1 = _trim(r1)
            if len(r1) == 1:
                inv = 1 / r1[0]
                res = [c * inv for c in s1]
                res += [_RAT_ZERO] * (self.field.degree - len(res))
                return self.field._reduce(res)
            q, r = _poly_divmod_rat(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, type(_RAT_ZERO))):
            other = self.field.scalar(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.k, self.coeffs))
        return self._hash

    # -- printing --------------------------------------------------------
    def _basis_symbol(self, j):
        if j == 0:
            return None
        if self.field.k % 4 == 0 and j == self.field.k // 4:
            return "i"
        return "zeta" if j == 1 else f"zeta^{j}"

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            sym = self._basis_symbol(j)
            mag = c if c > 0 else -c
            if sym is None:
                body = str(mag)
            elif mag == 1:
                body = sym
            else:
                body = f"{mag}*{sym}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts) if parts else "0"

    __repr__ = __str__


def _trim(p):
    n = len(p)
    while n > 1 and not p[n - 1]:
        n -= 1
    return p[:n]


def _poly_mul(a, b):
    out = [_RAT_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else _RAT_ZERO) - (b[i] if i < len(b) else _RAT_ZERO) for i in range(n)]


def _poly_divmod_rat(num, den):
    num = list(num)
    den = _trim(list(den))
    dd = len(den) - 1
    inv = 1 / den[dd]
    quot = [_RAT_ZERO] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q = c * inv
            quot[i - dd] = q
            for j, d in enumerate(den):
                num[i - dd + j] -= q * d
    return quot, _trim(num[:dd] if dd else [_RAT_ZERO])


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def root_of_unity_order(a):
    """Least d >= 1 with a^d = 1, or None if a is not a root of unity.

    Any root of unity in Q(zeta_k) has order dividing lcm(2,k), so the
    search over divisors of that bound is exact.
    """
    if a.is_zero():
        return None
    bound = a.field.unity_bound()
    one = a.field.one
    for d in _divisors(bound):
        if a ** d == one:
            return d
    return None


def scalar_arith(a, b, op):
    """Field arithmetic dispatch; op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
