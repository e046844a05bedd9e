"""Sparse exact polynomials over Q(zeta_k) in the fixed variables x,y,z,t,u.

Terms are a dict from 5-long exponent tuples to nonzero CycScalar
coefficients; the variable set is closed.  Printing and canonical term
order is graded-lex descending.  Also home to the deformation-parameter
types and the shift/difference operators the quantizations use.
"""

from __future__ import annotations

from math import gcd

from .scalars import CycField, CycScalar, rat

VARS = ("x", "y", "z", "t", "u")
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
_ZERO_EXP = (0, 0, 0, 0, 0)


def _term_key(exps):
    return (sum(exps), exps)


class MPoly:
    """Sparse commutative polynomial over a cyclotomic field."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms):
        self.field = field
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(field):
        return MPoly(field, {})

    @staticmethod
    def const(field, value):
        c = field.scalar(value) if not isinstance(value, CycScalar) else value
        return MPoly(field, {_ZERO_EXP: c} if c else {})

    @staticmethod
    def var(field, name, exp=1, coeff=None):
        e = [0, 0, 0, 0, 0]
        e[VAR_INDEX[name]] = exp
        c = field.one if coeff is None else field.scalar(coeff)
        return MPoly(field, {tuple(e): c} if c else {})

    @staticmethod
    def from_terms(field, items):
        terms = {}
        for exps, coeff in items:
            c = field.scalar(coeff)
            if not c:
                continue
            key = tuple(exps)
            acc = terms.get(key)
            c = c if acc is None else acc + c
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return MPoly(field, terms)

    # -- predicates --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self):
        return self.terms.get(_ZERO_EXP, self.field.zero)

    def uses_only(self, names):
        allowed = {VAR_INDEX[v] for v in names}
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e and i not in allowed:
                    return False
        return True

    def degree(self, name):
        i = VAR_INDEX[name]
        return max((exps[i] for exps in self.terms), default=0)

    def total_degree(self):
        return max((sum(exps) for exps in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.field is not self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, CycScalar)) or type(other) is type(rat(0)):
            return MPoly.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        big, small = (self.terms, o.terms) if len(self.terms) >= len(o.terms) else (o.terms, self.terms)
        terms = dict(big)
        for exps, c in small.items():
            acc = terms.get(exps)
            s = c if acc is None else acc + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MPoly(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            acc = terms.get(exps)
            s = -c if acc is None else acc - c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MPoly(self.field, terms)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if not a or not b:
            return MPoly(self.field, {})
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        get = terms.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                c = c1 * c2
                acc = get(e)
                s = c if acc is None else acc + c
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MPoly(self.field, terms)

    __rmul__ = __mul__

    def scale(self, c):
        if not isinstance(c, CycScalar):
            c = self.field.scalar(c)
        if not c:
            return MPoly(self.field, {})
        return MPoly(self.field, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus / substitution -------------------------------------------
    def derivative(self, name):
        i = VAR_INDEX[name]
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                ne = list(exps)
                ne[i] = e - 1
                key = tuple(ne)
                cc = c * e
                acc = terms.get(key)
                s = cc if acc is None else acc + cc
                if s:
                    terms[key] = s
        return MPoly(self.field, terms)

    def substitute(self, bindings):
        """Simultaneous substitution {var: MPoly}; unbound variables persist."""
        if not bindings:
            return self
        idx = {VAR_INDEX[v]: p for v, p in bindings.items()}
        caches = {i: {0: MPoly.const(self.field, 1)} for i in idx}

        def power(i, e):
            cache = caches[i]
            try:
                return cache[e]
            except KeyError:
                p = power(i, e - 1) * idx[i]
                cache[e] = p
                return p

        out = MPoly(self.field, {})
        for exps, c in self.terms.items():
            rest = list(exps)
            factor = None
            for i in idx:
                e = exps[i]
                if e:
                    rest[i] = 0
                    p = power(i, e)
                    factor = p if factor is None else factor * p
            mono = MPoly(self.field, {tuple(rest): c})
            out = out + (mono if factor is None else mono * factor)
        return out

    def coeffs_in(self, name):
        """Ascending coefficient list (MPoly values) of self viewed in `name`."""
        i = VAR_INDEX[name]
        deg = self.degree(name)
        out = [dict() for _ in range(deg + 1)]
        for exps, c in self.terms.items():
            e = exps[i]
            ne = list(exps)
            ne[i] = 0
            out[e][tuple(ne)] = c
        return [MPoly(self.field, d) for d in out]

    def scalar_coeffs_in(self, name):
        """Ascending CycScalar coefficients; requires univariate in `name`."""
        if not self.uses_only((name,)):
            raise ValueError(f"polynomial is not univariate in {name}")
        i = VAR_INDEX[name]
        out = [self.field.zero] * (self.degree(name) + 1)
        for exps, c in self.terms.items():
            out[exps[i]] = c
        return out

    def eval_scalar(self, name, value):
        """Evaluate a univariate polynomial at a CycScalar point."""
        coeffs = self.scalar_coeffs_in(name)
        acc = self.field.zero
        for c in reversed(coeffs):
            acc = acc * value + c
        return acc

    # -- shift / difference operators ---------------------------------------
    def shift_sigma(self, m):
        """Apply sigma_t^m: z -> z - m*t (t fixed); m may be negative."""
        if m == 0 or not self.terms:
            return self
        zi, ti = VAR_INDEX["z"], VAR_INDEX["t"]
        field = self.field
        # binomial expansion of (z - m t)^e per z-degree, cached
        cache = {0: MPoly.const(field, 1)}
        zmt = MPoly.from_terms(field, [((0, 0, 1, 0, 0), field.one), ((0, 0, 0, 1, 0), field.scalar(-m))])

        def zp(e):
            try:
                return cache[e]
            except KeyError:
                p = zp(e - 1) * zmt
                cache[e] = p
                return p

        out = MPoly(field, {})
        for exps, c in self.terms.items():
            e = exps[zi]
            ne = list(exps)
            ne[zi] = 0
            mono = MPoly(field, {tuple(ne): c})
            out = out + (mono if e == 0 else mono * zp(e))
        return out

    def delta_m(self, m, iterations=1):
        """(sigma_t^m - 1)^iterations applied to self."""
        if iterations < 1:
            raise ValueError("iterations must be >= 1")
        cur = self
        for _ in range(iterations):
            cur = cur.shift_sigma(m) - cur
        return cur

    def divide_exact_t(self):
        """Exact division by t; raises if any term lacks a t factor."""
        ti = VAR_INDEX["t"]
        terms = {}
        for exps, c in self.terms.items():
            if exps[ti] == 0:
                raise ValueError("polynomial is not divisible by t")
            ne = list(exps)
            ne[ti] -= 1
            terms[tuple(ne)] = c
        return MPoly(self.field, terms)

    def divide_exact_var(self, name):
        """Exact division by a single variable."""
        i = VAR_INDEX[name]
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                raise ValueError(f"polynomial is not divisible by {name}")
            ne = list(exps)
            ne[i] -= 1
            terms[tuple(ne)] = c
        return MPoly(self.field, terms)

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.k, frozenset(self.terms.items())))
        return self._hash

    # -- printing -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            negate, coeff_txt = _coeff_factor_text(c)
            factors = [] if coeff_txt is None else [coeff_txt]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(VARS[i])
                elif e > 1:
                    factors.append(f"{VARS[i]}^{e}")
            if not factors:
                factors = ["1"]
            body = "*".join(factors)
            if not parts:
                parts.append(f"-{body}" if negate else body)
            else:
                parts.append(f" - {body}" if negate else f" + {body}")
        return "".join(parts)

    __repr__ = __str__


def _coeff_factor_text(c):
    """Render a coefficient as (negate, factor-text or None for unit).

    The text is always a valid grammar factor chain: a rational, a rational
    times i/zeta^j, or a parenthesized sum for multi-term scalars.
    """
    nonzero = [(j, v) for j, v in enumerate(c.coeffs) if v]
    if len(nonzero) == 1:
        j, v = nonzero[0]
        negate = v < 0
        mag = -v if negate else v
        sym = c._basis_symbol(j)
        if sym is None:
            return negate, (None if mag == 1 else str(mag))
        return negate, (sym if mag == 1 else f"{mag}*{sym}")
    return False, f"({c})"


def poly_arith(a, b, op):
    """Exact polynomial arithmetic dispatch; op in {add, sub, mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def shift_sigma(f, m):
    return f.shift_sigma(m)


def delta_m(f, m, iterations=1):
    return f.delta_m(m, iterations)


def substitute(f, bindings):
    return f.substitute(bindings)


def derivative(f, var):
    return f.derivative(var)


class DefParamA:
    """Type-A deformation parameter: monic P in z of degree n, no z^(n-1) term."""

    __slots__ = ("field", "n", "P", "_hash")

    def __init__(self, field, P, n=None):
        if not isinstance(P, MPoly):
            raise TypeError("P must be an MPoly")
        if not P.uses_only(("z",)):
            raise ValueError("P must be univariate in z")
        deg = P.degree("z")
        if n is None:
            n = deg
        if n < 2 or deg != n:
            raise ValueError("P must have degree n >= 2")
        coeffs = P.scalar_coeffs_in("z")
        if coeffs[n] != field.one:
            raise ValueError("P must be monic")
        if n >= 1 and coeffs[n - 1]:
            raise ValueError("P must have no z^(n-1) term")
        self.field = field
        self.n = n
        self.P = P
        self._hash = None

    @staticmethod
    def from_coeffs(field, coeffs):
        """Build from ascending scalar coefficients (last must be 1)."""
        P = MPoly.from_terms(field, [((0, 0, e, 0, 0), c) for e, c in enumerate(coeffs)])
        return DefParamA(field, P)

    def reflective(self):
        """True iff P(-z) = (-1)^n P(z), i.e. all exponents match n mod 2."""
        return all(exps[2] % 2 == self.n % 2 for exps in self.P.terms)

    def is_z_power(self):
        return len(self.P.terms) == 1

    def exponents(self):
        return sorted(exps[2] for exps in self.P.terms)

    def shape(self):
        """(i, d) with P = z^i * Q(z^d), d maximal; d=0 means P = z^n (any d)."""
        exps = self.exponents()
        i = exps[0]
        d = 0
        for e in exps[1:]:
            d = gcd(d, e - i)
        return i, d

    def symmetry_valid(self, mu, d):
        """Whether S_mu with step d is an automorphism parameter-wise."""
        if d < 1 or mu ** d != self.field.one:
            return False
        _, dmax = self.shape()
        return dmax == 0 or dmax % d == 0

    def __eq__(self, other):
        return (
            isinstance(other, DefParamA)
            and self.field is other.field
            and self.n == other.n
            and self.P == other.P
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("A", self.n, self.P))
        return self._hash

    def __str__(self):
        return f"A-parameter(n={self.n}, P={self.P})"

    __repr__ = __str__


class DefParamD:
    """Type-D deformation parameter: monic Q in x of degree n-1, plus gamma."""

    __slots__ = ("field", "n", "Q", "gamma", "_hash")

    def __init__(self, field, n, Q, gamma):
        if n < 4:
            raise ValueError("type-D parameters need n >= 4")
        if not isinstance(Q, MPoly) or not Q.uses_only(("x",)):
            raise ValueError("Q must be univariate in x")
        coeffs = Q.scalar_coeffs_in("x")
        if Q.degree("x") != n - 1 or coeffs[n - 1] != field.one:
            raise ValueError("Q must be monic of degree n-1")
        if not isinstance(gamma, CycScalar):
            gamma = field.scalar(gamma)
        self.field = field
        self.n = n
        self.Q = Q
        self.gamma = gamma
        self._hash = None

    @staticmethod
    def from_coeffs(field, n, qcoeffs, gamma):
        Q = MPoly.from_terms(field, [((e, 0, 0, 0, 0), c) for e, c in enumerate(qcoeffs)])
        return DefParamD(field, n, Q, gamma)

    def d_m(self):
        """(d, m) with Q = x^d * S(x^m), m maximal; m=0 when Q = x^(n-1)."""
        exps = sorted(e[0] for e in self.Q.terms)
        d = exps[0]
        m = 0
        for e in exps[1:]:
            m = gcd(m, e - d)
        return d, m

    def abc(self):
        """For n=4: the (a, b, c) coefficients of Q = x^3 + a x^2 + b x + c."""
        if self.n != 4:
            raise ValueError("abc() only defined for n=4")
        coeffs = self.Q.scalar_coeffs_in("x")
        coeffs += [self.field.zero] * (4 - len(coeffs))
        return coeffs[2], coeffs[1], coeffs[0]

    def __eq__(self, other):
        return (
            isinstance(other, DefParamD)
            and self.field is other.field
            and self.n == other.n
            and self.Q == other.Q
            and self.gamma == other.gamma
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("D", self.n, self.Q, self.gamma))
        return self._hash

    def __str__(self):
        return f"D-parameter(n={self.n}, Q={self.Q}, gamma={self.gamma})"

    __repr__ = __str__
