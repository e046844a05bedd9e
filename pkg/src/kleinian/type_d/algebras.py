"""The type-D deformation and its quantization.

Deformation: C[x,y,z]/(Q(x) + x y^2 + z^2 - gamma y), normal form f + g z
(z-exponent <= 1, enforced by z^2 -> gamma y - Q(x) - x y^2), Jacobian
Poisson bracket.

Quantization: the algebra on x, y, z with

    [x,y] = 2z,  [x,z] = -2xy + 2z + gamma,  [y,z] = y^2 + A(x) - n,
    Q(x) + x(y^2 - n) + z^2 - 2yz - gamma y = 0,

where A is the unique auxiliary polynomial of degree n-2 satisfying
Q(-x(x-1)) - Q(-x(x+1)) = (x-1)A(-x(x-1)) + (x+1)A(-x(x+1)); elements are
normal-ordered words x^a y^b z^c with c <= 1 via a four-rule straightening
system derived from the relations.  Confluence is validated empirically
(associativity/commutator suites); the straightening loop raises a fatal
diagnostic if its termination bound is ever exceeded.
"""

from __future__ import annotations

from ..errors import InconsistentSystem, ParamMismatch, RewriteError
from ..poly import MPoly, VAR_INDEX
from .. import linsolve

_XI, _YI, _ZI = VAR_INDEX["x"], VAR_INDEX["y"], VAR_INDEX["z"]

NEG_INF = float("-inf")


class LevyP:
    """The auxiliary commutator polynomial, written in the variable u."""

    __slots__ = ("param", "P")

    def __init__(self, param, P):
        if functional_residual(param, P):
            raise InconsistentSystem("polynomial does not satisfy the defining functional equation")
        self.param = param
        self.P = P

    def __str__(self):
        return str(self.P)

    __repr__ = __str__


def _functional_sides(param, P):
    field = param.field
    x = MPoly.var(field, "x")
    arg_minus = -(x * (x - 1))  # -x(x-1)
    arg_plus = -(x * (x + 1))  # -x(x+1)
    lhs = param.Q.substitute({"x": arg_minus}) - param.Q.substitute({"x": arg_plus})
    Pm = P.substitute({"u": arg_minus})
    Pp = P.substitute({"u": arg_plus})
    rhs = (x - 1) * Pm + (x + 1) * Pp
    return lhs, rhs


def functional_residual(param, P):
    lhs, rhs = _functional_sides(param, P)
    return lhs - rhs


def solve_p_levy(param):
    """Solve the coefficient-matching linear system for the auxiliary polynomial."""
    field = param.field
    n = param.n
    x = MPoly.var(field, "x")
    arg_minus = -(x * (x - 1))
    arg_plus = -(x * (x + 1))
    lhs = param.Q.substitute({"x": arg_minus}) - param.Q.substitute({"x": arg_plus})
    max_deg = 2 * n - 2
    # columns: basis contributions (x-1)*arg_minus^j + (x+1)*arg_plus^j
    cols = []
    am, ap = MPoly.const(field, 1), MPoly.const(field, 1)
    for j in range(n - 1):
        basis = (x - 1) * am + (x + 1) * ap
        cols.append(basis)
        am = am * arg_minus
        ap = ap * arg_plus

    def xcoeff(p, d):
        return p.terms.get((d, 0, 0, 0, 0), field.zero)

    rows = [[xcoeff(col, d) for col in cols] for d in range(max_deg + 1)]
    rhs = [xcoeff(lhs, d) for d in range(max_deg + 1)]
    sol = linsolve.solve_exact(field, rows, rhs)
    if sol is None:
        raise InconsistentSystem("no auxiliary polynomial matches the functional equation")
    P = MPoly.from_terms(field, [((0, 0, 0, 0, j), c) for j, c in enumerate(sol)])
    return LevyP(param, P)


_levy_cache = {}


def levy_for(param):
    try:
        return _levy_cache[param]
    except KeyError:
        val = solve_p_levy(param)
        _levy_cache[param] = val
        return val


# -- deformation ----------------------------------------------------------------

def _z_square_rhs(param):
    """gamma*y - Q(x) - x*y^2, the z^2 substitute."""
    field = param.field
    y = MPoly.var(field, "y")
    return y.scale(param.gamma) - param.Q - MPoly.var(field, "x") * y * y


class ElemDDef:
    """Element f + g*z of the type-D deformation (z never appears in f, g)."""

    __slots__ = ("param", "f", "g", "_hash")

    def __init__(self, param, f, g, reduced=True):
        if not (f.uses_only(("x", "y")) and g.uses_only(("x", "y"))):
            raise ValueError("normal-form parts may only involve x and y")
        self.param = param
        self.f = f
        self.g = g
        self._hash = None

    @staticmethod
    def zero(param):
        zp = MPoly.zero(param.field)
        return ElemDDef(param, zp, zp)

    @staticmethod
    def const(param, value):
        return ElemDDef(param, MPoly.const(param.field, value), MPoly.zero(param.field))

    @staticmethod
    def gen(param, name):
        field = param.field
        if name in ("x", "y"):
            return ElemDDef(param, MPoly.var(field, name), MPoly.zero(field))
        if name == "z":
            return ElemDDef(param, MPoly.zero(field), MPoly.const(field, 1))
        raise ValueError(f"unknown generator {name!r}")

    @staticmethod
    def from_poly(param, raw):
        return normalize_d_def(raw, param)

    def body(self):
        """Representative polynomial f + g*z."""
        return self.f + self.g * MPoly.var(self.param.field, "z")

    def _check(self, other):
        if not isinstance(other, ElemDDef):
            other = ElemDDef.const(self.param, other)
        if other.param != self.param:
            raise ParamMismatch("elements live over different type-D parameters")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ElemDDef(self.param, self.f + other.f, self.g + other.g)

    __radd__ = __add__

    def __neg__(self):
        return ElemDDef(self.param, -self.f, -self.g)

    def __sub__(self, other):
        other = self._check(other)
        return ElemDDef(self.param, self.f - other.f, self.g - other.g)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, ElemDDef):
            c = MPoly.const(self.param.field, other)
            return ElemDDef(self.param, self.f * c, self.g * c)
        other = self._check(other)
        zz = _z_square_rhs(self.param)
        f = self.f * other.f + self.g * other.g * zz
        g = self.f * other.g + self.g * other.f
        return ElemDDef(self.param, f, g)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = ElemDDef.const(self.param, 1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self):
        return self.f.is_zero() and self.g.is_zero()

    def __bool__(self):
        return bool(self.f) or bool(self.g)

    def __eq__(self, other):
        if not isinstance(other, ElemDDef):
            return NotImplemented
        return self.param == other.param and self.f == other.f and self.g == other.g

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.param, self.f, self.g))
        return self._hash

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.g.is_zero():
            return str(self.f)
        ztxt = "z" if self.g == MPoly.const(self.param.field, 1) else f"({self.g})*z"
        if self.f.is_zero():
            return ztxt
        return f"{self.f} + {ztxt}"

    __repr__ = __str__


def normalize_d_def(raw, param):
    """Reduce z-exponents below 2 via z^2 -> gamma y - Q(x) - x y^2."""
    if not raw.uses_only(("x", "y", "z")):
        raise ValueError("raw polynomial may only involve x, y, z")
    field = param.field
    zz = _z_square_rhs(param)
    cache = {0: MPoly.const(field, 1)}

    def zzpow(w):
        try:
            return cache[w]
        except KeyError:
            p = zzpow(w - 1) * zz
            cache[w] = p
            return p

    f = MPoly.zero(field)
    g = MPoly.zero(field)
    for exps, c in raw.terms.items():
        e = exps[_ZI]
        ne = list(exps)
        ne[_ZI] = 0
        mono = MPoly(field, {tuple(ne): c}) * zzpow(e // 2)
        if e % 2:
            g = g + mono
        else:
            f = f + mono
    return ElemDDef(param, f, g)


def defining_surface_d(param):
    """psi = Q(x) + x y^2 + z^2 - gamma y."""
    field = param.field
    x, y, z = (MPoly.var(field, v) for v in ("x", "y", "z"))
    return param.Q + x * y * y + z * z - y.scale(param.gamma)


def poisson_bracket_d(a, b):
    """Jacobian-determinant bracket, normalized to z-exponent <= 1."""
    if a.param != b.param:
        raise ParamMismatch("bracket of elements over different parameters")
    from ..type_a.deformation import jacobian_bracket

    raw = jacobian_bracket(a.body(), b.body(), defining_surface_d(a.param))
    return normalize_d_def(raw, a.param)


# -- quantization ------------------------------------------------------------------

class DQuantRing:
    """Straightening kernel for one parameter: rewrite rules plus caches."""

    _cache = {}

    def __new__(cls, param):
        try:
            return cls._cache[param]
        except KeyError:
            pass
        self = super().__new__(cls)
        field = param.field
        self.param = param
        self.levy = levy_for(param)
        n = field.scalar(param.n)
        gamma = param.gamma
        pcoeffs = self.levy.P.scalar_coeffs_in("u")
        qcoeffs = param.Q.scalar_coeffs_in("x")
        one, two = field.one, field.scalar(2)
        # yx -> xy - 2z
        self.rule_yx = (("xy", one), ("z", -two))
        # zx -> xz + 2xy - 2z - gamma
        rule = [("xz", one), ("xy", two), ("z", -two)]
        if gamma:
            rule.append(("", -gamma))
        self.rule_zx = tuple(rule)
        # zy -> yz - y^2 - A(x) + n
        rule = [("yz", one), ("yy", -one), ("", n)]
        for j, c in enumerate(pcoeffs):
            if c:
                rule.append(("x" * j, -c))
        self.rule_zy = tuple(rule)
        # zz -> 2yz + gamma y - Q(x) - x y^2 + n x
        rule = [("yz", two), ("xyy", -one), ("x", n)]
        if gamma:
            rule.append(("y", gamma))
        for j, c in enumerate(qcoeffs):
            if c:
                rule.append(("x" * j, -c))
        self.rule_zz = tuple(rule)
        self._word_nf = {}
        cls._cache[param] = self
        return self

    @staticmethod
    def _first_inversion(word):
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b or (a == "z" and b == "z"):
                return i
        return -1

    def reduce_word(self, word):
        """Normal form of a free word as {(a,b,c): coeff}, memoized."""
        try:
            return self._word_nf[word]
        except KeyError:
            pass
        if len(self._word_nf) > _REWRITE_DEPTH_GUARD:
            raise RewriteError("straightening exceeded its termination bound")
        pos = self._first_inversion(word)
        if pos < 0:
            a = word.count("x")
            b = word.count("y")
            c = len(word) - a - b
            out = {(a, b, c): self.param.field.one}
            self._word_nf[word] = out
            return out
        pair = word[pos : pos + 2]
        if pair == "yx":
            rule = self.rule_yx
        elif pair == "zx":
            rule = self.rule_zx
        elif pair == "zy":
            rule = self.rule_zy
        else:
            rule = self.rule_zz
        prefix, suffix = word[:pos], word[pos + 2 :]
        out = {}
        for mid, coeff in rule:
            sub = self.reduce_word(prefix + mid + suffix)
            for key, c in sub.items():
                s = out.get(key)
                s = coeff * c if s is None else s + coeff * c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        self._word_nf[word] = out
        return out

    def mul_terms(self, k1, k2):
        """Product of two basis monomials as a normal-form term dict."""
        if k1[1] == 0 and k1[2] == 0:  # pure x-power on the left stays ordered
            key = (k1[0] + k2[0], k2[1], k2[2])
            return {key: self.param.field.one}
        word = "x" * k1[0] + "y" * k1[1] + "z" * k1[2] + "x" * k2[0] + "y" * k2[1] + "z" * k2[2]
        return self.reduce_word(word)


_REWRITE_DEPTH_GUARD = 100000


class ElemDQuant:
    """Element of the type-D quantization in the ordered basis x^a y^b z^(c<=1)."""

    __slots__ = ("param", "terms", "_hash")

    def __init__(self, param, terms):
        clean = {}
        for key, c in terms.items():
            if c:
                if key[2] > 1:
                    raise ValueError("normal form requires z-exponent <= 1")
                clean[key] = c
        self.param = param
        self.terms = clean
        self._hash = None

    @staticmethod
    def zero(param):
        return ElemDQuant(param, {})

    @staticmethod
    def const(param, value):
        c = param.field.scalar(value)
        return ElemDQuant(param, {(0, 0, 0): c} if c else {})

    @staticmethod
    def gen(param, name):
        key = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[name]
        return ElemDQuant(param, {key: param.field.one})

    def _check(self, other):
        if not isinstance(other, ElemDQuant):
            other = ElemDQuant.const(self.param, other)
        if other.param != self.param:
            raise ParamMismatch("elements live over different type-D parameters")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            s = c if s is None else s + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return ElemDQuant(self.param, terms)

    __radd__ = __add__

    def __neg__(self):
        return ElemDQuant(self.param, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, ElemDQuant):
            c = self.param.field.scalar(other)
            return ElemDQuant(self.param, {k: v * c for k, v in self.terms.items()})
        other = self._check(other)
        ring = DQuantRing(self.param)
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                for key, c in ring.mul_terms(k1, k2).items():
                    s = terms.get(key)
                    s = c12 * c if s is None else s + c12 * c
                    if s:
                        terms[key] = s
                    else:
                        terms.pop(key, None)
        return ElemDQuant(self.param, terms)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = ElemDQuant.const(self.param, 1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ElemDQuant):
            return NotImplemented
        return self.param == other.param and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.param, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.param.field
        poly = MPoly.from_terms(field, [((a, b, c, 0, 0), v) for (a, b, c), v in self.terms.items()])
        return str(poly)

    __repr__ = __str__


def mul_d_quant(a, b):
    return a * b


def commutator_d(a, b):
    return a * b - b * a


def quartic_residual(param):
    """Image of Q(x) + x(y^2 - n) + z^2 - 2yz - gamma y in normal form."""
    field = param.field
    x, y, z = (ElemDQuant.gen(param, v) for v in ("x", "y", "z"))
    qc = param.Q.scalar_coeffs_in("x")
    Q = ElemDQuant(param, {(j, 0, 0): c for j, c in enumerate(qc) if c})
    n = field.scalar(param.n)
    return Q + x * (y * y - n) + z * z - (y * z) * field.scalar(2) - y * param.gamma


def fdeg_d(a):
    """Filtration degree: deg x = 4, deg y = 2(n-2), deg z = 2(n-1)."""
    n = a.param.n
    wy, wz = 2 * (n - 2), 2 * (n - 1)
    best = NEG_INF
    if isinstance(a, ElemDQuant):
        for (ax, by, cz) in a.terms:
            d = 4 * ax + wy * by + wz * cz
            if d > best:
                best = d
        return best
    for exps in a.f.terms:
        d = 4 * exps[_XI] + wy * exps[_YI]
        if d > best:
            best = d
    for exps in a.g.terms:
        d = 4 * exps[_XI] + wy * exps[_YI] + wz
        if d > best:
            best = d
    return best
