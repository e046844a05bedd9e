"""The commutative Poisson surface C[x,y,z]/(xy - P(z)) for a type-A parameter.

Normal forms use the monomial basis x^a z^c, z^c y^b (no monomial divisible
by xy); the Poisson bracket of two elements is the Jacobian determinant of
(f, g, xy - P(z)), which restricts to {x,y} = -P'(z), {z,x} = x, {z,y} = -y
on generators and satisfies Jacobi/Leibniz by construction.
"""

from __future__ import annotations

from ..errors import ParamMismatch
from ..poly import MPoly, VAR_INDEX

_XI, _YI, _ZI = VAR_INDEX["x"], VAR_INDEX["y"], VAR_INDEX["z"]

NEG_INF = float("-inf")


def _reduce_xy(raw, param):
    """Rewrite every monomial divisible by xy using xy -> P(z)."""
    field = raw.field
    pcache = {0: MPoly.const(field, 1), 1: param.P}

    def ppow(w):
        try:
            return pcache[w]
        except KeyError:
            p = ppow(w - 1) * param.P
            pcache[w] = p
            return p

    out = MPoly(field, {})
    for exps, c in raw.terms.items():
        w = min(exps[_XI], exps[_YI])
        if w == 0:
            out = out + MPoly(field, {exps: c})
        else:
            ne = list(exps)
            ne[_XI] -= w
            ne[_YI] -= w
            out = out + MPoly(field, {tuple(ne): c}) * ppow(w)
    return out


class ElemADef:
    """An element of the type-A deformation, stored in normal form."""

    __slots__ = ("param", "body", "_hash")

    def __init__(self, param, body, reduced=False):
        if not body.uses_only(("x", "y", "z")):
            raise ValueError("element body may only involve x, y, z")
        if not reduced:
            body = _reduce_xy(body, param)
        self.param = param
        self.body = body
        self._hash = None

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(param):
        return ElemADef(param, MPoly.zero(param.field), reduced=True)

    @staticmethod
    def const(param, value):
        return ElemADef(param, MPoly.const(param.field, value), reduced=True)

    @staticmethod
    def gen(param, name):
        return ElemADef(param, MPoly.var(param.field, name), reduced=True)

    @staticmethod
    def from_poly(param, raw):
        return ElemADef(param, raw)

    # -- ring structure -------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, ElemADef):
            other = ElemADef.const(self.param, other)
        if other.param != self.param:
            raise ParamMismatch("elements live over different type-A parameters")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ElemADef(self.param, self.body + other.body, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return ElemADef(self.param, -self.body, reduced=True)

    def __sub__(self, other):
        other = self._check(other)
        return ElemADef(self.param, self.body - other.body, reduced=True)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, ElemADef):
            other = self._check(other)
            return ElemADef(self.param, self.body * other.body)
        return ElemADef(self.param, self.body * MPoly.const(self.param.field, other), reduced=True)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = ElemADef.const(self.param, 1)
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self):
        return self.body.is_zero()

    def __bool__(self):
        return bool(self.body)

    def __eq__(self, other):
        if not isinstance(other, ElemADef):
            return NotImplemented
        return self.param == other.param and self.body == other.body

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.param, self.body))
        return self._hash

    def __str__(self):
        return str(self.body)

    __repr__ = __str__


def normalize_a_def(raw, param):
    """Normal form of a raw polynomial in the quotient; idempotent."""
    return ElemADef(param, raw)


def mul_a_def(a, b):
    return a * b


def jacobian_bracket(f, g, psi):
    """det of the Jacobian of (f, g, psi) w.r.t. (x, y, z)."""
    fx, fy, fz = f.derivative("x"), f.derivative("y"), f.derivative("z")
    gx, gy, gz = g.derivative("x"), g.derivative("y"), g.derivative("z")
    px, py, pz = psi.derivative("x"), psi.derivative("y"), psi.derivative("z")
    return fx * (gy * pz - gz * py) - fy * (gx * pz - gz * px) + fz * (gx * py - gy * px)


def defining_surface_a(param):
    """psi = xy - P(z)."""
    field = param.field
    xy = MPoly.var(field, "x") * MPoly.var(field, "y")
    return xy - param.P


def poisson_bracket_a(a, b):
    """Poisson bracket on the deformation, in normal form."""
    if a.param != b.param:
        raise ParamMismatch("bracket of elements over different parameters")
    psi = defining_surface_a(a.param)
    return ElemADef(a.param, jacobian_bracket(a.body, b.body, psi))


def fdeg_a(a):
    """Filtration degree: deg x = deg y = n, deg z = 2; -inf on zero."""
    n = a.param.n
    best = NEG_INF
    for exps in a.body.terms:
        d = n * (exps[_XI] + exps[_YI]) + 2 * exps[_ZI]
        if d > best:
            best = d
    return best
