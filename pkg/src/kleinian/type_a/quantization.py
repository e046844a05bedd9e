"""The family of generalized Weyl algebras quantizing the type-A surface.

Elements are stored in the Z-graded basis: component m > 0 holds x^m f(z,t),
component 0 holds f(z,t), component m < 0 holds g(z,t) y^(-m).  The defining
relations are

    xz = (z-t)x,   yz = (z+t)y,   xy = P(z-t),   yx = P(z),

and multiplication is by closed-form component rules derived from them, so
normal forms are unique by construction.  A t-mode tag selects the shift
step: "t" works over C[t] (z -> z - m t), "1" in the t=1 specialization
(z -> z - m), "0" in the commutative t=0 specialization (no shift).
"""

from __future__ import annotations

from ..errors import NotDivisibleByT, ParamMismatch
from ..poly import MPoly, VAR_INDEX
from .deformation import ElemADef, NEG_INF

_ZI, _TI = VAR_INDEX["z"], VAR_INDEX["t"]

MODE_T = "t"
MODE_T1 = "1"
MODE_T0 = "0"


class GwaElem:
    """An element of the quantized family in graded normal form."""

    __slots__ = ("param", "tmode", "components", "_hash")

    def __init__(self, param, components, tmode=MODE_T):
        comps = {}
        for m, p in components.items():
            if p:
                if not p.uses_only(("z", "t")):
                    raise ValueError("component polynomials may only involve z, t")
                if tmode != MODE_T and p.degree("t"):
                    raise ValueError(f"t-free components required in mode {tmode!r}")
                comps[m] = p
        self.param = param
        self.tmode = tmode
        self.components = comps
        self._hash = None

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero(param, tmode=MODE_T):
        return GwaElem(param, {}, tmode)

    @staticmethod
    def const(param, value, tmode=MODE_T):
        return GwaElem(param, {0: MPoly.const(param.field, value)}, tmode)

    @staticmethod
    def gen(param, name, tmode=MODE_T):
        """One of the generators x, y, z (or the central t in mode "t")."""
        field = param.field
        if name == "x":
            return GwaElem(param, {1: MPoly.const(field, 1)}, tmode)
        if name == "y":
            return GwaElem(param, {-1: MPoly.const(field, 1)}, tmode)
        if name == "z":
            return GwaElem(param, {0: MPoly.var(field, "z")}, tmode)
        if name == "t":
            if tmode != MODE_T:
                raise ValueError("t is only a generator of the t-family")
            return GwaElem(param, {0: MPoly.var(field, "t")}, tmode)
        raise ValueError(f"unknown generator {name!r}")

    @staticmethod
    def from_adef(elem, tmode=MODE_T0):
        """Encode a deformation element componentwise (t-free)."""
        comps = {}
        field = elem.param.field
        for exps, c in elem.body.terms.items():
            a, b, czz = exps[0], exps[1], exps[2]
            m = a if a else -b
            mono = MPoly(field, {(0, 0, czz, 0, 0): c})
            comps[m] = comps.get(m, MPoly.zero(field)) + mono
        return GwaElem(elem.param, comps, tmode)

    # -- shift helper ----------------------------------------------------------
    def _shift(self, p, m):
        """sigma^m in the current t-mode."""
        if m == 0 or self.tmode == MODE_T0:
            return p
        if self.tmode == MODE_T:
            return p.shift_sigma(m)
        z = MPoly.var(p.field, "z")
        return p.substitute({"z": z - m})

    def _sigma_products(self, c, direction):
        """prod_{j=1..c} sigma^(j)(P) for direction +1, prod_{j=0..c-1} sigma^(-j)(P) for -1."""
        P = self.param.P
        out = MPoly.const(P.field, 1)
        for j in range(c):
            out = out * self._shift(P, (j + 1) if direction > 0 else -j)
        return out

    # -- additive structure ------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, GwaElem):
            other = GwaElem.const(self.param, other, self.tmode)
        if other.param != self.param or other.tmode != self.tmode:
            raise ParamMismatch("operands live over different parameters or t-modes")
        return other

    def __add__(self, other):
        other = self._check(other)
        comps = dict(self.components)
        for m, p in other.components.items():
            s = comps.get(m)
            s = p if s is None else s + p
            if s:
                comps[m] = s
            else:
                comps.pop(m, None)
        return GwaElem(self.param, comps, self.tmode)

    __radd__ = __add__

    def __neg__(self):
        return GwaElem(self.param, {m: -p for m, p in self.components.items()}, self.tmode)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    # -- multiplication -----------------------------------------------------------
    def _mul_component(self, m1, p1, m2, p2):
        """Normal form of (component m1, p1) * (component m2, p2)."""
        if m1 >= 0 and m2 >= 0:
            return m1 + m2, self._shift(p1, -m2) * p2
        if m1 < 0 and m2 < 0:
            return m1 + m2, p1 * self._shift(p2, m1)
        if m1 >= 0:  # x-side times y-side
            b = -m2
            c = min(m1, b)
            h = p1 * p2
            return m1 + m2, self._shift(h, c) * self._sigma_products(c, +1)
        # y-side times x-side
        a = -m1
        c = min(a, m2)
        lam = self._sigma_products(c, -1)
        if a >= m2:
            return m1 + m2, p1 * self._shift(lam * p2, m1 + m2)
        return m1 + m2, self._shift(p1 * lam, -(m1 + m2)) * p2

    def __mul__(self, other):
        if not isinstance(other, GwaElem):
            try:
                scalar_poly = MPoly.const(self.param.field, other)
            except (TypeError, ValueError):
                return NotImplemented
            return GwaElem(self.param, {m: p * scalar_poly for m, p in self.components.items()}, self.tmode)
        other = self._check(other)
        comps = {}
        for m1, p1 in self.components.items():
            for m2, p2 in other.components.items():
                m, p = self._mul_component(m1, p1, m2, p2)
                if p:
                    s = comps.get(m)
                    s = p if s is None else s + p
                    if s:
                        comps[m] = s
                    else:
                        comps.pop(m, None)
        return GwaElem(self.param, comps, self.tmode)

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __pow__(self, e):
        result = GwaElem.const(self.param, 1, self.tmode)
        for _ in range(e):
            result = result * self
        return result

    # -- structure maps --------------------------------------------------------------
    def specialize_t(self, value):
        """Substitute t -> value (0 or 1) and retag the t-mode."""
        if value not in (0, 1):
            raise ValueError("t can only be specialized to 0 or 1")
        if self.tmode != MODE_T:
            raise ValueError("element is already specialized")
        field = self.param.field
        one = MPoly.const(field, value)
        comps = {}
        for m, p in self.components.items():
            q = p.substitute({"t": one})
            if q:
                comps[m] = q
        return GwaElem(self.param, comps, MODE_T1 if value == 1 else MODE_T0)

    def to_adef(self):
        """Faithful decoding of a t=0 element into the deformation."""
        if self.tmode != MODE_T0:
            raise ValueError("only t=0 elements decode to the deformation")
        field = self.param.field
        body = MPoly.zero(field)
        for m, p in self.components.items():
            if m >= 0:
                mono = MPoly.var(field, "x", m) if m else MPoly.const(field, 1)
            else:
                mono = MPoly.var(field, "y", -m)
            body = body + mono * p
        return ElemADef(self.param, body, reduced=True)

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, GwaElem):
            return NotImplemented
        return (
            self.param == other.param
            and self.tmode == other.tmode
            and self.components == other.components
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.param, self.tmode, frozenset(self.components.items())))
        return self._hash

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for m in sorted(self.components, reverse=True):
            p = self.components[m]
            if m > 0:
                head = "x" if m == 1 else f"x^{m}"
                parts.append(f"{head}*({p})")
            elif m < 0:
                tail = "y" if m == -1 else f"y^{-m}"
                parts.append(f"({p})*{tail}")
            else:
                parts.append(f"({p})")
        return " + ".join(parts)

    __repr__ = __str__


def gwa_mul(a, b):
    return a * b


def gwa_commutator(a, b):
    return a * b - b * a


def specialize_t(a, value):
    return a.specialize_t(value)


def semiclassical_bracket(a, b):
    """(1/t)[a, b] followed by t -> 0, decoded into the deformation.

    Inputs must be t-family elements with t-free components (representatives
    of t=0 classes); every commutator component is divisible by t, and a
    failure of that divisibility is a kernel bug.
    """
    if a.param != b.param:
        raise ParamMismatch("bracket of elements over different parameters")
    for e in (a, b):
        if e.tmode != MODE_T:
            raise ValueError("semiclassical bracket expects t-family representatives")
        for p in e.components.values():
            if p.degree("t"):
                raise ValueError("representatives must have t-free components")
    comm = gwa_commutator(a, b)
    field = a.param.field
    comps = {}
    for m, p in comm.components.items():
        try:
            q = p.divide_exact_t()
        except ValueError as exc:
            raise NotDivisibleByT(f"component {m} of the commutator is not divisible by t") from exc
        q = q.substitute({"t": MPoly.zero(field)})
        if q:
            comps[m] = q
    return GwaElem(a.param, comps, MODE_T0).to_adef()


def fdeg_gwa(a):
    """Filtration degree: deg x = deg y = n, deg z = 2, deg t = 0; -inf on zero."""
    n = a.param.n
    best = NEG_INF
    for m, p in a.components.items():
        base = n * abs(m)
        for exps in p.terms:
            d = base + 2 * exps[_ZI]
            if d > best:
                best = d
    return best


def lift_adef(elem):
    """Lift a deformation element to a t-free t-family representative."""
    enc = GwaElem.from_adef(elem, MODE_T0)
    return GwaElem(elem.param, enc.components, MODE_T)
