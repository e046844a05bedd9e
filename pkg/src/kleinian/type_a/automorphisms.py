"""Type-A automorphism/isomorphism maps: generators, exp(ad), verification.

A map is stored as the triple of images of (x, y, z) in the target algebra,
in one of three modes: the t-family ("t"), its t=1 specialization ("1",
the quantization), or its t=0 specialization ("0", the Poisson deformation).
Composition f∘g applies f to g's images; equality of maps is equality of
normalized images, sound because x, y, z generate.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidGenerator, NonNilpotent, NotDivisibleByT, ParamMismatch
from ..poly import MPoly, VAR_INDEX
from ..scalars import CycScalar
from .deformation import ElemADef, fdeg_a, poisson_bracket_a
from .quantization import MODE_T, MODE_T0, MODE_T1, GwaElem, fdeg_gwa

MODES = (MODE_T, MODE_T1, MODE_T0)


# -- generator descriptors ----------------------------------------------------

@dataclass(frozen=True)
class Theta:
    nu: CycScalar


@dataclass(frozen=True)
class PhiPoly:
    g: MPoly  # polynomial in y


@dataclass(frozen=True)
class PsiPoly:
    g: MPoly  # polynomial in x


@dataclass(frozen=True)
class PhiLM:
    lam: CycScalar
    m: int


@dataclass(frozen=True)
class PsiLM:
    lam: CycScalar
    m: int


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class V:
    pass


@dataclass(frozen=True)
class DeltaTri:
    g: MPoly  # polynomial in y


@dataclass(frozen=True)
class NablaTri:
    g: MPoly  # polynomial in x


@dataclass(frozen=True)
class Rescale:
    nu: CycScalar


@dataclass(frozen=True)
class Symmetry:
    mu: CycScalar
    d: int


WORD_LETTERS = (Theta, PhiPoly, PsiPoly, Omega)


class AlgMapA:
    """A candidate (iso)morphism between type-A algebras, as images of x,y,z."""

    __slots__ = ("source", "target", "mode", "images", "verified")

    def __init__(self, source, target, mode, images):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.source = source
        self.target = target
        self.mode = mode
        self.images = tuple(images)
        self.verified = False

    def __eq__(self, other):
        if not isinstance(other, AlgMapA):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.mode == other.mode
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.source, self.target, self.mode, self.images))

    def __str__(self):
        ims = ", ".join(str(e) for e in self.images)
        return f"({ims})"

    __repr__ = __str__


def _gen_elems(param, mode):
    if mode == MODE_T0:
        return (ElemADef.gen(param, "x"), ElemADef.gen(param, "y"), ElemADef.gen(param, "z"))
    return (
        GwaElem.gen(param, "x", mode),
        GwaElem.gen(param, "y", mode),
        GwaElem.gen(param, "z", mode),
    )


def _const(param, mode, value):
    if mode == MODE_T0:
        return ElemADef.const(param, value)
    return GwaElem.const(param, value, mode)


def identity_map(param, mode):
    return AlgMapA(param, param, mode, _gen_elems(param, mode))


def eval_univariate(P, Z, one):
    """P(Z) for a univariate P in z, by Horner's rule in the target algebra."""
    coeffs = P.scalar_coeffs_in("z")
    acc = one * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * Z + one * c
    return acc


def _antiderivative(g, name):
    field = g.field
    i = VAR_INDEX[name]
    terms = []
    for exps, c in g.terms.items():
        e = list(exps)
        e[i] += 1
        terms.append((tuple(e), c / field.scalar(e[i])))
    return MPoly.from_terms(field, terms)


# -- exp(ad) -------------------------------------------------------------------

def exp_ad_a(g, param, mode, side=None):
    """Exponential of the adjoint action of the antiderivative of g.

    `g` is a polynomial in y alone (side "y": fixes y, the triangular family)
    or in x alone (side "x": fixes x).  Quantized modes use (1/t)ad with exact
    t-division; t=0 uses the Poisson adjoint.  The series truncates because
    the derivation is locally nilpotent; failure to truncate is a kernel bug.
    """
    if side is None:
        side = "y" if g.uses_only(("y",)) else "x"
    if not g.uses_only((side,)):
        raise InvalidGenerator(f"generator polynomial must involve only {side}")
    field = param.field
    ghat = _antiderivative(g, side)
    limit = param.n + 4

    if mode == MODE_T0:
        ghat_elem = ElemADef(param, ghat, reduced=True)

        def derive(e):
            return poisson_bracket_a(ghat_elem, e)
    else:
        comps = {}
        for exps, c in ghat.terms.items():
            e = exps[VAR_INDEX[side]]
            m = e if side == "x" else -e
            comps[m] = MPoly.const(field, c)
        ghat_elem = GwaElem(param, comps, MODE_T)

        def derive(e):
            comm = ghat_elem * e - e * ghat_elem
            out = {}
            for m, p in comm.components.items():
                try:
                    out[m] = p.divide_exact_t()
                except ValueError as exc:
                    raise NotDivisibleByT("adjoint commutator not divisible by t") from exc
            return GwaElem(param, out, MODE_T)

    images = []
    work_mode = MODE_T0 if mode == MODE_T0 else MODE_T
    for gen in _gen_elems(param, work_mode):
        acc = gen
        term = gen
        i = 0
        while True:
            i += 1
            if i > limit:
                raise NonNilpotent("exp(ad) series failed to truncate")
            term = derive(term) * (field.one / field.scalar(i))
            if not term:
                break
            acc = acc + term
        images.append(acc)

    if mode == MODE_T1:
        images = [e.specialize_t(1) for e in images]
    return AlgMapA(param, param, mode, images)


# -- generator constructors -----------------------------------------------------

def gen_to_map(gen, param, mode):
    """Explicit images for a generator descriptor; exp(ad) for Phi/Psi kinds."""
    field = param.field
    X, Y, Z = _gen_elems(param, mode)

    if isinstance(gen, Theta):
        if not gen.nu:
            raise InvalidGenerator("Theta requires a nonzero scalar")
        inv = field.one / gen.nu
        return AlgMapA(param, param, mode, (X * gen.nu, Y * inv, Z))

    if isinstance(gen, Omega):
        if not param.reflective():
            raise InvalidGenerator("Omega requires a reflective parameter polynomial")
        sign = field.scalar((-1) ** param.n)
        if mode == MODE_T0:
            zimg = -Z
        elif mode == MODE_T1:
            zimg = _const(param, mode, 1) - Z
        else:
            zimg = GwaElem.gen(param, "t", MODE_T) - Z
        return AlgMapA(param, param, mode, (Y, X * sign, zimg))

    if isinstance(gen, PhiLM):
        g = MPoly.var(field, "y", gen.m - 1, coeff=gen.lam * gen.m) if gen.m >= 1 else MPoly.zero(field)
        return exp_ad_a(g, param, mode, side="y")

    if isinstance(gen, PsiLM):
        g = MPoly.var(field, "x", gen.m - 1, coeff=gen.lam * gen.m) if gen.m >= 1 else MPoly.zero(field)
        return exp_ad_a(g, param, mode, side="x")

    if isinstance(gen, PhiPoly):
        return exp_ad_a(gen.g, param, mode, side="y")

    if isinstance(gen, PsiPoly):
        return exp_ad_a(gen.g, param, mode, side="x")

    # affine generators live on the deformation side only
    if mode != MODE_T0:
        raise InvalidGenerator(f"{type(gen).__name__} is only defined at t=0")

    if isinstance(gen, V):
        return AlgMapA(param, param, mode, (Y, X, Z))

    if isinstance(gen, DeltaTri):
        if not gen.g.uses_only(("y",)):
            raise InvalidGenerator("triangular generator polynomial must be in y")
        y, z = MPoly.var(field, "y"), MPoly.var(field, "z")
        yg = y * gen.g
        diff = param.P.substitute({"z": z + yg}) - param.P
        ximg = MPoly.var(field, "x") + diff.divide_exact_var("y")
        return AlgMapA(param, param, mode, (ElemADef(param, ximg), Y, ElemADef(param, z + yg)))

    if isinstance(gen, NablaTri):
        if not gen.g.uses_only(("x",)):
            raise InvalidGenerator("opposite triangular generator polynomial must be in x")
        x, z = MPoly.var(field, "x"), MPoly.var(field, "z")
        xg = x * gen.g
        diff = param.P.substitute({"z": z - xg}) - param.P
        yimg = MPoly.var(field, "y") + diff.divide_exact_var("x")
        return AlgMapA(param, param, mode, (X, ElemADef(param, yimg), ElemADef(param, z - xg)))

    if isinstance(gen, Rescale):
        if not gen.nu:
            raise InvalidGenerator("Rescale requires a nonzero scalar")
        if not param.is_z_power():
            raise InvalidGenerator("Rescale is only valid when P is the pure power z^n")
        return AlgMapA(param, param, mode, (X * gen.nu ** param.n, Y, Z * gen.nu))

    if isinstance(gen, Symmetry):
        if not param.symmetry_valid(gen.mu, gen.d):
            raise InvalidGenerator("Symmetry requires P = z^i * Q(z^d) and mu^d = 1")
        i0, _ = param.shape()
        return AlgMapA(param, param, mode, (X * gen.mu ** i0, Y, Z * gen.mu))

    raise InvalidGenerator(f"unknown generator {gen!r}")


# -- applying and composing -------------------------------------------------------

def _subst_component(p, Z, param, mode, zcache):
    """Image of a component polynomial f(z,t): substitute z -> Z, keep t central."""
    field = param.field

    def zpow(e):
        try:
            return zcache[e]
        except KeyError:
            q = zpow(e - 1) * Z
            zcache[e] = q
            return q

    out = _const(param, mode, 0)
    for exps, c in p.terms.items():
        zc, tc = exps[2], exps[3]
        scalar_poly = MPoly(field, {(0, 0, 0, tc, 0): c})
        piece = GwaElem(param, {0: scalar_poly}, mode)
        if zc:
            piece = piece * zpow(zc)
        out = out + piece
    return out


def apply_map(amap, elem):
    """Image of an element of the source algebra, in normal form."""
    X, Y, Z = amap.images
    if amap.mode == MODE_T0:
        if not isinstance(elem, ElemADef) or elem.param != amap.source:
            raise ParamMismatch("element does not live in the map's source algebra")
        xc, yc, zc = {0: ElemADef.const(amap.target, 1)}, {0: ElemADef.const(amap.target, 1)}, {0: ElemADef.const(amap.target, 1)}

        def pw(cache, base, e):
            try:
                return cache[e]
            except KeyError:
                q = pw(cache, base, e - 1) * base
                cache[e] = q
                return q

        out = ElemADef.zero(amap.target)
        for exps, c in elem.body.terms.items():
            piece = ElemADef.const(amap.target, c)
            if exps[0]:
                piece = piece * pw(xc, X, exps[0])
            if exps[1]:
                piece = piece * pw(yc, Y, exps[1])
            if exps[2]:
                piece = piece * pw(zc, Z, exps[2])
            out = out + piece
        return out

    if not isinstance(elem, GwaElem) or elem.param != amap.source or elem.tmode != amap.mode:
        raise ParamMismatch("element does not live in the map's source algebra")
    zcache = {0: _const(amap.target, amap.mode, 1)}
    xpow = {0: _const(amap.target, amap.mode, 1)}
    ypow = {0: _const(amap.target, amap.mode, 1)}

    def pw(cache, base, e):
        try:
            return cache[e]
        except KeyError:
            q = pw(cache, base, e - 1) * base
            cache[e] = q
            return q

    out = _const(amap.target, amap.mode, 0)
    for m, p in elem.components.items():
        body = _subst_component(p, Z, amap.target, amap.mode, zcache)
        if m > 0:
            piece = pw(xpow, X, m) * body
        elif m < 0:
            piece = body * pw(ypow, Y, -m)
        else:
            piece = body
        out = out + piece
    return out


def compose_maps(f, g):
    """The composite f∘g (g first); requires target(g) = source(f)."""
    if f.mode != g.mode:
        raise ParamMismatch("composition of maps in different modes")
    if f.source != g.target:
        raise ParamMismatch("composition requires target(g) = source(f)")
    images = tuple(apply_map(f, im) for im in g.images)
    return AlgMapA(g.source, f.target, f.mode, images)


# -- verification ---------------------------------------------------------------

def verify_hom_a(amap):
    """Check the defining relations under the images; (ok, residuals)."""
    X, Y, Z = amap.images
    src = amap.source
    residuals = {}
    if amap.mode == MODE_T0:
        residuals["surface"] = X * Y - eval_univariate(src.P, Z, ElemADef.const(amap.target, 1))
    else:
        one = _const(amap.target, amap.mode, 1)
        if amap.mode == MODE_T:
            tval = GwaElem.gen(amap.target, "t", MODE_T)
        else:
            tval = one
        residuals["xz"] = X * Z - (Z - tval) * X
        residuals["yz"] = Y * Z - (Z + tval) * Y
        residuals["xy"] = X * Y - eval_univariate(src.P, Z - tval, one)
        residuals["yx"] = Y * X - eval_univariate(src.P, Z, one)
    ok = all(r.is_zero() for r in residuals.values())
    amap.verified = ok
    return ok, residuals


def is_poisson_map_a(amap):
    """Bracket-compatibility on the three generator pairs (mode t=0 only)."""
    if amap.mode != MODE_T0:
        raise ValueError("the Poisson check applies to t=0 maps")
    X, Y, Z = amap.images
    one = ElemADef.const(amap.target, 1)
    Pprime = amap.source.P.derivative("z")
    return (
        poisson_bracket_a(X, Y) == -eval_univariate(Pprime, Z, one)
        and poisson_bracket_a(Z, X) == X
        and poisson_bracket_a(Z, Y) == -Y
    )


def mdeg_aut(amap):
    """Componentwise filtration degrees of the images of (x, y, z)."""
    fd = fdeg_a if amap.mode == MODE_T0 else fdeg_gwa
    return tuple(fd(e) for e in amap.images)
