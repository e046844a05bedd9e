"""Isomorphism deciders between type-A deformations and quantizations.

For normalized parameters (monic, no subleading term) the only cross-
parameter arrows are: the swap sending P(z) to (-1)^n P(-z) — realized by
(y, (-1)^n x, 1-z) on the quantized side and (y, (-1)^n x, -z) on the
Poisson side — and, on the purely affine side, the rescalings
(a^n x, y, a z) : P(z) -> a^-n P(a z).  The affine decider is
verification-oriented: the caller supplies the candidate scale, since its
existence may require a field extension.
"""

from __future__ import annotations

from ..errors import ParamMismatch, ZeroScalar
from ..poly import DefParamA, MPoly
from .automorphisms import AlgMapA, MODE_T0, MODE_T1, identity_map
from .deformation import ElemADef
from .quantization import GwaElem


def reflected_param(param):
    """The parameter (-1)^n P(-z), again normalized."""
    field = param.field
    z = MPoly.var(field, "z")
    q = param.P.substitute({"z": -z}).scale((-1) ** param.n)
    return DefParamA(field, q)


def _swap_map(p1, p2, mode):
    sign = p1.field.scalar((-1) ** p1.n)
    if mode == MODE_T0:
        X, Y, Z = (ElemADef.gen(p2, v) for v in ("x", "y", "z"))
        return AlgMapA(p1, p2, mode, (Y, X * sign, -Z))
    X, Y, Z = (GwaElem.gen(p2, v, mode) for v in ("x", "y", "z"))
    one = GwaElem.const(p2, 1, mode)
    return AlgMapA(p1, p2, mode, (Y, X * sign, one - Z))


def decide_iso_quant_a(p1, p2):
    """Witness isomorphism between quantizations, or None."""
    if p1.n != p2.n:
        raise ParamMismatch("deciders compare parameters of equal n")
    if p1 == p2:
        return identity_map(p1, MODE_T1)
    if p2 == reflected_param(p1):
        return _swap_map(p1, p2, MODE_T1)
    return None


def rescale_map(p1, alpha):
    """(a^n x, y, a z) out of p1; target a^-n P1(a z)."""
    if not alpha:
        raise ZeroScalar("rescaling requires a nonzero scalar")
    field = p1.field
    z = MPoly.var(field, "z")
    target_poly = p1.P.substitute({"z": z * alpha}).scale(field.one / alpha ** p1.n)
    p2 = DefParamA(field, target_poly)
    X, Y, Z = (ElemADef.gen(p2, v) for v in ("x", "y", "z"))
    return AlgMapA(p1, p2, MODE_T0, (X * alpha ** p1.n, Y, Z * alpha))


def decide_iso_def_a(p1, p2, kind, alpha=None):
    """Witness isomorphism between deformations, or None.

    kind "poisson": identity or the Poisson swap.  kind "affine": verifies
    the caller-supplied candidate scale alpha.
    """
    if p1.n != p2.n:
        raise ParamMismatch("deciders compare parameters of equal n")
    if kind == "poisson":
        if p1 == p2:
            return identity_map(p1, MODE_T0)
        if p2 == reflected_param(p1):
            return _swap_map(p1, p2, MODE_T0)
        return None
    if kind == "affine":
        if alpha is None or not alpha:
            raise ZeroScalar("affine decider needs a nonzero candidate scale")
        witness = rescale_map(p1, alpha)
        return witness if witness.target == p2 else None
    raise ValueError(f"unknown kind {kind!r}")
