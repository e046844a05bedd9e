"""Words in the abstract type-A generators and their amalgam normal form.

A word is a sequence of letters Theta / PhiPoly / PsiPoly / Omega in
composition order (letters[0] is applied last).  Normalization pushes every
Theta to the right, merges adjacent triangular letters, collapses Omega^2,
and (reflective case) eliminates Psi letters, producing the canonical
alternating decomposition whose uniqueness is the content of the amalgamated
free product structure.  The closed-form multidegree of a canonical word is
available for n > 2 and must match the multidegree of the evaluated map.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidGenerator, NotApplicable, ShapeMismatch
from ..poly import MPoly, VAR_INDEX
from .automorphisms import (
    Omega,
    PhiPoly,
    PsiPoly,
    Theta,
    compose_maps,
    gen_to_map,
    identity_map,
)

_XI, _YI = VAR_INDEX["x"], VAR_INDEX["y"]


def _swap_xy(p):
    """Exchange the roles of x and y in a polynomial (same coefficients)."""
    terms = {}
    for exps, c in p.terms.items():
        e = list(exps)
        e[_XI], e[_YI] = e[_YI], e[_XI]
        terms[tuple(e)] = c
    return MPoly(p.field, terms)


def _rescale_arg(p, name, scale, outer):
    """outer * p(scale * v) for a univariate p in `name`."""
    i = VAR_INDEX[name]
    terms = {}
    for exps, c in p.terms.items():
        terms[exps] = c * (scale ** exps[i]) * outer
    return MPoly(p.field, terms)


class AutWordA:
    """A word in the abstract generators, over a fixed parameter and mode."""

    __slots__ = ("param", "mode", "letters")

    def __init__(self, param, mode, letters):
        for let in letters:
            self._validate(let, param)
        self.param = param
        self.mode = mode
        self.letters = tuple(letters)

    @staticmethod
    def _validate(let, param):
        if isinstance(let, Theta):
            if not let.nu:
                raise InvalidGenerator("Theta letter requires a nonzero scalar")
        elif isinstance(let, PhiPoly):
            if not let.g.uses_only(("y",)):
                raise InvalidGenerator("Phi letter polynomial must be in y")
        elif isinstance(let, PsiPoly):
            if not let.g.uses_only(("x",)):
                raise InvalidGenerator("Psi letter polynomial must be in x")
        elif isinstance(let, Omega):
            if not param.reflective():
                raise InvalidGenerator("Omega letter requires a reflective parameter")
        else:
            raise InvalidGenerator(f"{type(let).__name__} is not a word letter")

    def __eq__(self, other):
        if not isinstance(other, AutWordA):
            return NotImplemented
        return self.param == other.param and self.mode == other.mode and self.letters == other.letters

    def __hash__(self):
        return hash((self.param, self.mode, self.letters))

    def __str__(self):
        if not self.letters:
            return "id"
        bits = []
        for let in self.letters:
            if isinstance(let, Theta):
                bits.append(f"Theta({let.nu})")
            elif isinstance(let, PhiPoly):
                bits.append(f"Phi[{let.g}]")
            elif isinstance(let, PsiPoly):
                bits.append(f"Psi[{let.g}]")
            else:
                bits.append("Omega")
        return " . ".join(bits)

    __repr__ = __str__

    def evaluate(self):
        """The composed map of the word's letters."""
        acc = identity_map(self.param, self.mode)
        for let in self.letters:
            acc = compose_maps(acc, gen_to_map(let, self.param, self.mode))
        return acc


class _Normalizer:
    """Stack normalizer maintaining (alternating chain) . Theta(nu)."""

    def __init__(self, param):
        self.param = param
        self.field = param.field
        self.reflective = param.reflective()
        self.sign = self.field.scalar((-1) ** param.n)
        self.chain = []
        self.nu = self.field.one

    # chain-level pushes (right multiplication below the pending Theta)
    def _chain_push_phi(self, g):
        if not g:
            return
        if self.chain and isinstance(self.chain[-1], PhiPoly):
            merged = self.chain[-1].g + g
            self.chain.pop()
            if merged:
                self.chain.append(PhiPoly(merged))
        else:
            self.chain.append(PhiPoly(g))

    def _chain_push_psi(self, g):
        if not g:
            return
        if self.chain and isinstance(self.chain[-1], PsiPoly):
            merged = self.chain[-1].g + g
            self.chain.pop()
            if merged:
                self.chain.append(PsiPoly(merged))
        else:
            self.chain.append(PsiPoly(g))

    def _chain_push_omega(self):
        if self.chain and isinstance(self.chain[-1], Omega):
            self.chain.pop()
            self.nu = self.nu * self.sign
        else:
            self.chain.append(Omega())

    # letter-level pushes (commute across the pending Theta first)
    def push(self, let):
        if isinstance(let, Theta):
            self.nu = self.nu * let.nu
        elif isinstance(let, PhiPoly):
            inv = self.field.one / self.nu
            self._chain_push_phi(_rescale_arg(let.g, "y", inv, inv))
        elif isinstance(let, PsiPoly):
            if self.reflective:
                self.push(Theta(self.sign))
                self.push(Omega())
                self.push(PhiPoly(_swap_xy(let.g)))
                self.push(Omega())
            else:
                self._chain_push_psi(_rescale_arg(let.g, "x", self.nu, self.nu))
        elif isinstance(let, Omega):
            self.nu = self.field.one / self.nu
            self._chain_push_omega()
        else:  # pragma: no cover - validated upstream
            raise InvalidGenerator(f"cannot normalize letter {let!r}")

    def result(self, mode):
        letters = list(self.chain)
        if self.nu != self.field.one:
            letters.append(Theta(self.nu))
        return AutWordA(self.param, mode, letters)


def word_normal_form(word):
    """Canonical alternating form; evaluation as a map is unchanged."""
    norm = _Normalizer(word.param)
    for let in word.letters:
        norm.push(let)
    return norm.result(word.mode)


def _letter_degree(let):
    return let.g.total_degree()


def predicted_mdeg(word):
    """Closed-form multidegree of a canonical word (n > 2).

    Covers the identity, pure alternating chains with nonzero triangular
    letters (with or without a trailing Theta), and chains with a leading
    and/or trailing Omega; anything else raises ShapeMismatch.
    """
    n = word.param.n
    if n <= 2:
        raise NotApplicable("closed multidegree formulas require n > 2")
    letters = [let for let in word.letters if not isinstance(let, Theta)]
    if not letters:
        return (n, n, 2)

    swap_result = False
    if isinstance(letters[-1], Omega):
        letters.pop()
        swap_result = True
    if letters and isinstance(letters[0], Omega):
        letters.pop(0)
    if not letters:
        out = (n, n, 2)
        return (out[1], out[0], out[2]) if swap_result else out

    kinds = [type(let) for let in letters]
    if any(k is Omega for k in kinds):
        # reflective chain Phi (Omega Phi)*
        if kinds[0] is not PhiPoly or kinds[-1] is not PhiPoly:
            raise ShapeMismatch("chain must start and end with a Phi letter")
        for a, b in zip(kinds, kinds[1:]):
            if (a is PhiPoly) == (b is PhiPoly):
                raise ShapeMismatch("chain must alternate Phi and Omega letters")
        ks = [_letter_degree(let) for let in letters if isinstance(let, PhiPoly)]
        if any(not let.g for let in letters if isinstance(let, PhiPoly)):
            raise ShapeMismatch("chain letters must be nonzero")
        prod_all = 1
        for k in ks:
            prod_all *= n * k + n - 1
        prod_head = prod_all // (n * ks[-1] + n - 1)
        out = (n * prod_all, n * prod_head, n * (ks[-1] + 1) * prod_head)
    else:
        # alternating Phi/Psi chain, Phi at both ends
        if kinds[0] is not PhiPoly or kinds[-1] is not PhiPoly:
            raise ShapeMismatch("chain must start and end with a Phi letter")
        for a, b in zip(kinds, kinds[1:]):
            if a is b:
                raise ShapeMismatch("chain must alternate Phi and Psi letters")
        if any(not let.g for let in letters):
            raise ShapeMismatch("chain letters must be nonzero")
        ks = [_letter_degree(let) for let in letters if isinstance(let, PhiPoly)]
        ls = [_letter_degree(let) for let in letters if isinstance(let, PsiPoly)]
        prod = 1
        for k in ks[:-1]:
            prod *= n * k + n - 1
        for l in ls:
            prod *= n * l + n - 1
        out = (n * (n * ks[-1] + n - 1) * prod, n * prod, n * (ks[-1] + 1) * prod)
    return (out[1], out[0], out[2]) if swap_result else out


@dataclass(frozen=True)
class GroupDescriptorA:
    """Structure of the automorphism group as an amalgamated free product."""

    n: int
    reflective: bool
    parity: str  # "even" / "odd" / "-" (non-reflective)
    left_factor: str
    right_factor: str
    amalgam: str

    @property
    def text(self):
        return f"{self.left_factor} *_({self.amalgam}) {self.right_factor}"


def describe_aut_group_a(param):
    """Symbolic descriptor of the automorphism group for n > 2."""
    n = param.n
    if n <= 2:
        raise NotApplicable(
            "n=2 has its own structure theorem (linear vs triangular amalgam); not described here"
        )
    left = "C[y] x| C*"
    if param.reflective():
        if n % 2 == 0:
            return GroupDescriptorA(n, True, "even", left, "C* x| Z/2", "C*")
        return GroupDescriptorA(
            n, True, "odd", left, "H = <C*, Omega | Omega^2 = -1, nu.Omega = Omega.nu^-1>", "C*"
        )
    return GroupDescriptorA(n, False, "-", left, "C[x] x| C*", "C*")
