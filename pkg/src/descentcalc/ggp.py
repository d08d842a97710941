"""Twisted distinguished characters and the tempered branching multiplicity."""
from __future__ import annotations

from dataclasses import dataclass

from .epsilon import Context, eps_of_summand, eps_pair, eps_single
from .localfield import SquareClass, hilbert_symbol, minus_one, omega_quadratic
from .lparam import (
    CharacterVec,
    EnhancedParameter,
    Key,
    Parameter,
    component_group,
    summand_det,
    summand_dim,
    total_det,
    total_dim,
    twist,
)


def eta(ctx: Context, phi: Parameter, a: SquareClass) -> CharacterVec:
    """The character eta_a of S_phi implementing a change of Whittaker datum."""
    alpha = ctx.alphabet
    S = component_group(alpha, phi)
    F = ctx.ext.base
    vals = []
    for k in S.basis:
        if not ctx.ext.split:
            vals.append(omega_quadratic(ctx.ext, a) ** (summand_dim(alpha, k) % 2))
        elif phi.group.family == "Mp":
            vals.append(eps_single(ctx, k, a))
        else:
            vals.append(hilbert_symbol(F, summand_det(alpha, k), a))
    return CharacterVec(S.basis, tuple(vals))


def _at_minus1(ctx: Context, c: SquareClass, exp2: int) -> int:
    """c(-1)^(exp2 / 2); a half-integer exponent is allowed only when c(-1) = 1."""
    v = hilbert_symbol(ctx.ext.base, c, minus_one(ctx.ext.base))
    if v == 1:
        return 1
    if exp2 % 2:
        raise ValueError("half-integral exponent on a nontrivial sign: malformed case split")
    return v ** (exp2 // 2)


def _coordinate(ctx: Context, k: Key, other: Parameter, add_line: bool, d_other: int,
                det_other: SquareClass | None) -> int:
    """One coordinate of chi against `other`, which is replaced by other + C when add_line."""
    alpha = ctx.alphabet
    e = eps_pair(ctx, k, other)
    if not ctx.ext.split:
        return e
    if add_line:
        e *= eps_of_summand(ctx, k)
        d_other += 1
    return (e * _at_minus1(ctx, summand_det(alpha, k), d_other)
            * _at_minus1(ctx, det_other, summand_dim(alpha, k)))


def chi(ctx: Context, phi: Parameter, psi: Parameter) -> CharacterVec:
    """Base distinguished character of phi against psi, on the basis of S_phi.

    With E = F and one side odd-dimensional orthogonal, a trivial line is added
    to that side; the added coordinate never enters S_phi, so restriction is
    just the omission of that coordinate.
    """
    alpha = ctx.alphabet
    S = component_group(alpha, phi)
    if not phi.summands or not psi.summands:
        return S.trivial()
    if phi.sign == psi.sign:
        raise ValueError("distinguished characters need parameters of opposite types")
    d = total_dim(alpha, psi.summands)
    det = total_det(alpha, psi.summands) if ctx.ext.split else None
    add_line = ctx.ext.split and d % 2 == 1
    return CharacterVec(S.basis, tuple(_coordinate(ctx, k, psi, add_line, d, det) for k in S.basis))


@dataclass(frozen=True)
class DistinguishedPair:
    mu: CharacterVec
    nu: CharacterVec
    z: SquareClass

    def to_json(self) -> dict:
        return {"z": self.z.tag, "mu": {"chi": self.mu.as_dict()}, "nu": {"chi": self.nu.as_dict()}}


def chi_twisted(ctx: Context, phi: Parameter, psi: Parameter, z: SquareClass) -> tuple[CharacterVec, CharacterVec]:
    alpha = ctx.alphabet
    Sphi, Spsi = component_group(alpha, phi), component_group(alpha, psi)
    fam = phi.group.family
    if ctx.ext.split and fam in ("Sp", "Mp"):
        phz, mapping = twist(alpha, phi, z)
        inv = {v: k for k, v in mapping.items()}
        c = chi(ctx, phz, psi)
        first = c.transport({k: inv[k] for k in c.basis}, Sphi.basis) * eta(ctx, phi, z)
        second = chi(ctx, psi, phz)
    elif ctx.ext.split:
        first = chi(ctx, phi, psi) * eta(ctx, phi, z)
        second = chi(ctx, psi, phi) * eta(ctx, psi, z)
    else:
        ell = total_dim(alpha, phi.summands) - total_dim(alpha, psi.summands)
        zz = minus_one(ctx.ext.base) ** ell * z
        first = chi(ctx, phi, psi) * eta(ctx, phi, z)
        second = chi(ctx, psi, phi) * eta(ctx, psi, zz)
    return Sphi.canonical(first), Spsi.canonical(second)


def distinguished_pair(ctx: Context, phi: Parameter, psi: Parameter, z: SquareClass) -> DistinguishedPair:
    mu, nu = chi_twisted(ctx, phi, psi, z)
    return DistinguishedPair(mu, nu, z)


def multiplicity_tempered(ctx: Context, ep1: EnhancedParameter, ep2: EnhancedParameter, z: SquareClass) -> int:
    """1 iff (mu1, mu2) is the distinguished pair for (phi1, phi2) along z."""
    mu, nu = chi_twisted(ctx, ep1.phi, ep2.phi, z)
    S1, S2 = component_group(ctx.alphabet, ep1.phi), component_group(ctx.alphabet, ep2.phi)
    return int(S1.same(mu, ep1.mu) and S2.same(nu, ep2.mu))
