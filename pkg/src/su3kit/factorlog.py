"""Factorization of SU(3) elements into commuting simple factors, and logs.

Every group element produced by the exponential of a traceless
anti-Hermitian 3x3 matrix splits as U = U1 U2 U3 with each factor of
the Euler form cos(beta) 1 + sin(beta) bhat.  The grade projections of
U determine the factors through a handful of rational identities, e.g.

    g0 + S_i           = c_j c_k U_i         (j, k the other indices)
    1 + H_k S_j^(-1)   = U_i / c_i
    1 + g6 H_i^(-1)    = U_i / c_i

Each right-hand side is a scalar multiple of a unitary, so normalizing
by the 1/3-weighted norm recovers U_i up to sign.  No route works for
every input (the scalar prefactors vanish on measure-zero sets), hence
the cascade in `factorize`.  Signs are not corrected per factor: the
closing factor U3 = U1^dag U2^dag U absorbs the net sign, and the
principal log rebalances the pair of pi-complements it causes.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import (
    AmbiguousDirection,
    FactorizationFailed,
    InputError,
    MissingDirection,
    NotSimpleFactor,
    NumericalError,
    ZeroMatrix,
)
from .expmap import GroupElement, exp_simple
from .grades import GradeDecomposition, split_HS
from .invdec import SimplePart
from .smallmat import ComplexMat, scalar_residual
from .tolerances import DEFAULT_TOL, Tolerances


def rms_norm(m: ComplexMat) -> float:
    """sqrt(tr(M M^dag) / 3); equals 1 for a 3x3 unitary."""
    return m.frobenius_norm() / math.sqrt(3.0)


def normalize(m: ComplexMat, tol: Tolerances = DEFAULT_TOL) -> ComplexMat:
    nrm = rms_norm(m)
    if nrm <= tol.norm_zero_tol:
        raise ZeroMatrix("cannot normalize a matrix with norm %.3e" % nrm)
    return m * (1.0 / nrm)


@dataclasses.dataclass(frozen=True)
class Factorization:
    factors: tuple[ComplexMat, ComplexMat, ComplexMat]
    parts: tuple[SimplePart, SimplePart, SimplePart]
    routes: tuple[str, str, str]


@dataclasses.dataclass(frozen=True)
class LogBranch:
    k: tuple[int, int, int]

    def __post_init__(self):
        if len(self.k) != 3 or not all(isinstance(x, int) for x in self.k):
            raise InputError("branch must be three integers")


def _as_mat(u) -> ComplexMat:
    return u.mat if isinstance(u, GroupElement) else u


def principal_log_factor(ui, tol: Tolerances = DEFAULT_TOL) -> SimplePart:
    """Principal log of a single Euler factor.

    The Hermitian half of the factor must be scalar; its trace gives
    the cosine of the angle, the norm of the skew half the sine (the
    skew direction has unit norm), and atan2 of the pair pins beta in
    [0, pi] with uniform relative accuracy even for tiny angles, where
    arccos of the cosine alone would lose half the digits.  At
    beta = pi the skew half vanishes while the direction still matters
    for any log, so that point is refused.
    """
    m = _as_mat(ui)
    if m.n != 3:
        raise InputError("expected a 3x3 factor, got %dx%d" % (m.n, m.n))
    adj = m.adjoint()
    ccos = (m + adj) * 0.5
    ssin = (m - adj) * 0.5
    if scalar_residual(ccos) > tol.fact_tol * max(1.0, m.frobenius_norm()):
        raise NotSimpleFactor(
            "Hermitian half is not scalar (residual %.3e)" % scalar_residual(ccos))
    c = (m.trace().real) / 3.0
    if abs(c) > 1.0 + 1e-8:
        raise NotSimpleFactor("cosine out of range by %.3e" % (abs(c) - 1.0))
    sn = rms_norm(ssin)
    beta = math.atan2(sn, c)
    if sn <= tol.sin_zero_tol:
        if beta <= math.pi / 2.0:
            part = SimplePart(mat=ComplexMat.zeros(3), lam=complex(-beta * beta),
                              beta=beta, unit=None)
        else:
            raise AmbiguousDirection(
                "factor is at the antipode (beta = %.6f); direction lost" % beta)
    else:
        unit = ssin * (1.0 / sn)
        part = SimplePart(mat=unit * beta, lam=complex(-beta * beta),
                          beta=beta, unit=unit)
    recon = exp_simple(part).mat
    bound = tol.fact_tol * max(1.0, m.frobenius_norm())
    if part.unit is None:
        # a sub-threshold sine is discarded by design; allow exactly
        # the discarded magnitude on top of the usual bound
        bound += math.sqrt(3.0) * tol.sin_zero_tol
    if (recon - m).frobenius_norm() > bound:
        raise NotSimpleFactor(
            "exp of recovered part misses the factor by %.3e"
            % (recon - m).frobenius_norm())
    return part


def _route_exprs(g: GradeDecomposition, i: int, tol: Tolerances):
    """Candidate expressions for factor i, lazily evaluated.

    Each constituent is a scalar times an exact involution, so a
    constituent that is numerically zero still inverts cleanly and the
    dirt/dirt ratio yields a well-formed but wrong factor that passes
    every shape check.  Routes therefore refuse inputs whose norm is
    below the effectively-zero floor instead of trusting the algebra.
    """
    j, k = [t for t in range(3) if t != i]
    eye = ComplexMat.identity(3)
    floor = tol.g0_zero_tol

    def usable(name: str, m: ComplexMat) -> ComplexMat:
        if rms_norm(m) <= floor:
            raise ZeroMatrix("%s input is effectively zero (%.3e)"
                             % (name, rms_norm(m)))
        return m

    def simple():
        return g.g0 + g.S[i]

    def inv_a():
        return eye + usable("H", g.H[k]) @ usable("S", g.S[j]).inverse(tol)

    def inv_b():
        return eye + usable("H", g.H[j]) @ usable("S", g.S[k]).inverse(tol)

    def inv2():
        return eye + usable("g6", g.g6) @ usable("H", g.H[i]).inverse(tol)

    return {"simple": simple, "inv_a": inv_a, "inv_b": inv_b, "inv2": inv2}


def _factor_candidate(g: GradeDecomposition, i: int, order, tol: Tolerances):
    exprs = _route_exprs(g, i, tol)
    eye = np.eye(3)
    notes = []
    ambiguous = None
    for name in order:
        try:
            cand = normalize(exprs[name](), tol)
        except (ZeroMatrix, NumericalError) as exc:
            notes.append("%s: %s" % (name, exc))
            continue
        udev = np.linalg.norm(cand.array.conj().T @ cand.array - eye)
        if udev > 100.0 * tol.fact_tol:
            notes.append("%s: candidate not unitary (%.3e)" % (name, udev))
            continue
        try:
            part = principal_log_factor(cand, tol)
        except AmbiguousDirection as exc:
            ambiguous = exc
            notes.append("%s: %s" % (name, exc))
            continue
        except NotSimpleFactor as exc:
            notes.append("%s: %s" % (name, exc))
            continue
        return cand, part, name, notes, ambiguous
    return None, None, None, notes, ambiguous


def factorize(u, tol: Tolerances = DEFAULT_TOL) -> Factorization:
    """Split u into three commuting Euler factors.

    Route order depends on whether the scalar grade is usable: when
    every cos(beta_i) is nonzero the direct g0 + S_i route is cheapest
    and most accurate; when g0 vanishes (some cos is zero) the inverse
    routes go first, with g0 + S_i kept as a last resort since it still
    works when only one cosine vanishes.
    """
    m = _as_mat(u)
    if m.n != 3:
        raise InputError("expected a 3x3 group element, got %dx%d" % (m.n, m.n))
    g = split_HS(m, tol)
    if rms_norm(g.g0) > tol.g0_zero_tol:
        order = ("simple", "inv_a", "inv_b", "inv2")
    else:
        order = ("inv_a", "inv_b", "inv2", "simple")
    factors = []
    parts = []
    routes = []
    ambiguous = None
    for i in (0, 1):
        cand, part, name, notes, amb = _factor_candidate(g, i, order, tol)
        ambiguous = ambiguous or amb
        if cand is None:
            if ambiguous is not None:
                raise ambiguous
            raise FactorizationFailed(
                "no route recovered factor %d: %s" % (i + 1, "; ".join(notes)))
        factors.append(cand)
        parts.append(part)
        routes.append(name)
    u3 = factors[0].adjoint() @ factors[1].adjoint() @ m
    try:
        parts.append(principal_log_factor(u3, tol))
    except NotSimpleFactor as exc:
        # the first two factors validated individually but are mutually
        # inconsistent; report as a factorization failure, not a shape error
        raise FactorizationFailed("closing factor is not simple: %s" % exc) from exc
    factors.append(u3)
    routes.append("closing")
    return Factorization(factors=(factors[0], factors[1], factors[2]),
                         parts=(parts[0], parts[1], parts[2]),
                         routes=(routes[0], routes[1], routes[2]))


def _flip(part: SimplePart) -> SimplePart:
    # principal log of -U_i instead of U_i: beta -> pi - beta, unit -> -unit
    beta = math.pi - part.beta
    unit = part.unit * (-1.0)
    return SimplePart(mat=unit * beta, lam=complex(-beta * beta),
                      beta=beta, unit=unit)


def _canonical_parts(u, tol: Tolerances):
    """Factor parts re-signed so their matrix logs sum to the principal log.

    Each factor admits two part representations, (beta, bhat) and its
    pi-complement (pi - beta, -bhat); the recovered factors carry
    arbitrary signs, so the raw sum of part logs may not be traceless
    (flips come in pairs and each pair shifts the trace by 0 or
    +-2 pi i), and even a traceless raw sum need not be the principal
    branch.  A single flip shifts the trace by pi in magnitude, so the
    traceless selections are cleanly separated: enumerate all sign
    choices, keep the traceless ones, and take the one of least norm,
    i.e. least sum of squared part angles.  Pairs of flips leave the
    product of the factor exponentials unchanged, and odd flip counts
    are never traceless, so the selection still multiplies out to u.
    """
    fz = factorize(u, tol)
    parts = list(fz.parts)
    flippable = [i for i, p in enumerate(parts) if p.unit is not None]
    best = None
    for mask in range(1 << len(flippable)):
        sel = list(parts)
        for bit, i in enumerate(flippable):
            if mask >> bit & 1:
                sel[i] = _flip(parts[i])
        if abs(sum(p.mat.trace().imag for p in sel)) > 1.0:
            continue
        cost = sum(p.beta * p.beta for p in sel)
        key = (cost, mask.bit_count(), mask)
        if best is None or key < best[0]:
            best = (key, sel)
    if best is None:
        raise FactorizationFailed("no traceless sign selection for the factor logs")
    return best[1], fz


def principal_log(u, tol: Tolerances = DEFAULT_TOL) -> ComplexMat:
    """Principal matrix log of u as a traceless anti-Hermitian matrix.

    Sum of the canonicalized factor logs.  Each factor contributes
    beta_i in [0, pi] along its own direction, so the result is the
    branch whose part angles are all principal.
    """
    parts, _ = _canonical_parts(u, tol)
    total = ComplexMat.zeros(3)
    for p in parts:
        total = total + p.mat
    total = (total - total.adjoint()) * 0.5
    if abs(total.trace()) > tol.log_tol:
        raise FactorizationFailed(
            "log trace %.3e after canonicalization" % abs(total.trace()))
    return total


def branch_log(u, branch: LogBranch, tol: Tolerances = DEFAULT_TOL) -> ComplexMat:
    """Non-principal log: adds 2 pi k_i turns along each part direction.

    A part with no recoverable direction (beta near 0) only admits the
    principal branch; asking for k != 0 there is refused.
    """
    if not isinstance(branch, LogBranch):
        branch = LogBranch(k=tuple(branch))
    parts, _ = _canonical_parts(u, tol)
    total = ComplexMat.zeros(3)
    for p, ki in zip(parts, branch.k):
        total = total + p.mat
        if ki != 0:
            if p.unit is None:
                raise MissingDirection(
                    "branch %d requested on a part with no direction" % ki)
            total = total + p.unit * (2.0 * math.pi * ki)
    total = (total - total.adjoint()) * 0.5
    return total
