"""Exponentials of su(3) elements through their commuting parts.

Each part b with b^2 = -beta^2 * identity exponentiates by the Euler
formula exp(b) = cos(beta) 1 + sin(beta) b/beta, and the full group
element is the product of the three factors, in any order since the
parts commute.  Scaling the parts independently sweeps out the family
U(t1, t2, t3) of group elements that all fix the same three parts
under conjugation.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import InputError, NonCommutingParts, NotUnitary
from .invdec import AlgebraElement, SimplePart, decompose_via_eigen
from .smallmat import ComplexMat, commutator
from .tolerances import DEFAULT_TOL, Tolerances


class GroupElement:
    """A validated special-unitary 3x3 matrix."""

    __slots__ = ("_mat",)

    def __init__(self, mat, tol: Tolerances = DEFAULT_TOL) -> None:
        m = mat if isinstance(mat, ComplexMat) else ComplexMat(mat)
        if m.n != 3:
            raise NotUnitary(f"expected a 3x3 matrix, got {m.n}x{m.n}")
        dev = (m.adjoint() @ m - ComplexMat.identity(3)).frobenius_norm()
        if dev > tol.grp_tol:
            raise NotUnitary(f"unitarity residual {dev:.3e} exceeds grp_tol")
        det_dev = abs(m.det() - 1.0)
        if det_dev > tol.grp_tol:
            raise NotUnitary(f"determinant is off 1 by {det_dev:.3e}, matrix is not special")
        object.__setattr__(self, "_mat", m)

    @property
    def mat(self) -> ComplexMat:
        return self._mat

    def __repr__(self) -> str:
        return f"GroupElement({self._mat.array.tolist()!r})"


@dataclasses.dataclass(frozen=True)
class EulerFactor:
    """One factor cos(beta) 1 + sin(beta) unit; unitary but only U(3)."""

    part: SimplePart
    mat: ComplexMat


def _factor_mat(part: SimplePart, scale: float = 1.0) -> ComplexMat:
    beta = part.beta if part.beta is not None else 0.0
    if part.unit is None:
        return ComplexMat.identity(3) * math.cos(scale * beta)
    angle = scale * beta
    return ComplexMat.identity(3) * math.cos(angle) + part.unit * math.sin(angle)


def exp_simple(part: SimplePart) -> EulerFactor:
    """Exponentiate one commuting part by the Euler formula."""
    if part.beta is None and part.unit is not None:
        raise InputError("part has a direction but no angle")
    return EulerFactor(part=part, mat=_factor_mat(part))


def exp_su3(b, tol: Tolerances = DEFAULT_TOL) -> GroupElement:
    """exp(B) for B in su(3), as the product of three Euler factors.

    Parts come from decompose_via_eigen; zero parts contribute the
    identity and are skipped.  The product is validated as a special
    unitary matrix on the way out.
    """
    element = b if isinstance(b, AlgebraElement) else AlgebraElement(b, tol)
    dec = decompose_via_eigen(element.mat, tol)
    out = ComplexMat.identity(3)
    for part in dec.parts:
        if part.unit is None:
            continue
        out = out @ _factor_mat(part)
    return GroupElement(out, tol)


def family_element(parts, thetas, tol: Tolerances = DEFAULT_TOL) -> ComplexMat:
    """Product of scaled Euler factors exp(t_i b_i) over the given parts.

    Every matrix in this family commutes with each part and fixes it
    under conjugation.  The parts must commute pairwise; the factors
    are unitary but their determinants need not be 1.
    """
    parts = list(parts)
    thetas = [float(t) for t in thetas]
    if len(parts) != len(thetas):
        raise InputError(f"{len(parts)} parts but {len(thetas)} angles")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            bound = tol.decomp_tol * max(
                1.0, parts[i].mat.frobenius_norm() * parts[j].mat.frobenius_norm()
            )
            if commutator(parts[i].mat, parts[j].mat).frobenius_norm() > bound:
                raise NonCommutingParts(f"parts {i} and {j} do not commute")
    n = parts[0].mat.n if parts else 3
    out = ComplexMat.identity(n)
    for part, theta in zip(parts, thetas):
        out = out @ _factor_mat(part, theta)
    return out


def invariant_combination(parts, coeffs) -> ComplexMat:
    """Linear combination sum_i c_i b_i of the commuting parts."""
    parts = list(parts)
    coeffs = [complex(c) for c in coeffs]
    if len(parts) != len(coeffs):
        raise InputError(f"{len(parts)} parts but {len(coeffs)} coefficients")
    if not parts:
        raise InputError("no parts given")
    out = ComplexMat.zeros(parts[0].mat.n)
    for part, c in zip(parts, coeffs):
        out = out + part.mat * c
    return out
