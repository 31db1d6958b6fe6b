"""Grade projections of a special unitary matrix.

With U = exp(b1) exp(b2) exp(b3) and the shorthand c_i = cos(beta_i),
s_i = sin(beta_i), expanding the product sorts the terms by how many
sine factors they carry: a scalar (grade 0), the single-sine terms
(grade 2), the double-sine terms (grade 4), and the triple-sine term,
which is an imaginary scalar (grade 6, the pseudoscalar).  All four
are recoverable from U alone:

    ccos = (U + U^dag)/2          ssin = (U - U^dag)/2
    g0 = (1 + tr ccos)/4 * 1      g6 = tr(ssin)/4 * 1
    g4 = ccos - g0                g2 = ssin - g6

The per-part constituents H_i = ccos(b_i) prod_{j!=i} ssin(b_j) and
S_i = ssin(b_i) prod_{j!=i} ccos(b_j) follow from one more invariant
decomposition: A = g2 + g4 has complex eigenvalues gamma_i + i delta_i
on U's eigenbasis, and feeding the real and imaginary parts separately
through the part ansatz yields exactly Hermitian H_i and exactly
skew-Hermitian S_i with sum g4 and g2 respectively.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .expmap import GroupElement
from .smallmat import ComplexMat, eigen_normal3
from .tolerances import DEFAULT_TOL, Tolerances


@dataclasses.dataclass(frozen=True)
class GradeDecomposition:
    g0: ComplexMat
    g2: ComplexMat
    g4: ComplexMat
    g6: ComplexMat
    ccosU: ComplexMat
    ssinU: ComplexMat
    H: tuple[ComplexMat, ComplexMat, ComplexMat]
    S: tuple[ComplexMat, ComplexMat, ComplexMat]


def _as_mat(u) -> ComplexMat:
    return u.mat if isinstance(u, GroupElement) else u


def ccos_ssin(u) -> tuple[ComplexMat, ComplexMat]:
    """Hermitian and skew-Hermitian halves of u; they sum back to u."""
    m = _as_mat(u)
    adj = m.adjoint()
    return (m + adj) * 0.5, (m - adj) * 0.5


def grade0(u) -> ComplexMat:
    m = _as_mat(u)
    c = (1.0 + ((m.trace() + m.trace().conjugate()) / 2.0)) / 4.0
    return ComplexMat.identity(m.n) * c


def grade6(u) -> ComplexMat:
    m = _as_mat(u)
    s = ((m.trace() - m.trace().conjugate()) / 2.0) / 4.0
    return ComplexMat.identity(m.n) * s


def grade2(u) -> ComplexMat:
    _, ssin = ccos_ssin(u)
    return ssin - grade6(u)


def grade4(u) -> ComplexMat:
    ccos, _ = ccos_ssin(u)
    return ccos - grade0(u)


def traceless_projection(m: ComplexMat) -> ComplexMat:
    """M - tr(M)/3, the projection used in lattice gauge fixing.

    Differs from grade2 of a group element by (1/12) tr(ssin) times the
    identity; kept for comparison, not used by the grade machinery.
    """
    return m - ComplexMat.identity(m.n) * (m.trace() / 3.0)


def _hermitian_outer(v: np.ndarray) -> np.ndarray:
    # v v^dag assembled from real/imag blocks.  A direct complex
    # np.outer(v, v.conj()) can pick up ~1e-20 imaginary dirt on the
    # diagonal when the compiler contracts the multiply into FMAs;
    # this form is exactly Hermitian in IEEE arithmetic.
    re = np.outer(v.real, v.real) + np.outer(v.imag, v.imag)
    im = np.outer(v.imag, v.real) - np.outer(v.real, v.imag)
    return re + 1j * im


def split_HS(u, tol: Tolerances = DEFAULT_TOL) -> GradeDecomposition:
    """Full grade decomposition of u, including the H_i/S_i constituents.

    A = g2 + g4 is a polynomial in the normal matrix u and u^dag, so it
    shares u's unitary eigenbasis; diagonalizing u (stable) rather than
    A itself associates each complex eigenvalue gamma + i delta with an
    eigencolumn, and the part ansatz applied to the gammas alone gives
    H_i, to the i deltas alone S_i.  Built this way the H_i are exactly
    Hermitian and the S_i exactly skew.
    """
    m = _as_mat(u)
    ccos, ssin = ccos_ssin(m)
    g0 = grade0(m)
    g6 = grade6(m)
    g2 = ssin - g6
    g4 = ccos - g0
    es = eigen_normal3(m, tol)
    a = (g2 + g4).array
    p = es.vectors.array
    d = np.diag(p.conj().T @ a @ p)
    gam = d.real
    delt = d.imag
    eye = np.eye(3)
    hs = []
    ss = []
    for i in range(3):
        invol = 2.0 * _hermitian_outer(p[:, i]) - eye
        hs.append(ComplexMat(0.5 * (gam[i] - gam.sum()) * invol))
        ss.append(ComplexMat(0.5j * (delt[i] - delt.sum()) * invol))
    return GradeDecomposition(
        g0=g0, g2=g2, g4=g4, g6=g6, ccosU=ccos, ssinU=ssin,
        H=(hs[0], hs[1], hs[2]), S=(ss[0], ss[1], ss[2]),
    )
