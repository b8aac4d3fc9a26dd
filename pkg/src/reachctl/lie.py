"""Generation and classification of the Lie algebra spanned by control generators.

The reachable set of a bilinear system is governed by the smallest real Lie
algebra containing the drift and control generators.  :func:`closure` builds
an orthonormal basis of that algebra by iterated bracketing with on-the-fly
Gram-Schmidt completion, :func:`member` measures distance from its span, and
:func:`classify` names the algebra when it is one of the standard
controllability-relevant cases (all of u(n), su(n), or abelian).
"""

import enum
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .matrices import DEFAULT_TOL, Tolerance, bracket, frobenius_inner, is_skew_hermitian, square_matrix

__all__ = [
    "LieAlgebraBasis",
    "AlgebraLabel",
    "AlgebraClass",
    "closure",
    "member",
    "classify",
]


@dataclass
class LieAlgebraBasis:
    """Orthonormal real basis of a matrix Lie algebra of skew-Hermitian generators.

    Attributes
    ----------
    n : int
        Ambient matrix dimension.
    elements : list of ndarray
        Unit-Frobenius-norm, pairwise orthogonal (real Frobenius pairing)
        skew-Hermitian matrices spanning the algebra.
    provenance : list of str
        For each element, the bracket word that produced it, e.g.
        ``"[g0,[g0,g1]]"``.  Seed generators are named ``g0``, ``g1``, ... by
        input position.
    """

    n: int
    elements: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.elements)


class AlgebraLabel(str, enum.Enum):
    """Controllability-relevant classification of a generated algebra."""

    FULL_UNITARY = "FULL_UNITARY"
    SPECIAL_UNITARY = "SPECIAL_UNITARY"
    ABELIAN = "ABELIAN"
    OTHER = "OTHER"


@dataclass
class AlgebraClass:
    """Dimension and structure flags of a generated algebra."""

    dim: int
    traceless: bool
    abelian: bool
    label: AlgebraLabel


def _orthogonal_residual(W: np.ndarray, elements: list) -> np.ndarray:
    # Two classical Gram-Schmidt passes; one pass loses orthogonality near
    # dimension n^2, two are enough at these sizes.
    for _ in range(2):
        for e in elements:
            W = W - frobenius_inner(e, W) * e
    return W


def closure(generators, tol: Tolerance | None = None) -> LieAlgebraBasis:
    """Orthonormal basis of the smallest real Lie algebra containing ``generators``.

    The basis is seeded with the Gram-Schmidt-orthonormalized generators and
    grown breadth-first: a FIFO worklist of unprocessed index pairs is
    consumed, each bracket is projected onto the orthogonal complement of the
    current span (twice, for stability), and the normalized residual is
    appended whenever its norm exceeds ``rank_tol`` times the bracket's own
    norm, with an absolute floor of ``rank_tol``.  The relative threshold
    keeps brackets of near-commuting generators from injecting noise
    dimensions.  Generation stops when the worklist empties or the count
    reaches n^2 (the dimension of u(n)), so termination is certain.

    Parameters
    ----------
    generators : sequence of array-like
        Non-empty collection of skew-Hermitian matrices of equal dimension.
    tol : Tolerance, optional

    Returns
    -------
    LieAlgebraBasis

    Raises
    ------
    ValueError
        If the list is empty, dimensions are mixed, or a generator fails the
        skew-Hermiticity check (the offender is named by position).
    """
    tol = tol or DEFAULT_TOL
    gens = [square_matrix(g, f"generator {k}") for k, g in enumerate(generators)]
    if not gens:
        raise ValueError("closure requires at least one generator")
    n = gens[0].shape[0]
    for k, g in enumerate(gens):
        if g.shape != (n, n):
            raise ValueError(f"generator {k} has shape {g.shape}, expected {(n, n)}")
        if not is_skew_hermitian(g, tol):
            raise ValueError(f"generator {k} is not skew-Hermitian")

    cap = n * n
    elements: list = []
    words: list = []
    queue: deque = deque()

    def admit(candidate: np.ndarray, word: str, ref_norm: float) -> None:
        if len(elements) >= cap:
            return
        residual = _orthogonal_residual(candidate, elements)
        norm = float(np.linalg.norm(residual))
        if norm <= max(tol.rank_tol * ref_norm, tol.rank_tol):
            return
        elements.append(residual / norm)
        words.append(word)
        new = len(elements) - 1
        for i in range(new):
            queue.append((i, new))

    for k, g in enumerate(gens):
        admit(g, f"g{k}", float(np.linalg.norm(g)))

    while queue and len(elements) < cap:
        i, j = queue.popleft()
        w = bracket(elements[i], elements[j])
        ref = float(np.linalg.norm(w))
        if ref == 0.0:
            continue
        admit(w, f"[{words[i]},{words[j]}]", ref)

    return LieAlgebraBasis(n=n, elements=elements, provenance=words)


def member(basis: LieAlgebraBasis, X) -> float:
    """Frobenius norm of ``X`` minus its orthogonal projection onto ``span(basis)``.

    Zero (to rounding) means ``X`` lies in the algebra.  The projection uses
    real coefficients, matching the algebra's structure as a real vector
    space; a matrix with a component outside the skew-Hermitian cone simply
    reports that component as part of the residual.
    """
    M = square_matrix(X)
    if M.shape != (basis.n, basis.n):
        raise ValueError(f"member got shape {M.shape}, basis dimension is {basis.n}")
    residual = _orthogonal_residual(M, basis.elements)
    return float(np.linalg.norm(residual))


def classify(basis: LieAlgebraBasis, tol: Tolerance | None = None) -> AlgebraClass:
    """Dimension, tracelessness, and commutativity flags, plus a headline label.

    ``FULL_UNITARY`` when the dimension is n^2 (all of u(n)),
    ``SPECIAL_UNITARY`` when it is n^2 - 1 with every element traceless
    (su(n)), ``ABELIAN`` when all pairwise brackets vanish, ``OTHER``
    otherwise.  For n = 1 the full and abelian conditions coincide and the
    stronger ``FULL_UNITARY`` label wins.
    """
    tol = tol or DEFAULT_TOL
    dim = basis.dim
    n = basis.n
    traceless = all(
        abs(complex(np.trace(e))) <= tol.rank_tol * max(1.0, float(np.linalg.norm(e)))
        for e in basis.elements
    )
    abelian = True
    for i in range(dim):
        for j in range(i + 1, dim):
            scale = float(np.linalg.norm(basis.elements[i]) * np.linalg.norm(basis.elements[j]))
            if np.linalg.norm(bracket(basis.elements[i], basis.elements[j])) > tol.rank_tol * max(1.0, scale):
                abelian = False
                break
        if not abelian:
            break

    if dim == n * n:
        label = AlgebraLabel.FULL_UNITARY
    elif dim == n * n - 1 and traceless:
        label = AlgebraLabel.SPECIAL_UNITARY
    elif abelian and dim >= 1:
        label = AlgebraLabel.ABELIAN
    else:
        label = AlgebraLabel.OTHER
    return AlgebraClass(dim=dim, traceless=traceless, abelian=abelian, label=label)
