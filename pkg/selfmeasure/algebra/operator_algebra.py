"""Unital *-subalgebras of M_d represented by an HS-orthonormal basis."""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from selfmeasure.errors import AlgebraError
from selfmeasure.linalg import ComplexMatrix, as_matrix, gram_schmidt_hs
from selfmeasure.linalg.tolerances import CLOSURE_TOL, DEPENDENCE_TOL
from selfmeasure.states.serialize import matrix_to_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OperatorAlgebra:
    space_dim: int
    basis: Tuple[ComplexMatrix, ...]
    unital: bool
    commutative: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _rows(self) -> np.ndarray:
        """Basis flattened to rows of a (dimension, d*d) array."""
        if not self.basis:
            return np.zeros((0, self.space_dim * self.space_dim), dtype=np.complex128)
        return np.stack([e.reshape(-1) for e in self.basis])

    @cached_property
    def stacked(self) -> np.ndarray:
        """Basis as a (dimension, d, d) array."""
        return self._rows.reshape(self.dimension, self.space_dim, self.space_dim)

    def _check_dim(self, m: ComplexMatrix):
        if m.shape[0] != self.space_dim:
            raise AlgebraError(f"Dimension mismatch: operator dim {m.shape[0]} vs algebra space_dim {self.space_dim}")

    def coordinates(self, op) -> np.ndarray:
        """HS coefficients <E_k, op> of the projection onto the span."""
        m = as_matrix(op)
        self._check_dim(m)
        return self._rows.conj() @ m.reshape(-1)

    def residual(self, op) -> float:
        """HS norm of ``op`` minus its projection onto the span."""
        m = as_matrix(op)
        self._check_dim(m)
        v = m.reshape(-1)
        return float(np.linalg.norm(v - self._rows.T @ (self._rows.conj() @ v)))

    def contains(self, op, tolerance: float = CLOSURE_TOL) -> bool:
        return self.residual(op) < tolerance

    def closure_residuals(self) -> Tuple[float, float]:
        """Largest product and adjoint residuals over the basis."""
        if not self.basis:
            return 0.0, 0.0
        d = self.space_dim
        products = np.einsum("aij,bjk->abik", self.stacked, self.stacked).reshape(-1, d * d)
        adjoints = self.stacked.conj().transpose(0, 2, 1).reshape(-1, d * d)
        return _max_residual(self._rows, products), _max_residual(self._rows, adjoints)


def _residual_rows(basis_rows: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    if basis_rows.shape[0] == 0:
        return candidates.copy()
    return candidates - (candidates @ basis_rows.conj().T) @ basis_rows


def _max_residual(basis_rows: np.ndarray, candidates: np.ndarray) -> float:
    residual = _residual_rows(basis_rows, candidates)
    return float(np.max(np.linalg.norm(residual, axis=1))) if residual.size else 0.0


def _extend(basis: List[ComplexMatrix], candidates: np.ndarray, d: int) -> List[ComplexMatrix]:
    """Add the span of the candidate rows to ``basis``, largest residual first."""
    current = np.stack([e.reshape(-1) for e in basis]) if basis else np.zeros((0, d * d), dtype=np.complex128)
    residual = _residual_rows(current, candidates)
    norms = np.linalg.norm(residual, axis=1)
    order = np.argsort(-norms)
    order = order[norms[order] >= DEPENDENCE_TOL]
    return gram_schmidt_hs([residual[k].reshape(d, d) for k in order], basis=basis)


def _commutative(stacked: np.ndarray) -> bool:
    if stacked.shape[0] < 2:
        return True
    products = np.einsum("aij,bjk->abik", stacked, stacked)
    commutators = products - products.transpose(1, 0, 2, 3)
    return float(np.max(np.abs(commutators))) < CLOSURE_TOL


def generate_algebra(
    generators: Sequence,
    include_identity: bool = True,
    space_dim: Optional[int] = None,
) -> OperatorAlgebra:
    """Smallest *-closed, product-closed span containing the generators.

    Iterates {pairwise products, adjoints} of the current basis until the span
    dimension stabilises, at most d^2 rounds.
    """
    ops = [as_matrix(g) for g in generators]
    dims = {op.shape[0] for op in ops}
    if space_dim is not None:
        dims.add(int(space_dim))
    if len(dims) > 1:
        raise AlgebraError(f"Dimension mismatch among generators: {sorted(dims)}")
    if not dims:
        raise AlgebraError("Cannot infer space dimension from an empty generator list")
    d = dims.pop()
    cap = d * d

    seeds = list(ops)
    if include_identity:
        seeds.insert(0, np.eye(d, dtype=np.complex128))
    seeds += [op.conj().T for op in ops]
    elements: List[ComplexMatrix] = []
    if seeds:
        elements = _extend(elements, np.stack([s.reshape(-1) for s in seeds]), d)[:cap]

    for round_index in range(cap):
        if not elements or len(elements) >= cap:
            break
        stacked = np.stack(elements)
        products = np.einsum("aij,bjk->abik", stacked, stacked).reshape(-1, d * d)
        adjoints = stacked.conj().transpose(0, 2, 1).reshape(-1, d * d)
        before = len(elements)
        elements = _extend(elements, np.vstack([products, adjoints]), d)[:cap]
        logger.debug("closure round %d: span %d -> %d", round_index, before, len(elements))
        if len(elements) == before:
            break

    basis = tuple(elements)
    stacked = np.array(basis).reshape(-1, d, d) if basis else np.zeros((0, d, d), dtype=np.complex128)
    algebra = OperatorAlgebra(
        space_dim=d,
        basis=basis,
        unital=False,
        commutative=_commutative(stacked),
    )
    return replace(algebra, unital=bool(basis) and algebra.contains(np.eye(d)))


def full_matrix_algebra(dim: int) -> OperatorAlgebra:
    """M_d spanned by the matrix units |i><j|."""
    basis = []
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=np.complex128)
            e[i, j] = 1.0
            basis.append(e)
    return OperatorAlgebra(dim, tuple(basis), unital=True, commutative=(dim == 1))


def algebra_to_document(algebra: OperatorAlgebra, include_basis: bool = True) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "space_dim": algebra.space_dim,
        "dimension": algebra.dimension,
        "unital": algebra.unital,
        "commutative": algebra.commutative,
    }
    if include_basis:
        doc["basis"] = [matrix_to_pairs(e) for e in algebra.basis]
    return doc
