"""Dense complex matrix arithmetic on finite tensor-product spaces.

Operators and density matrices are plain ``numpy`` complex arrays. Tensor
factors follow the Kronecker convention: the first factor of a ``SpaceSpec`` is
the slowest index, so for the MS layout [("S", 2), ("O", 3)] the product basis
vector |s_i O_j> sits at index 3*i + j.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from selfmeasure.errors import LinalgError
from . import tolerances as tol

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class SpaceSpec:
    """Ordered tensor factors (label, dim) of a Hilbert space."""

    factors: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        factors = tuple((str(label), int(dim)) for label, dim in self.factors)
        if not factors:
            raise LinalgError("SpaceSpec needs at least one factor")
        labels = [label for label, _ in factors]
        if len(set(labels)) != len(labels):
            raise LinalgError(f"Duplicate factor labels in {labels}")
        for label, dim in factors:
            if dim < 1:
                raise LinalgError(f"Factor {label!r} has non-positive dimension {dim}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def single(cls, label: str, dim: int) -> "SpaceSpec":
        return cls(((label, dim),))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.factors)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        """Position of a factor label."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise LinalgError(f"Unknown factor label {label!r}; spec has {list(self.labels)}") from None

    def factor_spec(self, label: str) -> "SpaceSpec":
        return SpaceSpec.single(label, self.dims[self.index(label)])


def as_matrix(a) -> ComplexMatrix:
    """Coerce to a square complex array or raise."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise LinalgError(f"Expected a non-empty square matrix, got shape {m.shape}")
    return m


def _require_same_dim(a: ComplexMatrix, b: ComplexMatrix):
    if a.shape != b.shape:
        raise LinalgError(f"Dimension mismatch: {a.shape} vs {b.shape}")


def max_abs(a) -> float:
    """Max-entry norm."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_residual(a) -> float:
    m = as_matrix(a)
    return max_abs(m - m.conj().T)


def is_hermitian(a, tolerance: float = tol.HERMITIAN_TOL) -> bool:
    return hermiticity_residual(a) <= tolerance


def unitarity_residual(u) -> float:
    m = as_matrix(u)
    return max_abs(m @ m.conj().T - np.eye(m.shape[0]))


def is_unitary(u, tolerance: float = tol.UNITARY_TOL) -> bool:
    return unitarity_residual(u) <= tolerance


def _require_hermitian(a: ComplexMatrix, what: str = "matrix"):
    residual = hermiticity_residual(a)
    if residual > tol.HERMITIAN_TOL:
        raise LinalgError(f"{what} is not Hermitian (max |A - A^dagger| = {residual:.3e})")


def tensor_product(a, b) -> ComplexMatrix:
    """Kronecker product with ``a`` as the slow index."""
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_all(ops: Iterable) -> ComplexMatrix:
    result = None
    for op in ops:
        result = as_matrix(op) if result is None else tensor_product(result, op)
    if result is None:
        raise LinalgError("tensor_all needs at least one operator")
    return result


def partial_trace(rho, spec: SpaceSpec, keep: str) -> ComplexMatrix:
    """Trace out every factor of ``spec`` except ``keep``."""
    m = as_matrix(rho)
    if m.shape[0] != spec.total_dim:
        raise LinalgError(
            f"Dimension mismatch: matrix dim {m.shape[0]} vs spec total_dim {spec.total_dim}"
        )
    k = spec.index(keep)
    dims = spec.dims
    n = len(dims)
    tensor = m.reshape(dims + dims)
    # Contract every other factor's row axis with its column axis.
    for axis in reversed(range(n)):
        if axis == k:
            continue
        current = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=axis, axis2=axis + current)
        if axis < k:
            k -= 1
    return tensor.reshape(dims[spec.index(keep)], dims[spec.index(keep)])


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    ma, mb = as_matrix(a), as_matrix(b)
    _require_same_dim(ma, mb)
    return complex(np.vdot(ma, mb))


def hs_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def hermitian_eig(a) -> Tuple[np.ndarray, ComplexMatrix]:
    """Ascending real eigenvalues and orthonormal eigenvector columns."""
    m = as_matrix(a)
    _require_hermitian(m)
    values, vectors = scipy.linalg.eigh((m + m.conj().T) / 2)
    return values, vectors


def unitary_from_hamiltonian(h, t: float) -> ComplexMatrix:
    """exp(-iHt) by spectral decomposition (hbar = 1)."""
    values, vectors = hermitian_eig(h)
    phases = np.exp(-1j * values * float(t))
    return (vectors * phases) @ vectors.conj().T


def principal_log_unitary(u, duration: float = 1.0) -> ComplexMatrix:
    """Hermitian H with exp(-iH*duration) = U, phases on the principal branch.

    Generator eigenvalues lie in (-pi, pi] / duration, with phase -1 mapped to +pi.
    """
    m = as_matrix(u)
    residual = unitarity_residual(m)
    if residual > tol.UNITARY_TOL:
        raise LinalgError(f"Matrix is not unitary (max |UU^dagger - I| = {residual:.3e})")
    if duration == 0:
        if max_abs(m - np.eye(m.shape[0])) > tol.SPECTRAL_TOL:
            raise LinalgError("Zero duration cannot generate a non-identity unitary")
        return np.zeros_like(m)
    # Complex Schur form of a normal matrix is diagonal with unitary Z.
    t_form, z = scipy.linalg.schur(m, output="complex")
    eigenvalues = np.diag(t_form)
    omega = -np.angle(eigenvalues)
    omega = np.where(omega <= -np.pi + tol.SPECTRAL_TOL, omega + 2 * np.pi, omega)
    h = (z * (omega / duration)) @ z.conj().T
    return (h + h.conj().T) / 2


def gram_schmidt_hs(
    ops: Sequence,
    tolerance: float = tol.DEPENDENCE_TOL,
    basis: Optional[Sequence] = None,
) -> List[ComplexMatrix]:
    """HS-orthonormalise ``ops``, dropping elements already in the running span.

    ``basis`` is an orthonormal prefix to extend; its elements are returned unchanged.
    """
    out: List[ComplexMatrix] = [as_matrix(e) for e in basis] if basis is not None else []
    start = len(out)
    seen = 0
    for op in ops:
        seen += 1
        v = as_matrix(op).copy()
        if out:
            _require_same_dim(out[0], v)
        # Two passes keep orthogonality at machine precision.
        for _ in range(2):
            for e in out:
                v -= hs_inner(e, v) * e
        norm = hs_norm(v)
        if norm < tolerance:
            continue
        out.append(v / norm)
    logger.debug("gram_schmidt_hs kept %d of %d operators", len(out) - start, seen)
    return out


def random_hermitian(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> ComplexMatrix:
    """Random density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
