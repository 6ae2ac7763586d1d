"""State export to plain document values (complex numbers as [re, im] pairs)."""

from typing import Any, Dict, List, Sequence, Union

import numpy as np

from selfmeasure.errors import StateError
from selfmeasure.linalg import SpaceSpec
from .states import DensityState, DoubletState, GemengeState, PureState, StatisticalDoublet


def complex_to_pair(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_to_complex(pair: Sequence[float]) -> complex:
    if len(pair) != 2:
        raise StateError(f"Complex number must be an [re, im] pair, got {list(pair)}")
    return complex(float(pair[0]), float(pair[1]))


def vector_to_pairs(v) -> List[List[float]]:
    return [complex_to_pair(z) for z in np.asarray(v).reshape(-1)]


def matrix_to_pairs(m) -> List[List[List[float]]]:
    return [vector_to_pairs(row) for row in np.asarray(m)]


def pairs_to_matrix(rows) -> np.ndarray:
    return np.array([[pair_to_complex(p) for p in row] for row in rows], dtype=np.complex128)


def _spec_doc(spec) -> List[List[Union[str, int]]]:
    return [[label, dim] for label, dim in spec.factors]


def state_to_document(state) -> Dict[str, Any]:
    """Mapping describing any state type of this package."""
    if isinstance(state, PureState):
        return {"kind": "pure", "dim": state.dim, "amplitudes": vector_to_pairs(state.amplitudes)}
    if isinstance(state, DensityState):
        return {"kind": "density", "spec": _spec_doc(state.spec), "matrix": matrix_to_pairs(state.matrix)}
    if isinstance(state, GemengeState):
        return {
            "kind": "gemenge",
            "probabilities": [float(p) for p in state.probabilities],
            "states": [vector_to_pairs(psi.amplitudes) for psi, _ in state.entries],
        }
    if isinstance(state, DoubletState):
        return {
            "kind": "doublet",
            "pointer_index": state.pointer_index,
            "pointer_dim": state.pointer_dim,
            "phi_D": state_to_document(state.phi_D),
        }
    if isinstance(state, StatisticalDoublet):
        return {
            "kind": "statistical_doublet",
            "eta_I": [float(p) for p in state.eta_I],
            "eta_D": state_to_document(state.eta_D),
            "pointer_label": state.pointer_label,
        }
    raise StateError(f"Cannot serialize {type(state).__name__}")


def _field(doc: Dict[str, Any], name: str) -> Any:
    if name not in doc:
        raise StateError(f"State document of kind {doc.get('kind')!r} is missing {name!r}")
    return doc[name]


def state_from_document(doc: Dict[str, Any]):
    """Inverse of ``state_to_document``; the constructors re-check every invariant."""
    if not isinstance(doc, dict):
        raise StateError(f"State document must be a mapping, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind == "pure":
        return PureState([pair_to_complex(p) for p in _field(doc, "amplitudes")])
    if kind == "density":
        spec = SpaceSpec(tuple((label, dim) for label, dim in _field(doc, "spec")))
        return DensityState(pairs_to_matrix(_field(doc, "matrix")), spec)
    if kind == "gemenge":
        states = [PureState([pair_to_complex(p) for p in v]) for v in _field(doc, "states")]
        probabilities = _field(doc, "probabilities")
        if len(states) != len(probabilities):
            raise StateError(f"Gemenge document has {len(states)} states but {len(probabilities)} probabilities")
        return GemengeState(tuple(zip(states, probabilities)))
    if kind == "doublet":
        return DoubletState(
            state_from_document(_field(doc, "phi_D")),
            int(_field(doc, "pointer_index")),
            int(doc.get("pointer_dim", 3)),
        )
    if kind == "statistical_doublet":
        return StatisticalDoublet(
            state_from_document(_field(doc, "eta_D")),
            np.array(_field(doc, "eta_I"), dtype=float),
            doc.get("pointer_label", "O"),
        )
    raise StateError(f"Unknown state document kind {kind!r}")
