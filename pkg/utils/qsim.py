"""
Single-qubit simulation: states, Bloch angles, projective measurement and the
classical<->quantum interfaces used to carry a bitplane into the machine and back.

Only computational basis states (CBS) ever enter a QuantumPlane in the denoising
pipeline, which keeps every Z-basis read-out deterministic.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from config import ALGEBRA_TOLERANCE, CBS_TOLERANCE
from utils.bitplane import Bitplane, invert_plane
from utils.errors import CBSViolationError, CompletenessError, DomainError, ShapeError
from utils.image_io import GrayImage
from utils.rng import grid_uniform

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QubitState:
    """alpha|0> + beta|1> with |alpha|^2 + |beta|^2 == 1."""
    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha, beta = complex(self.alpha), complex(self.beta)
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        # NaN has to fail this comparison as well
        if not abs(norm - 1.0) <= ALGEBRA_TOLERANCE:
            raise DomainError(f"State is not normalized: |alpha|^2 + |beta|^2 = {norm!r}")
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)

    @property
    def is_cbs(self) -> bool:
        return _is_cbs(abs(self.alpha))


KET_0 = QubitState(1.0, 0.0)
KET_1 = QubitState(0.0, 1.0)


@dataclass(frozen=True)
class BlochAngles:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not 0.0 <= theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {theta}")
        if not 0.0 <= phi < TWO_PI:
            raise DomainError(f"phi must lie in [0, 2*pi), got {phi}")
        # the azimuth is meaningless at the poles
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'phi', phi)


@dataclass(frozen=True, eq=False)
class MeasurementOperatorSet:
    """Measurement operators M_m (2x2 complex) with their outcome labels."""
    operators: Tuple[np.ndarray, ...]
    labels: Tuple[int, ...]

    def __post_init__(self):
        ops = []
        for op in self.operators:
            m = np.array(op, dtype=np.complex128)
            if m.shape != (2, 2):
                raise ShapeError(f"Measurement operators must be 2x2, got {m.shape}")
            m.flags.writeable = False
            ops.append(m)
        labels = tuple(int(lbl) for lbl in self.labels)
        if len(labels) != len(ops):
            raise ShapeError(f"{len(ops)} operators but {len(labels)} labels")
        if len(set(labels)) != len(labels):
            raise DomainError(f"Outcome labels must be unique, got {labels}")
        object.__setattr__(self, 'operators', tuple(ops))
        object.__setattr__(self, 'labels', labels)


def make_operator_set(matrices: Sequence, labels: Optional[Sequence[int]] = None) -> MeasurementOperatorSet:
    if labels is None:
        labels = range(len(matrices))
    return MeasurementOperatorSet(tuple(matrices), tuple(labels))


def _projector(ket: np.ndarray) -> np.ndarray:
    ket = np.asarray(ket, dtype=np.complex128)
    return np.outer(ket, ket.conj())


Z_BASIS = make_operator_set([_projector([1, 0]), _projector([0, 1])], [0, 1])
X_BASIS = make_operator_set(
    [_projector(np.array([1, 1]) / math.sqrt(2)), _projector(np.array([1, -1]) / math.sqrt(2))],
    [0, 1],
)


@dataclass(frozen=True, eq=False)
class QuantumPlane:
    """
    Row-major matrix of single-qubit states, stored as two complex arrays
    (alpha, beta). This is the in-machine form of a bitplane.
    """
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=np.complex128)
        beta = np.array(self.beta, dtype=np.complex128)
        if alpha.ndim != 2 or alpha.shape != beta.shape or 0 in alpha.shape:
            raise ShapeError(f"Amplitude arrays must be equal non-empty 2-D arrays, got {alpha.shape} and {beta.shape}")
        norms = np.abs(alpha) ** 2 + np.abs(beta) ** 2
        bad = np.argwhere(~(np.abs(norms - 1.0) <= ALGEBRA_TOLERANCE))
        if bad.size:
            r, c = (int(v) for v in bad[0])
            raise DomainError(f"State at (row={r}, col={c}) is not normalized")
        alpha.flags.writeable = False
        beta.flags.writeable = False
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)

    @property
    def rows(self) -> int:
        return self.alpha.shape[0]

    @property
    def cols(self) -> int:
        return self.alpha.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.alpha.shape

    def state(self, r: int, c: int) -> QubitState:
        return QubitState(self.alpha[r, c], self.beta[r, c])


def _is_cbs(abs_alpha) -> np.ndarray:
    return (np.abs(abs_alpha) <= CBS_TOLERANCE) | (np.abs(abs_alpha - 1.0) <= CBS_TOLERANCE)


def same_up_to_global_phase(a: QubitState, b: QubitState, tol: float = ALGEBRA_TOLERANCE) -> bool:
    """True when b == e^{i*gamma} a for some real gamma."""
    overlap = abs(np.vdot(a.vector, b.vector))
    return abs(overlap - 1.0) <= tol


def from_bloch(a: BlochAngles) -> QubitState:
    if a.theta == 0.0:
        return KET_0
    if a.theta == math.pi:
        return KET_1
    half = a.theta / 2.0
    alpha = math.cos(half)
    beta = complex(math.cos(a.phi), math.sin(a.phi)) * math.sin(half)
    # renormalize away rounding drift
    norm = math.sqrt(alpha ** 2 + abs(beta) ** 2)
    return QubitState(alpha / norm, beta / norm)


def to_bloch(q: QubitState) -> BlochAngles:
    if q.beta == 0:
        return BlochAngles(0.0, 0.0)
    if q.alpha == 0:
        return BlochAngles(math.pi, 0.0)
    # atan2 keeps full precision next to the poles, where acos(|alpha|) does not
    theta = 2.0 * math.atan2(abs(q.beta), abs(q.alpha))
    # relative phase; the global phase of alpha is discarded
    phi = float((np.angle(q.beta) - np.angle(q.alpha)) % TWO_PI)
    if phi >= TWO_PI:
        phi = 0.0
    return BlochAngles(theta, phi)


def check_completeness(ops: MeasurementOperatorSet) -> Tuple[bool, float]:
    """Returns (complete, max |sum(M^H M) - I| entry)."""
    total = np.zeros((2, 2), dtype=np.complex128)
    for m in ops.operators:
        total += m.conj().T @ m
    deviation = float(np.max(np.abs(total - np.eye(2))))
    return deviation <= ALGEBRA_TOLERANCE, deviation


def _require_complete(ops: MeasurementOperatorSet) -> None:
    complete, deviation = check_completeness(ops)
    if not complete:
        raise CompletenessError(f"Operator set violates completeness (max deviation {deviation:.3e})")


def outcome_probabilities(q: QubitState, ops: MeasurementOperatorSet) -> Dict[int, float]:
    """p(m) = <psi| M_m^H M_m |psi> for each outcome label m."""
    _require_complete(ops)
    psi = q.vector
    probs = {}
    for label, m in zip(ops.labels, ops.operators):
        p = np.vdot(psi, m.conj().T @ m @ psi).real
        probs[label] = max(0.0, float(p))
    total = sum(probs.values())
    if abs(total - 1.0) > ALGEBRA_TOLERANCE:
        raise CompletenessError(f"Outcome probabilities sum to {total!r}")
    return probs


def _collapse(q: QubitState, m: np.ndarray, p: float) -> QubitState:
    post = (m @ q.vector) / math.sqrt(p)
    # absorb rounding so the post-measurement state is normalized to 1e-12
    post = post / np.linalg.norm(post)
    return QubitState(post[0], post[1])


def _select(probs: Dict[int, float], u: float) -> int:
    """Inverse-CDF pick over outcomes, never landing on a zero-probability branch."""
    cumulative = 0.0
    chosen = None
    for label, p in probs.items():
        if p <= 0.0:
            continue
        cumulative += p
        chosen = label
        if u < cumulative:
            return label
    if chosen is None:
        raise CompletenessError("No outcome has positive probability")
    return chosen


def measure(q: QubitState, ops: MeasurementOperatorSet, rng: np.random.Generator) -> Tuple[int, QubitState]:
    """
    Projective measurement: samples outcome m with probability p(m) and returns
    (m, M_m|psi> / sqrt(p(m))).
    """
    probs = outcome_probabilities(q, ops)
    label = _select(probs, float(rng.random()))
    m = ops.operators[ops.labels.index(label)]
    return label, _collapse(q, m, probs[label])


def measure_many(q: QubitState, ops: MeasurementOperatorSet, shots: int, rng: np.random.Generator) -> Dict[int, int]:
    """Outcome counts over `shots` independent preparations and measurements of q."""
    if shots < 0:
        raise DomainError(f"shots must be non-negative, got {shots}")
    probs = outcome_probabilities(q, ops)
    labels = list(probs)
    p = np.array([probs[lbl] for lbl in labels])
    counts = rng.multinomial(shots, p / p.sum())
    return {lbl: int(n) for lbl, n in zip(labels, counts)}


def c2q(bit: int) -> QubitState:
    """Classical-to-quantum interface: alpha = 1 - bit, so 0 -> |0> and 1 -> |1>."""
    if bit not in (0, 1):
        raise DomainError(f"c2q expects a bit, got {bit!r}")
    return KET_0 if bit == 0 else KET_1


def q2c(q: QubitState, rng: np.random.Generator, strict: bool = True) -> int:
    """
    Quantum-to-classical interface: Z-basis measurement followed by the inverter,
    bit = 1 - alpha for a CBS (outcome 0 -> bit 0, outcome 1 -> bit 1).
    """
    if strict and not q.is_cbs:
        raise CBSViolationError(f"q2c expects a computational basis state, got alpha={q.alpha!r}")
    outcome, _ = measure(q, Z_BASIS, rng)
    return outcome


def c2q_plane(p: Bitplane) -> QuantumPlane:
    # the inverter yields alpha; beta carries the bit itself
    alpha = invert_plane(p).bits.astype(np.float64)
    return QuantumPlane(alpha=alpha, beta=p.bits.astype(np.float64))


def cbs_ones(qp: QuantumPlane) -> np.ndarray:
    """Boolean mask of |1> states; raises on the first superposed state."""
    abs_alpha = np.abs(qp.alpha)
    bad = np.argwhere(~_is_cbs(abs_alpha))
    if bad.size:
        r, c = (int(v) for v in bad[0])
        raise CBSViolationError("Quantum plane holds a superposition", location=(r, c))
    return abs_alpha <= CBS_TOLERANCE


def q2c_plane(qp: QuantumPlane, seed: int = 0, strict: bool = True) -> Bitplane:
    """
    Elementwise Z-basis read-out. Each (r, c) draws from its own sub-stream
    keyed by (seed, r, c), so the result does not depend on traversal order.
    """
    if strict:
        cbs_ones(qp)
    p_one = np.clip(np.abs(qp.beta) ** 2, 0.0, 1.0)
    draws = grid_uniform(seed, qp.rows, qp.cols)
    # outcome 0 when u < p(0); a CBS has p in {0, 1} so the draw cannot matter
    bits = (draws >= 1.0 - p_one).astype(np.uint8)
    bits[p_one <= 0.0] = 0
    bits[p_one >= 1.0] = 1
    return Bitplane(bits)


def amplitude_plane(qp: QuantumPlane) -> GrayImage:
    """Renders |alpha| as intensity (|alpha| = 1 -> 255), the in-machine view of a plane."""
    return GrayImage(np.rint(np.clip(np.abs(qp.alpha), 0.0, 1.0) * 255).astype(np.uint8))
