"""State and propagator dynamics of the bilinear system c' = A c + B c eps(t).

States are unit vectors on the complex sphere; admissible controls are
piecewise-constant schedules, so every flow is an exact product of segment
exponentials and no ODE-solver drift contaminates conservation checks.  The
drift part is, after diagonalization, a collection of phase rotations
``d_k -> exp(i lambda_k t) d_k``; in real coordinates this is a classical
Hamiltonian system with energy ``H = sum_k lambda_k (a_k^2 + b_k^2)``, which
is why the drift flow keeps returning near its starting point
(:func:`recurrence_scan` exhibits such returns cheaply).
"""

from dataclasses import dataclass

import numpy as np

from .matrices import (
    DEFAULT_TOL,
    Tolerance,
    canonical_skew_eigensystem,
    matrix_exp,
    skew_eigensystem,
    square_matrix,
)

__all__ = [
    "SPHERE_TOL",
    "StateVector",
    "ControlSystem",
    "DriftSpectrum",
    "ControlSchedule",
    "Trajectory",
    "diagonalize_drift",
    "drift_hamiltonian",
    "realify",
    "propagate",
    "propagate_operator",
    "recurrence_scan",
]

# Membership in the unit sphere is enforced to this absolute tolerance.
SPHERE_TOL = 1e-9


def _require_skew(M: np.ndarray, name: str, tol: Tolerance) -> None:
    deviation = np.abs(M + M.conj().T)
    worst = float(deviation.max())
    scale = max(1.0, float(np.abs(M).max()))
    if worst > tol.skew_tol * scale:
        i, j = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
        raise ValueError(
            f"{name} is not skew-Hermitian: max violation {worst:.3e} at entry ({i}, {j})"
        )


@dataclass
class StateVector:
    """Unit-norm complex amplitude vector (a point of the sphere S)."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError(f"state must be a 1-d vector, got shape {c.shape}")
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise ValueError("state has non-finite entries")
        off = abs(float(np.sum(np.abs(c) ** 2)) - 1.0)
        if off > SPHERE_TOL:
            raise ValueError(f"state is off the unit sphere: |sum |c_k|^2 - 1| = {off:.3e}")
        self.c = c

    @property
    def n(self) -> int:
        return self.c.size

    @classmethod
    def normalized(cls, c) -> "StateVector":
        """Construct from an arbitrary nonzero vector by rescaling to unit norm."""
        v = np.asarray(c, dtype=complex)
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(v / norm)


@dataclass
class ControlSystem:
    """The generator pair (A, B): drift ``A`` and control coupling ``B``."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = square_matrix(self.A, "A")
        B = square_matrix(self.B, "B")
        if A.shape != B.shape:
            raise ValueError(f"A and B must have equal shapes, got {A.shape} and {B.shape}")
        tol = DEFAULT_TOL
        _require_skew(A, "A", tol)
        _require_skew(B, "B", tol)
        self.A = A
        self.B = B

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass
class DriftSpectrum:
    """Drift eigenfrequencies and the unitary change of basis diagonalizing A.

    ``A = U diag(i lambda_1, ..., i lambda_n) U^dagger`` with real ``lambdas``
    sorted descending.
    """

    lambdas: np.ndarray
    U: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        U = square_matrix(self.U, "U")
        if lam.ndim != 1 or lam.size != U.shape[0]:
            raise ValueError("lambdas must be a real n-vector matching U")
        off = float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))
        if off > 1e-10:
            raise ValueError(f"U is not unitary: max |U^dagger U - I| = {off:.3e}")
        self.lambdas = lam
        self.U = U

    @property
    def n(self) -> int:
        return self.U.shape[0]


@dataclass
class ControlSchedule:
    """Piecewise-constant control as parallel arrays of durations and values."""

    durations: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.durations, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if d.ndim != 1 or v.ndim != 1 or d.size != v.size:
            raise ValueError("durations and values must be 1-d arrays of equal length")
        for k, dur in enumerate(d):
            if not np.isfinite(dur) or dur <= 0.0:
                raise ValueError(f"segment {k}: duration must be positive and finite, got {dur}")
        if not np.all(np.isfinite(v)):
            k = int(np.argmax(~np.isfinite(v)))
            raise ValueError(f"segment {k}: control value is not finite")
        if d.size and not np.isfinite(d.sum()):
            raise ValueError("total duration is not finite")
        self.durations = d
        self.values = v

    @property
    def n_segments(self) -> int:
        return self.durations.size

    @property
    def total_duration(self) -> float:
        return float(self.durations.sum())

    @property
    def segments(self) -> list:
        """Ordered (duration, value) pairs."""
        return [(float(d), float(v)) for d, v in zip(self.durations, self.values)]

    @classmethod
    def from_segments(cls, pairs) -> "ControlSchedule":
        pairs = list(pairs)
        return cls(
            durations=np.array([p[0] for p in pairs], dtype=float),
            values=np.array([p[1] for p in pairs], dtype=float),
        )

    @classmethod
    def constant(cls, value: float, duration: float, n_segments: int = 1) -> "ControlSchedule":
        """Constant control ``value`` over ``duration`` split into equal segments."""
        return cls(
            durations=np.full(n_segments, duration / n_segments),
            values=np.full(n_segments, float(value)),
        )


@dataclass
class Trajectory:
    """Sampled state history: ``times[i]`` against row ``states[i]``."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=complex)
        if t.ndim != 1 or s.ndim != 2 or s.shape[0] != t.size:
            raise ValueError("times must be 1-d and states (len(times), n)")
        if t.size and (t[0] != 0.0 or np.any(np.diff(t) <= 0)):
            raise ValueError("times must start at 0 and increase strictly")
        self.times = t
        self.states = s

    def state(self, i: int) -> StateVector:
        return StateVector(self.states[i])

    @property
    def final_state(self) -> StateVector:
        return StateVector(self.states[-1])

    def max_norm_drift(self) -> float:
        """Largest deviation of ``sum |c_k|^2`` from 1 over all samples."""
        return float(np.max(np.abs(np.sum(np.abs(self.states) ** 2, axis=1) - 1.0)))


def diagonalize_drift(A, tol: Tolerance | None = None) -> DriftSpectrum:
    """Eigenfrequencies and eigenbasis of a skew-Hermitian drift generator.

    The eigenvalues of ``A`` are ``i lambda_k`` with real ``lambda_k``,
    returned sorted descending; exact ties are broken by the first differing
    eigenvector component and each eigenvector's phase is pinned, so the
    output is deterministic run to run.

    Raises
    ------
    ValueError
        If ``A`` is not skew-Hermitian.
    """
    tol = tol or DEFAULT_TOL
    M = square_matrix(A, "A")
    _require_skew(M, "A", tol)
    omega, V = canonical_skew_eigensystem(M)
    return DriftSpectrum(lambdas=omega, U=V)


def drift_hamiltonian(spectrum: DriftSpectrum, s: StateVector) -> float:
    """Drift energy ``sum_k lambda_k |d_k|^2`` with ``d = U^dagger c``.

    Writing ``d_k = a_k + i b_k`` this is ``sum_k lambda_k (a_k^2 + b_k^2)``,
    the conserved Hamiltonian of the drift flow in realified coordinates.
    """
    if spectrum.n != s.n:
        raise ValueError(f"spectrum dimension {spectrum.n} does not match state dimension {s.n}")
    d = spectrum.U.conj().T @ s.c
    return float(np.dot(spectrum.lambdas, np.abs(d) ** 2))


def realify(s: StateVector) -> np.ndarray:
    """View the state as a real 2n-vector ``(a_1..a_n, b_1..b_n)``, ``c_k = a_k + i b_k``."""
    return np.concatenate((s.c.real, s.c.imag))


def propagate(
    sys: ControlSystem,
    s0: StateVector,
    sched: ControlSchedule,
    samples_per_segment: int = 10,
) -> Trajectory:
    """Exact piecewise-constant flow of ``c' = (A + eps B) c``.

    On each segment with constant value ``eps`` the state is advanced by the
    exact exponential ``exp(dt (A + eps B))`` evaluated through the unitary
    eigendecomposition, so the unit norm is conserved to rounding no matter
    how long the schedule runs.  ``samples_per_segment`` interior points are
    recorded per segment in addition to the segment endpoints.

    Raises
    ------
    ValueError
        On dimension mismatch or ``samples_per_segment < 1``.
    """
    if int(samples_per_segment) != samples_per_segment or samples_per_segment < 1:
        raise ValueError(f"samples_per_segment must be a positive integer, got {samples_per_segment}")
    samples_per_segment = int(samples_per_segment)
    if sys.n != s0.n:
        raise ValueError(f"system dimension {sys.n} does not match state dimension {s0.n}")

    times = [0.0]
    states = [s0.c.copy()]
    c = s0.c
    t = 0.0
    for dur, val in zip(sched.durations, sched.values):
        omega, V = skew_eigensystem(sys.A + val * sys.B)
        d = V.conj().T @ c
        for step in range(1, samples_per_segment + 1):
            tau = dur * step / (samples_per_segment + 1)
            states.append(V @ (np.exp(1j * omega * tau) * d))
            times.append(t + tau)
        c = V @ (np.exp(1j * omega * dur) * d)
        states.append(c)
        t = t + dur
        times.append(t)
    return Trajectory(times=np.array(times), states=np.array(states))


def propagate_operator(sys: ControlSystem, sched: ControlSchedule) -> np.ndarray:
    """Propagator ``U(T)``: the ordered product of segment exponentials.

    Later segments multiply on the left, and ``U(0) = I``.  Each factor is a
    unitary exponential of a skew-Hermitian generator, so the product is
    unitary to rounding.
    """
    U = np.eye(sys.n, dtype=complex)
    for dur, val in zip(sched.durations, sched.values):
        U = matrix_exp(sys.A + val * sys.B, dur) @ U
    return U


def _golden_minimize(f, a: float, b: float, iterations: int = 60) -> tuple[float, float]:
    # Plain golden-section minimization on [a, b]; deterministic iteration count.
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def recurrence_scan(
    sys: ControlSystem,
    s0: StateVector,
    tol: float,
    t_max: float,
    dt: float,
) -> float | None:
    """First drift-flow return time into the ``tol``-ball around the start.

    The drift-only flow (``eps = 0``) is evaluated in the drift eigenbasis as
    pure phase rotations, so the scan over ``t in (0, t_max]`` in steps ``dt``
    costs a cosine table per chunk rather than matrix exponentials and
    tolerates very large horizons.  The state must first leave the ball
    before a time counts as a return; the first qualifying grid time is
    sharpened by one local golden-section refinement.  A state that never
    leaves the ball (a fixed point of the drift) is trivially recurrent and
    reports the first scanned time.  Returns None when no return shows up
    before ``t_max`` -- absence is a valid outcome, not an error.
    """
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if not (0.0 < dt < t_max):
        raise ValueError(f"need 0 < dt < t_max, got dt={dt}, t_max={t_max}")
    if sys.n != s0.n:
        raise ValueError(f"system dimension {sys.n} does not match state dimension {s0.n}")

    spectrum = diagonalize_drift(sys.A)
    d0 = spectrum.U.conj().T @ s0.c
    weights = np.abs(d0) ** 2
    lam = spectrum.lambdas

    def dist_array(ts: np.ndarray) -> np.ndarray:
        gap = 2.0 * np.sum(weights * (1.0 - np.cos(np.outer(ts, lam))), axis=1)
        return np.sqrt(np.maximum(gap, 0.0))

    def dist_scalar(t: float) -> float:
        return float(dist_array(np.array([t]))[0])

    count = int(np.floor(t_max / dt + 1e-12))
    if count < 1:
        return None

    chunk = 1 << 17
    departed = False
    departure_time = 0.0
    candidate = None
    best_t, best_d = None, np.inf
    for start in range(1, count + 1, chunk):
        idx = np.arange(start, min(start + chunk, count + 1))
        ts = idx * dt
        ds = dist_array(ts)
        if not departed:
            outside = np.nonzero(ds > tol)[0]
            if outside.size == 0:
                continue
            departed = True
            departure_time = float(ts[outside[0]])
            ts = ts[outside[0]:]
            ds = ds[outside[0]:]
        hits = np.nonzero(ds <= tol)[0]
        if hits.size:
            candidate = float(ts[hits[0]])
            break
        k = int(np.argmin(ds))
        if ds[k] < best_d:
            best_d, best_t = float(ds[k]), float(ts[k])

    if not departed:
        return float(dt)

    center = candidate if candidate is not None else best_t
    if center is None:
        return None
    a = max(center - dt, departure_time)
    b = min(center + dt, count * dt)
    refined_t, refined_d = _golden_minimize(dist_scalar, a, b)

    qualifying = []
    if candidate is not None:
        qualifying.append(candidate)
    if refined_d <= tol:
        qualifying.append(refined_t)
    return min(qualifying) if qualifying else None
