"""Gradient flows on the local unitary group SU(2)^(x n).

Type-I: maximize f(K) = Re tr{K H K^dag (-H)} for normalized H; the
ascent direction is G = P_k([K H K^dag, H]) and K <- exp(eps G) K.
Type-II: maximize g(K1, K2) = Re tr{K1 U K2 U} / N, i.e. drive
K1 U K2 towards U^dag.  Both use Armijo backtracking along the projected
gradient and keep K as per-qubit SU(2) factors.
"""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .config import TOL
from .errors import NonSkewInput, NonUnitaryInput, ZeroHamiltonian
from .linalg import as_array, is_skew, is_unitary
from .local import LocalUnitary

_STAGNATION_WINDOW = 200
_STAGNATION_GAIN = 1e-14
_STEP_GROWTH = 2.0
_STEP_CAP = 1e3


@dataclass(frozen=True)
class FlowConfig:
    max_iters: int = 5000
    initial_step: float = 0.1
    armijo_shrink: float = 0.5
    armijo_slope: float = 1e-4
    convergence_tol: float = 1e-9
    stall_tol: float = 1e-12
    restarts: int = 20
    rng_seed: int = 0
    workers: int = 1               # >1 runs restarts in worker processes
    stop_on_witness: bool = True   # sequential mode only

    def __post_init__(self):
        for name in ("max_iters", "initial_step", "armijo_shrink", "armijo_slope",
                     "convergence_tol", "stall_tol", "restarts"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.armijo_shrink < 1:
            raise ValueError("armijo_shrink must be < 1")

    def rng(self, restart: int) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(self.rng_seed + restart))


@dataclass
class RestartOutcome:
    restart: int
    witness: object                 # LocalUnitary or (LocalUnitary, LocalUnitary)
    overlap: float
    residual: float
    grad_norm: float
    iterations: int
    reason: str                     # converged | stalled | stagnated | max_iters
    trace: np.ndarray               # rows (iteration, overlap) per accepted step


@dataclass
class FlowResult:
    verdict: str                    # witness_found | no_witness_found
    best_overlap: float
    witness: object | None
    trace: list                     # one (iteration, overlap) array per restart
    iterations_used: int
    restarts_used: int
    residual: float
    outcomes: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.verdict == "witness_found"


# --- local projection ----------------------------------------------------

def local_parts(g: np.ndarray) -> list[np.ndarray]:
    """Per-qubit 2x2 traceless parts g_l of the projection of g onto the local algebra.

    Uses the partial trace R_l = tr_{not l}(g): the coefficient of sigma_nu on
    qubit l is tr(sigma_nu R_l) / N, hence g_l = (2/N) (R_l - tr(R_l)/2 I).
    """
    dim = g.shape[0]
    n = dim.bit_length() - 1
    parts = []
    for q in range(n):
        a, b = 2 ** q, 2 ** (n - q - 1)
        r = np.einsum("aibajb->ij", g.reshape(a, 2, b, a, 2, b))
        parts.append((2.0 / dim) * (r - np.trace(r) / 2 * np.eye(2)))
    return parts


def embed_parts(parts) -> np.ndarray:
    n = len(parts)
    out = 0
    for q, p in enumerate(parts):
        out = out + np.kron(np.kron(np.eye(2 ** q), p), np.eye(2 ** (n - q - 1)))
    return out


def project_local(g) -> np.ndarray:
    """Orthogonal projection of a skew-Hermitian matrix onto span{i sigma_nu^(l)}."""
    g = as_array(g)
    if not is_skew(g):
        raise NonSkewInput("project_local expects a skew-Hermitian matrix")
    return embed_parts(local_parts(g))


def _parts_norm2(parts, dim: int) -> float:
    # ||I (x) p (x) I||_F^2 = (dim/2) ||p||_F^2, and distinct qubits are orthogonal
    return float(sum(np.vdot(p, p).real for p in parts) * dim / 2)


# --- type-I --------------------------------------------------------------

def _normalized(h) -> np.ndarray:
    m = as_array(h)
    nrm = np.linalg.norm(m)
    if nrm == 0:
        raise ZeroHamiltonian("the zero Hamiltonian has no flow")
    if np.max(np.abs(m - m.conj().T)) > 1e-10 * nrm:
        raise ValueError("type1_flow expects a Hermitian matrix")
    return m / nrm


def type1_objective(h: np.ndarray, k: LocalUnitary) -> float:
    """f(K) = Re tr{K H K^dag (-H)} for normalized h."""
    K = k.full()
    a = K @ h @ K.conj().T
    return float(-np.sum(a * h.T).real)


def type1_gradient(h: np.ndarray, k: LocalUnitary) -> list[np.ndarray]:
    K = k.full()
    a = K @ h @ K.conj().T
    return local_parts(a @ h - h @ a)


def _armijo(f0, slope, evaluate, cfg, eps):
    """Backtrack from ``eps`` until the sufficient-increase test passes."""
    while eps > 1e-18:
        val, state = evaluate(eps)
        if val >= f0 + cfg.armijo_slope * eps * slope:
            return eps, val, state
        eps *= cfg.armijo_shrink
    return None, f0, None


def _run_type1(h: np.ndarray, cfg: FlowConfig, restart: int) -> RestartOutcome:
    dim = h.shape[0]
    n = dim.bit_length() - 1
    k = LocalUnitary.random(n, cfg.rng(restart))
    K = k.full()
    a = K @ h @ K.conj().T
    f = float(-np.sum(a * h.T).real)
    trace = [(0, -f)]
    eps = cfg.initial_step
    history = [f]
    reason = "max_iters"
    it = 0
    gnorm = np.inf
    while True:
        residual = float(np.linalg.norm(a + h))
        if residual < cfg.convergence_tol:
            reason = "converged"
            break
        parts = local_parts(a @ h - h @ a)
        g2 = _parts_norm2(parts, dim)
        gnorm = np.sqrt(g2)
        if gnorm < cfg.stall_tol:
            reason = "stalled"
            break
        if it >= cfg.max_iters:
            break

        def evaluate(e):
            kk = k.step([e * p for p in parts])
            KK = kk.full()
            aa = KK @ h @ KK.conj().T
            return float(-np.sum(aa * h.T).real), (kk, aa)

        step, fval, state = _armijo(f, g2, evaluate, cfg, eps)
        if step is None:
            reason = "stalled"     # no representable ascent step left
            break
        it += 1
        k, a = state
        f = fval
        trace.append((it, -f))
        history.append(f)
        eps = min(step * _STEP_GROWTH, cfg.initial_step * _STEP_CAP)
        if len(history) > _STAGNATION_WINDOW and \
                history[-1] - history[-1 - _STAGNATION_WINDOW] < _STAGNATION_GAIN:
            reason = "stagnated"
            break
    residual = float(np.linalg.norm(a + h))
    return RestartOutcome(restart, k, -f, residual, float(gnorm), it, reason,
                          np.array(trace, dtype=float))


def _drive(runner, args, cfg: FlowConfig, accept):
    outcomes = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futs = [pool.submit(runner, *args, cfg, r) for r in range(cfg.restarts)]
            outcomes = [f.result() for f in futs]
    else:
        for r in range(cfg.restarts):
            out = runner(*args, cfg, r)
            outcomes.append(out)
            if cfg.stop_on_witness and accept(out):
                break
    return outcomes


def _collect(outcomes, accept) -> FlowResult:
    winners = [o for o in outcomes if accept(o)]
    best = min(outcomes, key=lambda o: o.overlap)
    chosen = winners[0] if winners else best
    return FlowResult(
        verdict="witness_found" if winners else "no_witness_found",
        best_overlap=float(best.overlap),
        witness=chosen.witness if winners else None,
        trace=[o.trace for o in outcomes],
        iterations_used=sum(o.iterations for o in outcomes),
        restarts_used=len(outcomes),
        residual=float(chosen.residual),
        outcomes=outcomes,
    )


def type1_flow(h, cfg: FlowConfig = FlowConfig()) -> FlowResult:
    """Multistart search for a local K with K H K^dag = -H."""
    hn = _normalized(h)

    def accept(o):
        if o.overlap > -1 + TOL.flow_witness:
            return False
        K = o.witness.full()
        return np.linalg.norm(K @ hn @ K.conj().T + hn) < TOL.flow_witness

    return _collect(_drive(_run_type1, (hn,), cfg, accept), accept)


# --- type-II -------------------------------------------------------------

def _type2_state(u, k1, k2):
    A, B = k1.full(), k2.full()
    x1 = A @ u @ B @ u
    x2 = B @ u @ A @ u
    return x1, x2


def _run_type2(u: np.ndarray, cfg: FlowConfig, restart: int) -> RestartOutcome:
    dim = u.shape[0]
    n = dim.bit_length() - 1
    rng = cfg.rng(restart)
    k1 = LocalUnitary.random(n, rng)
    k2 = LocalUnitary.random(n, rng)
    x1, x2 = _type2_state(u, k1, k2)
    g = float(np.trace(x1).real / dim)
    trace = [(0, -g)]
    eps = cfg.initial_step
    history = [g]
    reason = "max_iters"
    it = 0
    gnorm = np.inf
    eye = np.eye(dim)
    while True:
        residual = float(np.linalg.norm(x1 - eye))      # = ||K1 U K2 - U^dag||
        if residual < cfg.convergence_tol:
            reason = "converged"
            break
        p1 = [-p for p in local_parts((x1 - x1.conj().T) / 2)]
        p2 = [-p for p in local_parts((x2 - x2.conj().T) / 2)]
        g2 = (_parts_norm2(p1, dim) + _parts_norm2(p2, dim)) / dim
        gnorm = np.sqrt(g2)
        if gnorm < cfg.stall_tol:
            reason = "stalled"
            break
        if it >= cfg.max_iters:
            break

        def evaluate(e):
            a1 = k1.step([e * p for p in p1])
            a2 = k2.step([e * p for p in p2])
            y1, y2 = _type2_state(u, a1, a2)
            return float(np.trace(y1).real / dim), (a1, a2, y1, y2)

        step, val, state = _armijo(g, g2, evaluate, cfg, eps)
        if step is None:
            reason = "stalled"
            break
        it += 1
        k1, k2, x1, x2 = state
        g = val
        trace.append((it, -g))
        history.append(g)
        eps = min(step * _STEP_GROWTH, cfg.initial_step * _STEP_CAP)
        if len(history) > _STAGNATION_WINDOW and \
                history[-1] - history[-1 - _STAGNATION_WINDOW] < _STAGNATION_GAIN:
            reason = "stagnated"
            break
    residual = float(np.linalg.norm(x1 - eye))
    return RestartOutcome(restart, (k1, k2), -g, residual, float(gnorm), it, reason,
                          np.array(trace, dtype=float))


def type2_residual(u, k1: LocalUnitary, k2: LocalUnitary) -> float:
    """||K1 U K2 - U^dag||_F."""
    u = as_array(u)
    return float(np.linalg.norm(k1.full() @ u @ k2.full() - u.conj().T))


def type2_flow(u, cfg: FlowConfig = FlowConfig()) -> FlowResult:
    """Multistart search for local K1, K2 with K1 U K2 = U^dag."""
    u = as_array(u)
    if not is_unitary(u):
        raise NonUnitaryInput("type2_flow expects a unitary matrix")

    def accept(o):
        return o.overlap <= -1 + TOL.flow_witness and \
            type2_residual(u, *o.witness) < TOL.type2_witness

    return _collect(_drive(_run_type2, (u,), cfg, accept), accept)


# --- local C-numerical range ---------------------------------------------

def overlap(h, k: LocalUnitary) -> float:
    """tr{K H K^dag H} / ||H||^2."""
    m = as_array(h)
    K = k.full()
    return float(np.sum((K @ m @ K.conj().T) * m.T).real / np.linalg.norm(m) ** 2)


def local_c_range_segment(h, samples: int = 200, cfg: FlowConfig = FlowConfig()):
    """Estimated (min, max) of the real overlap tr{K H K^dag H}/||H||^2 over local K.

    The minimum combines random sampling with the type-I flow; the maximum
    is +1, attained at K = I, and also checked against the samples.
    """
    hn = _normalized(h)
    n = hn.shape[0].bit_length() - 1
    rng = np.random.Generator(np.random.Philox(cfg.rng_seed + 10 ** 6))
    vals = [overlap(hn, LocalUnitary.random(n, rng)) for _ in range(samples)]
    vals.append(overlap(hn, LocalUnitary.identity(n)))
    res = type1_flow(hn, cfg)
    return min(min(vals), res.best_overlap), max(vals)


# --- traces --------------------------------------------------------------

def write_trace_csv(result: FlowResult, path) -> None:
    """CSV with header restart,iteration,overlap; one row per accepted step."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["restart", "iteration", "overlap"])
        for o in result.outcomes:
            for it, ov in o.trace:
                w.writerow([o.restart, int(it), repr(float(ov))])


def with_overrides(cfg: FlowConfig, **kw) -> FlowConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
