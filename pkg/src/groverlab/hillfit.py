"""Bell-curve and register-trend models with a deterministic damped fitter.

The robustness curves are summarized by a modified Hill function
``W(x) = height * half_width^steepness / (|x-center|^steepness + half_width^steepness)``
and the per-size fit parameters are in turn modelled over the register size by
a saturating exponential or an offset logistic.  The solver is a plain
Levenberg-Marquardt loop with a fixed multi-start grid and no randomness, so
identical inputs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple, Union

import numpy as np


class ModelId(Enum):
    HILL = "hill"
    SAT_EXP = "sat-exp"
    LOGISTIC_OFFSET = "logistic-offset"


@dataclass(frozen=True)
class HillParams:
    """Peak height, half-width at half height, steepness exponent, centre."""

    height: float
    half_width: float
    steepness: float
    center: float

    def __post_init__(self) -> None:
        for name in ("height", "half_width", "steepness"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if not math.isfinite(self.center):
            raise ValueError("center must be finite")


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _hill_pieces(x: np.ndarray, params: HillParams):
    """Stable building blocks: z = n*log(|x-c|/k), S = 1/(1+e^z), T*S = e^z/(1+e^z)."""
    dist = np.abs(x - params.center)
    with np.errstate(divide="ignore"):
        z = params.steepness * np.log(dist / params.half_width)
    s_low = _sigmoid(-z)
    s_high = _sigmoid(z)
    return dist, z, s_low, s_high


def hill_eval(x: Union[float, np.ndarray], params: HillParams) -> Union[float, np.ndarray]:
    """Evaluate the modified Hill bell curve; exact at the centre and shoulders."""
    arr = np.asarray(x, dtype=np.float64)
    _, _, s_low, _ = _hill_pieces(np.atleast_1d(arr), params)
    value = params.height * s_low
    if arr.ndim == 0:
        return float(value[0])
    return value


def hill_gradient(
    x: Union[float, np.ndarray], params: HillParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Partials of the bell curve w.r.t. (height, half_width, steepness, center).

    At x == center the steepness and centre partials are taken as zero (their
    two-sided limits).
    """
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    dist, z, s_low, s_high = _hill_pieces(arr, params)
    core = params.height * s_low * s_high  # height * S^2 * (dist/width)^steepness
    d_height = s_low.copy()
    d_width = core * params.steepness / params.half_width
    at_centre = dist == 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        d_steep = np.where(at_centre, 0.0, -core * z / params.steepness)
        d_centre = np.where(at_centre, 0.0, core * params.steepness / (arr - params.center))
    scalar = np.asarray(x).ndim == 0
    if scalar:
        return (float(d_height[0]), float(d_width[0]), float(d_steep[0]), float(d_centre[0]))
    return d_height, d_width, d_steep, d_centre


@dataclass(frozen=True)
class FitResult:
    """Outcome of a least-squares fit of one model to one data series."""

    model_id: ModelId
    values: Tuple[float, ...]
    names: Tuple[str, ...]
    sigma: float
    sse: float
    converged: bool
    iterations: int

    @property
    def hill(self) -> HillParams:
        if self.model_id is not ModelId.HILL:
            raise ValueError("not a bell-curve fit")
        return HillParams(*self.values)

    def predict(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        arr = np.asarray(x, dtype=np.float64)
        flat = np.atleast_1d(arr)
        if self.model_id is ModelId.HILL:
            out = np.atleast_1d(hill_eval(flat, self.hill))
        elif self.model_id is ModelId.SAT_EXP:
            a, b, tau = self.values
            with np.errstate(under="ignore"):
                out = a + b * np.exp(-flat / tau)
        else:
            u, v, d = self.values
            out = _sigmoid((flat + u) / v) + d
        if arr.ndim == 0:
            return float(out[0])
        return out

    def to_dict(self) -> Dict[str, object]:
        doc: Dict[str, object] = {"model_id": self.model_id.value}
        for name, value in zip(self.names, self.values):
            doc[name] = value
        doc["sigma"] = self.sigma
        doc["sse"] = self.sse
        doc["converged"] = self.converged
        doc["iterations"] = self.iterations
        return doc


def _cholesky_solve(a: np.ndarray, rhs: np.ndarray):
    """Solve SPD a @ x = rhs by hand; returns None when a is not positive."""
    n = rhs.size
    lower = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            acc = a[i, j] - np.dot(lower[i, :j], lower[j, :j])
            if i == j:
                if acc <= 0.0:
                    return None
                lower[i, i] = math.sqrt(acc)
            else:
                lower[i, j] = acc / lower[j, j]
    y = np.zeros(n)
    for i in range(n):
        y[i] = (rhs[i] - np.dot(lower[i, :i], y[:i])) / lower[i, i]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - np.dot(lower[i + 1 :, i], x[i + 1 :])) / lower[i, i]
    return x


def _levenberg_marquardt(eval_fn, u0, y, max_iter=500, rel_tol=1e-12):
    """Damped least squares on internal coordinates u.

    eval_fn(u) -> (prediction, jacobian); damping scales by 10 on rejection
    and by 1/10 on acceptance; convergence is a relative SSE drop below
    rel_tol on an accepted step.
    """
    u = np.asarray(u0, dtype=np.float64).copy()
    f, jac = eval_fn(u)
    resid = f - y
    sse = float(resid @ resid)
    lam = 1e-3
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        normal = jac.T @ jac
        gradient = jac.T @ resid
        damp = np.diag(normal).copy()
        damp[damp < 1e-300] = 1.0
        step = _cholesky_solve(normal + lam * np.diag(damp), -gradient)
        if step is None:
            lam *= 10.0
            if lam > 1e200:
                break
            continue
        u_try = u + step
        try:
            f_try, jac_try = eval_fn(u_try)
        except (OverflowError, ValueError):
            # wild step pushed a parameter outside its valid domain: reject it
            lam *= 10.0
            if lam > 1e200:
                break
            continue
        resid_try = f_try - y
        sse_try = float(resid_try @ resid_try)
        if math.isfinite(sse_try) and sse_try <= sse:
            drop = (sse - sse_try) / sse if sse > 0.0 else 0.0
            u, f, jac, resid, sse = u_try, f_try, jac_try, resid_try, sse_try
            lam = max(lam / 10.0, 1e-14)
            if drop < rel_tol:
                converged = True
                break
        else:
            lam *= 10.0
            if lam > 1e200:
                break
    return u, sse, iterations, converged


def _hill_eval_internal(x: np.ndarray, y: np.ndarray):
    def eval_fn(u):
        params = HillParams(math.exp(u[0]), math.exp(u[1]), math.exp(u[2]), u[3])
        dist, z, s_low, s_high = _hill_pieces(x, params)
        f = params.height * s_low
        core = params.height * s_low * s_high
        jac = np.empty((x.size, 4))
        jac[:, 0] = f                      # d/d(log height)
        jac[:, 1] = core * params.steepness  # d/d(log half_width)
        at_centre = dist == 0.0
        with np.errstate(invalid="ignore"):
            jac[:, 2] = np.where(at_centre, 0.0, -core * z)  # d/d(log steepness)
            jac[:, 3] = np.where(
                at_centre, 0.0, core * params.steepness / (x - params.center)
            )
        return f, jac

    return eval_fn


def _half_width_guess(x: np.ndarray, y: np.ndarray, peak: int) -> float:
    half = y[peak] / 2.0
    spans = []
    for j in range(peak + 1, y.size):
        if y[j] < half:
            spans.append(x[j] - x[peak])
            break
    for j in range(peak - 1, -1, -1):
        if y[j] < half:
            spans.append(x[peak] - x[j])
            break
    if spans:
        width = float(sum(spans) / len(spans))
    else:
        width = float(x[-1] - x[0]) / 4.0
    step = float(x[-1] - x[0]) / max(1, x.size - 1)
    return max(width, step)


_START_STEEPNESS = (2.0, 4.0, 8.0, 16.0)


def fit_hill(samples) -> FitResult:
    """Fit the bell curve to a cross-section; multi-start over steepness.

    ``samples`` is a SampleSet (its sweep variable is used) or an (x, y) pair.
    """
    if hasattr(samples, "sweep_values"):
        x = np.asarray(samples.sweep_values(), dtype=np.float64)
        y = np.asarray(samples.p, dtype=np.float64)
    else:
        x, y = samples
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
    if x.size != y.size or x.ndim != 1:
        raise ValueError("x and y must be 1-D arrays of equal length")
    if x.size < 16:
        raise ValueError("need at least 16 samples spanning the peak")
    peak = int(np.argmax(y))
    height0 = max(float(y[peak]), 1e-12)
    center0 = float(x[peak])
    width0 = _half_width_guess(x, y, peak)
    eval_fn = _hill_eval_internal(x, y)
    best = None
    for steep0 in _START_STEEPNESS:
        u0 = (math.log(height0), math.log(width0), math.log(steep0), center0)
        u, sse, iterations, converged = _levenberg_marquardt(eval_fn, u0, y)
        if best is None or sse < best[1]:
            best = (u, sse, iterations, converged)
    u, sse, iterations, converged = best
    values = (math.exp(u[0]), math.exp(u[1]), math.exp(u[2]), float(u[3]))
    sigma = math.sqrt(sse / (x.size - 4))
    return FitResult(
        ModelId.HILL, values, ("b", "k", "n", "c"), sigma, sse, converged, iterations
    )


def _sat_exp_eval(x: np.ndarray):
    def eval_fn(u):
        a, b, log_tau = u
        tau = math.exp(log_tau)
        # subnormal tau overflows x/tau; treat the trial step as invalid
        if tau < 1e-300:
            raise OverflowError("decay constant underflowed")
        with np.errstate(under="ignore"):
            decay = np.exp(-x / tau)
        f = a + b * decay
        jac = np.empty((x.size, 3))
        jac[:, 0] = 1.0
        jac[:, 1] = decay
        jac[:, 2] = b * decay * x / tau  # d/d(log tau)
        return f, jac

    return eval_fn


def _logistic_eval(x: np.ndarray):
    def eval_fn(u):
        shift, scale, offset = u
        if abs(scale) < 1e-12:
            scale = 1e-12 if scale >= 0 else -1e-12
        z = (x + shift) / scale
        s = _sigmoid(z)
        f = s + offset
        bell = s * (1.0 - s)
        jac = np.empty((x.size, 3))
        jac[:, 0] = bell / scale
        jac[:, 1] = -bell * z / scale
        jac[:, 2] = 1.0
        return f, jac

    return eval_fn


def fit_secondary(data: Sequence[Tuple[float, float]], model_id: ModelId) -> FitResult:
    """Fit a register-size trend model to (size, value) pairs."""
    pts = [(float(a), float(b)) for a, b in data]
    if len(pts) < 6:
        raise ValueError("need at least 6 points")
    x = np.array([a for a, _ in pts])
    y = np.array([b for _, b in pts])
    if not np.all(np.diff(x) > 0):
        raise ValueError("sizes must be strictly increasing")
    span = float(x[-1] - x[0])
    if model_id is ModelId.SAT_EXP:
        u0 = (float(y[-1]), float(y[0] - y[-1]), math.log(span / 3.0))
        u, sse, iterations, converged = _levenberg_marquardt(_sat_exp_eval(x), u0, y)
        values = (float(u[0]), float(u[1]), math.exp(u[2]))
        names = ("A", "B", "tau")
    elif model_id is ModelId.LOGISTIC_OFFSET:
        mid = len(pts) // 2
        level = min(max(float(y[mid]), 0.01), 0.99)
        scale0 = span / 5.0
        shift0 = scale0 * math.log(level / (1.0 - level)) - float(x[mid])
        u0 = (shift0, scale0, 0.0)
        u, sse, iterations, converged = _levenberg_marquardt(_logistic_eval(x), u0, y)
        values = (float(u[0]), float(u[1]), float(u[2]))
        names = ("u", "v", "d")
    else:
        raise ValueError("secondary fits use sat-exp or logistic-offset")
    sigma = math.sqrt(sse / (x.size - 3))
    return FitResult(model_id, values, names, sigma, sse, converged, iterations)


def extrapolate(fit: FitResult, n: float) -> float:
    """Model value at register size n."""
    return float(fit.predict(float(n)))
