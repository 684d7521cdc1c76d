"""Condition-number sweep over opening angles with peak refinement.

The sweep evaluates ``kappa(omega)``, the spectral condition number of the
Gauss-Legendre Nystrom matrix on a model curve, on a uniform angle grid.
It keeps strict local maxima that exceed ``peak_factor`` times the grid
median and refines each by golden-section search until the condition
number reaches ``kappa_threshold`` (*confirmed*) or the bracket is
narrower than ``width_floor`` (*suspected*).

Angles are handled in units of pi throughout (``omega_over_pi``).
"""

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._validation import check_finite, check_int
from .contour import make_curve
from .errors import InvalidArgumentError, SingularMatrixError
from .nystrom import condition_of

GOLDEN = (3.0 - math.sqrt(5.0)) / 2.0
SWEEP_CURVES = ("l1", "l2")
PRESETS = {"paper": 0.001, "desk": 0.005}


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters; angles and widths are in units of pi."""

    curve: str = "l1"
    lo: float = 0.1
    hi: float = 1.9
    step: float = 0.001
    n: int = 128
    d: int = 16
    kappa_threshold: float = 1e16
    width_floor: float = 1e-6
    max_rounds: int = 40
    peak_factor: float = 10.0
    workers: int = 1

    def __post_init__(self):
        if self.curve not in SWEEP_CURVES:
            raise InvalidArgumentError(f"curve must be one of {SWEEP_CURVES}, got {self.curve!r}")
        lo, hi = check_finite(self.lo, "lo"), check_finite(self.hi, "hi")
        if not 0.0 < lo < hi < 2.0:
            raise InvalidArgumentError(f"need 0 < lo < hi < 2 (units of pi), got [{lo}, {hi}]")
        if check_finite(self.step, "step") <= 0 or self.step > hi - lo:
            raise InvalidArgumentError(f"step must be in (0, hi - lo], got {self.step}")
        n = check_int(self.n, "n", min_value=1)
        q = {"l1": 1, "l2": 2}[self.curve]
        if n % q:
            raise InvalidArgumentError(f"n={n} must be a multiple of {q} for curve {self.curve}")
        check_int(self.d, "d", min_value=1, max_value=64)
        check_int(self.max_rounds, "max_rounds", min_value=1)
        check_int(self.workers, "workers", min_value=1)
        for name in ("kappa_threshold", "width_floor", "peak_factor"):
            if check_finite(getattr(self, name), name) <= 0:
                raise InvalidArgumentError(f"{name} must be positive")

    @classmethod
    def preset(cls, name, **overrides):
        """``paper`` (step 0.001 pi) or ``desk`` (step 0.005 pi)."""
        try:
            step = PRESETS[name]
        except KeyError:
            raise InvalidArgumentError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
        return cls(**{"step": step, **overrides})

    def grid(self):
        count = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        return [round(self.lo + k * self.step, 12) for k in range(count + 1)]


@dataclass
class Peak:
    omega_over_pi: float
    kappa_peak: float
    status: str
    bracket: tuple
    trace: list = field(default_factory=list)


@dataclass
class SweepReport:
    config: SweepConfig
    samples: list
    peaks: list
    wall_time: float = 0.0

    @property
    def critical_angles(self):
        return [p.omega_over_pi for p in self.peaks]

    def samples_csv(self):
        lines = ["omega_over_pi,kappa"]
        lines += [f"{w:.17g},{k:.17g}" for w, k in self.samples]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "config": asdict(self.config),
            "samples": [{"omega_over_pi": w, "kappa": _json_float(k)} for w, k in self.samples],
            "peaks": [
                {
                    "omega_over_pi": p.omega_over_pi,
                    "kappa_peak": _json_float(p.kappa_peak),
                    "status": p.status,
                    "bracket": list(p.bracket),
                    "trace": [list(t) for t in p.trace],
                }
                for p in self.peaks
            ],
            "wall_time": self.wall_time,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _json_float(x):
    return x if math.isfinite(x) else "inf"


def kappa_at(curve, omega, n, d):
    """Condition number of the Nystrom matrix on ``curve(omega)``; ``inf`` if singular."""
    try:
        return condition_of(make_curve(curve, omega), n, d)
    except SingularMatrixError:
        return math.inf


def _kappa_pi(args):
    curve, w, n, d = args
    return kappa_at(curve, w * math.pi, n, d)


def find_peaks(omegas, kappas, factor):
    """Indices of strict interior local maxima with ``kappa >= factor * median``."""
    k = np.asarray(kappas, dtype=float)
    level = factor * float(np.median(k))
    return [i for i in range(1, len(k) - 1) if k[i] > k[i - 1] and k[i] > k[i + 1] and k[i] >= level]


def refine_peak(config, bracket, kappas):
    """Golden-section maximization of kappa on the bracket ``(a, b, c)``.

    ``kappas`` are the known values at the three points. Returns the peak
    and the list of evaluated ``(omega_over_pi, kappa)`` pairs.
    """
    (a, b, c), (ka, kb, kc) = bracket, kappas
    evaluated = []
    trace = [(a, c, b, kb)]
    status = "confirmed" if kb >= config.kappa_threshold else None
    rounds = 0
    while status is None:
        if c - a < config.width_floor or rounds >= config.max_rounds:
            status = "suspected"
            break
        if c - b > b - a:
            x = b + GOLDEN * (c - b)
        else:
            x = b - GOLDEN * (b - a)
        kx = _kappa_pi((config.curve, x, config.n, config.d))
        evaluated.append((x, kx))
        if kx > kb:
            if x > b:
                a, ka = b, kb
            else:
                c, kc = b, kb
            b, kb = x, kx
        elif x > b:
            c, kc = x, kx
        else:
            a, ka = x, kx
        rounds += 1
        trace.append((a, c, b, kb))
        if kb >= config.kappa_threshold:
            status = "confirmed"
    return Peak(b, kb, status, (a, c), trace), evaluated


def _refine_task(args):
    return refine_peak(*args)


def _map(fn, items, workers):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_sweep(config):
    """Run the sweep described by ``config`` and return a :class:`SweepReport`.

    The result does not depend on ``config.workers``: every grid point and
    every peak refinement is computed independently and collected in angle
    order.
    """
    start = time.perf_counter()
    grid = config.grid()
    kappas = _map(_kappa_pi, [(config.curve, w, config.n, config.d) for w in grid], config.workers)
    idx = find_peaks(grid, kappas, config.peak_factor)
    tasks = [
        (config, (grid[i - 1], grid[i], grid[i + 1]), (kappas[i - 1], kappas[i], kappas[i + 1]))
        for i in idx
    ]
    results = _map(_refine_task, tasks, config.workers)
    samples = dict(zip(grid, kappas))
    peaks = []
    for peak, evaluated in results:
        peaks.append(peak)
        samples.update(evaluated)
    return SweepReport(
        config=config,
        samples=sorted(samples.items()),
        peaks=peaks,
        wall_time=time.perf_counter() - start,
    )
