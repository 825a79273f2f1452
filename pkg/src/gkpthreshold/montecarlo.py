"""Sampling oracle for the analytic correction probabilities.

Every Gaussian noise source of the x-then-y correction is drawn explicitly,
the syndrome is built with random comb offsets ``alpha (n' + m')`` and
reduced by :func:`~gkpthreshold.gkp.modular_decode`, and a trial fails when
the decoder lands on the wrong comb tooth in either quadrature.

Randomness is counter based: trials are processed in fixed blocks and block
``k`` draws from ``Philox(key=seed + k * 2**64)``. Results are therefore
bit-identical for any number of workers. Normals come from Box-Muller on
53-bit uniforms (no rejection sampling).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .analysis import CZ, Gate, SingleMode, p_corr, p_err
from .gates import sum_noise_vectors
from .gkp import SQRT_PI, modular_decode

__all__ = [
    "BLOCK_SIZE",
    "McConfig",
    "McResult",
    "mc_p_corr",
    "mc_pipeline",
    "block_generator",
]

BLOCK_SIZE = 1 << 16
HALF_WINDOW = SQRT_PI / 2


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo run description.

    ``include_sum_noise`` and ``include_peak_jitter`` switch off the optical
    SUM noise and the GKP peak width; with both off only the computation
    error ``(a, b)`` remains.
    """

    samples: int
    seed: int = 0
    v: float = 6.27e-3
    gate: Gate = field(default_factory=SingleMode)
    include_sum_noise: bool = True
    include_peak_jitter: bool = True
    delta_peak: float = 1.0
    comb_window: int = 100
    alpha: float = SQRT_PI
    workers: int = 1

    def __post_init__(self):
        if not (isinstance(self.samples, (int, np.integer)) and self.samples >= 1):
            raise ValueError(f"samples must be a positive integer, got {self.samples}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.v > 0:
            raise ValueError(f"v must be positive, got {self.v}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def echo(self) -> dict:
        d = asdict(self)
        d["gate"] = {"kind": self.gate.kind, **asdict(self.gate)}
        return d


@dataclass(frozen=True)
class McResult:
    success_count: int
    samples: int
    analytic_p: float
    seed: int
    x_failures: int = 0
    y_failures: int = 0
    # mean squared residual displacement of successful trials, in units of v
    residual_x: float = math.nan
    residual_y: float = math.nan
    config: dict = field(default_factory=dict)

    @property
    def p_hat(self) -> float:
        return self.success_count / self.samples

    @property
    def std_err(self) -> float:
        p = self.p_hat
        return math.sqrt(p * (1 - p) / self.samples)

    @property
    def failure_count(self) -> int:
        return self.samples - self.success_count

    def deviation_sigmas(self) -> float:
        """``|p_hat - analytic_p|`` in binomial standard errors.

        The larger of the empirical and the analytic standard error is used,
        so a run with zero observed failures is still judged sensibly.
        """
        q = self.analytic_p
        se = max(self.std_err, math.sqrt(q * (1 - q) / self.samples))
        diff = abs(self.p_hat - self.analytic_p)
        if se == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / se

    def agrees(self, n_sigma: float = 4.0) -> bool:
        return self.deviation_sigmas() <= n_sigma

    def to_json(self) -> dict:
        return {
            "success_count": self.success_count,
            "failure_count": self.failure_count,
            "samples": self.samples,
            "p_hat": self.p_hat,
            "std_err": self.std_err,
            "analytic_p": self.analytic_p,
            "analytic_p_err": 1.0 - self.analytic_p,
            "deviation_sigmas": self.deviation_sigmas(),
            "x_failures": self.x_failures,
            "y_failures": self.y_failures,
            "residual_x": self.residual_x,
            "residual_y": self.residual_y,
            "seed": self.seed,
            "verdict": "pass" if self.agrees() else "fail",
            "config": self.config,
        }


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) + (int(block) << 64)))


def _normals(gen: np.random.Generator, n: int) -> np.ndarray:
    m = (n + 1) // 2
    u = gen.random(2 * m)
    r = np.sqrt(-2.0 * np.log1p(-u[:m]))
    theta = 2.0 * np.pi * u[m:]
    return np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]


def _blocks(samples: int):
    n_blocks = -(-samples // BLOCK_SIZE)
    for k in range(n_blocks):
        yield k, min(BLOCK_SIZE, samples - k * BLOCK_SIZE)


def _in_window(u, half):
    return (u >= -half) & (u < half)


def _run_blocks(fn, samples: int, workers: int):
    blocks = list(_blocks(samples))
    if workers == 1:
        return [fn(k, n) for k, n in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda kn: fn(*kn), blocks))


def mc_p_corr(sigma: float, cfg: McConfig) -> McResult:
    """Fraction of N(0, sigma^2) draws inside ``[-sqrt(pi)/2, sqrt(pi)/2)``."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")

    def block(k, n):
        z = _normals(block_generator(cfg.seed, k), n)
        return int(np.count_nonzero(_in_window(sigma * z, HALF_WINDOW)))

    hits = sum(_run_blocks(block, cfg.samples, cfg.workers))
    config = {"sigma": sigma, "samples": cfg.samples, "seed": cfg.seed}
    return McResult(hits, cfg.samples, p_corr(sigma), cfg.seed, config=config)


def _stage_scales(cfg: McConfig) -> dict[str, float]:
    """Standard deviations (absolute) of every noise source of one corrected gate."""
    control, target = sum_noise_vectors()
    s = 1.0 if cfg.include_sum_noise else 0.0
    d = cfg.delta_peak if cfg.include_peak_jitter else 0.0
    v = cfg.v

    def sd(coeff):
        return math.sqrt(coeff * v)

    return {
        "sum1_data_x": s * sd(float(control.x_coeff)),
        "sum1_data_y": s * sd(float(control.y_coeff)),
        "sum1_anc_x": s * sd(float(target.x_coeff)),
        "sum1_anc_y": s * sd(float(target.y_coeff)),
        "peak1": sd(d),
        "sum2_data_x": s * sd(float(target.x_coeff)),
        "sum2_data_y": s * sd(float(target.y_coeff)),
        "sum2_anc_x": s * sd(float(control.x_coeff)),
        "sum2_anc_y": s * sd(float(control.y_coeff)),
        "peak2": sd(d),
    }


def _corrected_gate(gen, n, a, b, sc, cfg):
    """One x-then-y correction of ``n`` trials.

    Returns success masks, final residual displacements and the total
    (data + ancilla) error each syndrome carried.
    """
    v = cfg.v
    # computation error x is drawn first so it matches mc_p_corr's stream
    comp_x = math.sqrt(a * v) * _normals(gen, n)
    comp_y = math.sqrt(b * v) * _normals(gen, n)
    z = {name: _normals(gen, n) for name in (
        "sum1_data_x", "sum1_data_y", "peak1_x", "peak1_y", "sum1_anc_x", "sum1_anc_y",
        "sum2_data_x", "sum2_data_y", "peak2_x", "peak2_y", "sum2_anc_x", "sum2_anc_y",
    )}
    w = cfg.comb_window
    offsets = gen.integers(-w, w + 1, size=(4, n))

    alpha = cfg.alpha
    beta = math.pi / alpha

    # x stage: SUM(1) with the data as control, then homodyne x of |+> ancilla
    data_x = comp_x + sc["sum1_data_x"] * z["sum1_data_x"]
    data_y = comp_y + sc["sum1_data_y"] * z["sum1_data_y"]
    anc_x = sc["peak1"] * z["peak1_x"] + sc["sum1_anc_x"] * z["sum1_anc_x"]
    anc_y = sc["peak1"] * z["peak1_y"] + sc["sum1_anc_y"] * z["sum1_anc_y"]
    total_x = data_x + anc_x
    syndrome_x = alpha * (offsets[0] + offsets[1]) + total_x
    # residual after correction is -anc_x plus a whole period on failure
    data_x = data_x - modular_decode(syndrome_x, alpha)
    ok_x = np.rint((data_x + anc_x) / alpha) == 0
    # ancilla y error flows back into the data
    data_y = data_y + anc_y

    # y stage: SUM(1) with the |0> ancilla as control, then homodyne y
    data_x = data_x + sc["sum2_data_x"] * z["sum2_data_x"]
    data_y = data_y + sc["sum2_data_y"] * z["sum2_data_y"]
    anc_x = sc["peak2"] * z["peak2_x"] + sc["sum2_anc_x"] * z["sum2_anc_x"]
    anc_y = sc["peak2"] * z["peak2_y"] + sc["sum2_anc_y"] * z["sum2_anc_y"]
    total_y = data_y + anc_y
    syndrome_y = beta * (offsets[2] + offsets[3]) + total_y
    data_y = data_y - modular_decode(syndrome_y, beta)
    ok_y = np.rint((data_y + anc_y) / beta) == 0
    data_x = data_x + anc_x

    return {"ok_x": ok_x, "ok_y": ok_y, "res_x": data_x, "res_y": data_y,
            "total_x": total_x, "total_y": total_y}


def _analytic(cfg: McConfig) -> float:
    if cfg.include_sum_noise and cfg.include_peak_jitter and cfg.delta_peak == 1.0:
        return 1.0 - p_err(cfg.gate, cfg.v)
    # generic case: sum the variances the sampler actually uses
    sc = _stage_scales(cfg)

    def one(a, b):
        vx = a * cfg.v + sc["sum1_data_x"] ** 2 + sc["peak1"] ** 2 + sc["sum1_anc_x"] ** 2
        vy = (b * cfg.v + sc["sum1_data_y"] ** 2 + sc["peak1"] ** 2 + sc["sum1_anc_y"] ** 2
              + sc["sum2_data_y"] ** 2 + sc["peak2"] ** 2 + sc["sum2_anc_y"] ** 2)
        px = p_corr(math.sqrt(vx)) if vx > 0 else 1.0
        py = p_corr(math.sqrt(vy)) if vy > 0 else 1.0
        return px * py

    g = cfg.gate
    if isinstance(g, CZ):
        return one(g.arm_a, g.arm_b) ** 2
    return one(g.a, g.b)


def mc_pipeline(cfg: McConfig) -> McResult:
    """Simulate the full correction of one gate and count successful trials.

    A CZ is simulated as two independently corrected single-mode gates and
    succeeds only if both do.
    """
    sc = _stage_scales(cfg)
    g = cfg.gate
    arms = [(g.arm_a, g.arm_b)] * 2 if isinstance(g, CZ) else [(g.a, g.b)]

    def block(k, n):
        gen = block_generator(cfg.seed, k)
        ok = np.ones(n, dtype=bool)
        fx = fy = n_both = 0
        sx = sy = 0.0
        for a, b in arms:
            out = _corrected_gate(gen, n, a, b, sc, cfg)
            ok_x, ok_y, rx, ry = out["ok_x"], out["ok_y"], out["res_x"], out["res_y"]
            fx += int(np.count_nonzero(~ok_x))
            fy += int(np.count_nonzero(~ok_y))
            both = ok_x & ok_y
            sx += float(np.sum(rx[both] ** 2))
            sy += float(np.sum(ry[both] ** 2))
            n_both += int(np.count_nonzero(both))
            ok &= both
        return int(np.count_nonzero(ok)), fx, fy, sx, sy, n_both

    parts = _run_blocks(block, cfg.samples, cfg.workers)
    hits = sum(p[0] for p in parts)
    fx = sum(p[1] for p in parts)
    fy = sum(p[2] for p in parts)
    n_ok = sum(p[5] for p in parts)
    res_x = sum(p[3] for p in parts) / (n_ok * cfg.v) if n_ok else math.nan
    res_y = sum(p[4] for p in parts) / (n_ok * cfg.v) if n_ok else math.nan
    return McResult(
        success_count=hits,
        samples=cfg.samples,
        analytic_p=_analytic(cfg),
        seed=cfg.seed,
        x_failures=fx,
        y_failures=fy,
        residual_x=res_x,
        residual_y=res_y,
        config=cfg.echo(),
    )
