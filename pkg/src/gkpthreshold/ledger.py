"""Variance bookkeeping through the two-stage (x then y) GKP correction.

All quantities are coefficients of the squeezed-oscillator variance and stay
exact in Q(sqrt 5). Each stage is one optical SUM(1) between the data mode and
a GKP ancilla:

* x stage: data is the SUM control, the ancilla ``|+>`` the target. Data picks
  up the control noise vector, the ancilla peak the target noise vector, and
  the ancilla's y error flows back into the data y quadrature.
* y stage: roles swap. Data is the target, the ancilla ``|0>`` the control, and
  the ancilla's x error flows back into the data x quadrature.

A correction replaces the data error in the measured quadrature by the
(broadened) ancilla peak.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .core import SQRT5, QuadraticSurd, VarianceVector, as_surd
from .gates import sum_noise_vectors

__all__ = [
    "LedgerTrace",
    "run_single_mode_ledger",
    "run_mirrored_ledger",
    "sigma_x_squared",
    "sigma_y_squared",
    "GOLDEN",
]

# (sqrt5 + 1)/2, the combined x-stage noise of one SUM(1) plus one peak
GOLDEN = (SQRT5 + 1) / 2


@dataclass(frozen=True)
class LedgerTrace:
    input: VarianceVector
    after_sum_x: VarianceVector
    peak_x: VarianceVector
    after_correct_x: VarianceVector
    after_sum_y: VarianceVector
    peak_y: VarianceVector
    final: VarianceVector

    def stages(self) -> dict[str, VarianceVector]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def sigma_x_squared(self) -> QuadraticSurd:
        """Variance seen by the x syndrome: data error plus ancilla peak."""
        return self.after_sum_x.x_coeff + self.peak_x.x_coeff

    @property
    def sigma_y_squared(self) -> QuadraticSurd:
        return self.after_sum_y.y_coeff + self.peak_y.y_coeff

    def swapped(self) -> LedgerTrace:
        return LedgerTrace(**{k: v.swapped() for k, v in self.stages().items()})

    def to_json(self) -> dict:
        out = {k: v.to_json() for k, v in self.stages().items()}
        out["sigma_x_squared"] = self.sigma_x_squared.to_json()
        out["sigma_y_squared"] = self.sigma_y_squared.to_json()
        return out


def run_single_mode_ledger(e_in: VarianceVector, delta_peak=1) -> LedgerTrace:
    """Propagate a computation error ``(a, b)`` through x- then y-correction.

    ``delta_peak`` is the bare GKP peak variance in the same units; the
    default of 1 means the GKP ancillas are squeezed like every other
    oscillator.

    >>> t = run_single_mode_ledger(VarianceVector(2, 2))
    >>> [round(c, 2) for c in t.final.to_floats()]
    [2.79, 1.17]
    """
    if not isinstance(e_in, VarianceVector):
        e_in = VarianceVector(*e_in)
    delta = as_surd(delta_peak)
    if delta < 0:
        raise ValueError(f"delta_peak must be >= 0, got {delta}")
    bare_peak = VarianceVector(delta, delta)
    control, target = sum_noise_vectors()

    # x stage: data = control, ancilla |+> = target
    e1 = e_in + control
    peak_x = bare_peak + target
    e2 = VarianceVector(peak_x.x_coeff, e1.y_coeff + peak_x.y_coeff)

    # y stage: ancilla |0> = control, data = target
    e3 = e2 + target
    peak_y = bare_peak + control
    final = VarianceVector(e3.x_coeff + peak_y.x_coeff, peak_y.y_coeff)

    return LedgerTrace(e_in, e1, peak_x, e2, e3, peak_y, final)


def run_mirrored_ledger(e_in: VarianceVector, delta_peak=1) -> LedgerTrace:
    """Same pipeline with the y correction performed first.

    The two correction schemes are mirror images under ``x <-> y``, so the
    trace is the ordinary ledger of the swapped input, swapped back. Stage
    names keep their execution order: ``after_sum_x`` is the state after the
    first SUM, which here measures y.
    """
    if not isinstance(e_in, VarianceVector):
        e_in = VarianceVector(*e_in)
    return run_single_mode_ledger(e_in.swapped(), delta_peak).swapped()


def sigma_x_squared(a) -> QuadraticSurd:
    """``a + (sqrt5 + 1)/2``."""
    a = as_surd(a)
    if a < 0:
        raise ValueError(f"a must be >= 0, got {a}")
    return a + GOLDEN


def sigma_y_squared(b) -> QuadraticSurd:
    """``b + sqrt5 + 1``."""
    b = as_surd(b)
    if b < 0:
        raise ValueError(f"b must be >= 0, got {b}")
    return b + SQRT5 + 1
