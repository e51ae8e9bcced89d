"""Exponent estimation and prefactor bookkeeping for the rescaling loops.

Two decay ansatzes are supported: a pure power law (amplitude contracts by
L^alpha per window) and a power law times a logarithm (per-window ratio
L^(1/2) * (n/(n-1))^gamma).  Prefactor products are accumulated in natural-log
space so thousands of iterations neither overflow nor underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBase, ZeroNorm

TRACE_HEADER = "n,alpha,beta,gamma,alpha_bar,beta_bar,A_n,B_n,kappa_n,nu_n"


@dataclass(frozen=True)
class BetaRule:
    """How the spreading exponent beta is set after each measured alpha.

    kind "fixed": beta = value, every iteration.
    kind "unscaled_diffusivity": beta = (1 - m*alpha)/2 with m = value, the
    unique choice that keeps the diffusion prefactor of the rescaled equation
    at one.
    """

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in ("fixed", "unscaled_diffusivity"):
            raise ValueError(f"unknown beta rule {self.kind!r}")


def beta_from_rule(rule: BetaRule, alpha_n: float) -> float:
    if rule.kind == "fixed":
        return rule.value
    return (1.0 - rule.value * alpha_n) / 2.0


@dataclass
class ScalingHistory:
    """Per-iteration exponent and prefactor sequences for one experiment.

    Sequences are 1-based in the math (entry k of ``alpha`` is the exponent
    measured at the end of window k-1) and stored densely from index 0.
    ``alpha2``/``A2_seq`` hold the second component of a two-species system
    and stay empty for scalar models.  ``S_log`` carries the running sum
    sum_{k=2..n} gamma_k * ln(k/(k-1)) used by the logarithmic-decay mode.
    """

    L: float
    alpha: list = field(default_factory=list)
    beta: list = field(default_factory=list)
    gamma: list = field(default_factory=list)
    alpha2: list = field(default_factory=list)
    alpha_bar: list = field(default_factory=list)
    beta_bar: list = field(default_factory=list)
    alpha2_bar: list = field(default_factory=list)
    A_seq: list = field(default_factory=list)
    B_seq: list = field(default_factory=list)
    A2_seq: list = field(default_factory=list)
    S_log: float = 0.0

    def __post_init__(self):
        if not self.L > 1.0:
            raise ValueError(f"renormalization factor L must be > 1, got {self.L}")

    @property
    def n(self) -> int:
        """Number of completed iterations."""
        return len(self.beta)

    def record_power(self, alpha: float, beta: float, alpha2: float | None = None):
        """Append one power-law iteration and its running means."""
        self.alpha.append(alpha)
        self.beta.append(beta)
        self.alpha_bar.append(float(np.mean(self.alpha)))
        self.beta_bar.append(float(np.mean(self.beta)))
        if alpha2 is not None:
            self.alpha2.append(alpha2)
            self.alpha2_bar.append(float(np.mean(self.alpha2)))

    def record_log(self, gamma: float, alpha2: float, beta: float):
        """Append one logarithmic-decay iteration (two-component systems)."""
        n = self.n + 1
        self.gamma.append(gamma)
        self.beta.append(beta)
        self.beta_bar.append(float(np.mean(self.beta)))
        self.alpha2.append(alpha2)
        self.alpha2_bar.append(float(np.mean(self.alpha2)))
        if n >= 2:
            self.S_log += gamma * math.log(n / (n - 1))


def estimate_alpha(norm_start: float, norm_end: float, L: float) -> float:
    """The unique alpha with L^alpha = norm_start / norm_end."""
    if norm_start <= 0.0 or norm_end <= 0.0:
        raise ZeroNorm(f"norms must be positive, got ({norm_start}, {norm_end})")
    return (math.log(norm_start) - math.log(norm_end)) / math.log(L)


def estimate_gamma(norm_start: float, norm_end: float, L: float, n: int) -> float:
    """Logarithmic-decay exponent from one window's sup-norm ratio.

    n counts completed windows (1-based).  The first window has no previous
    logarithm to compare against, so it falls back to power-law inversion;
    later windows solve L^(1/2) * (n/(n-1))^gamma = ratio.
    """
    if norm_start <= 0.0 or norm_end <= 0.0:
        raise ZeroNorm(f"norms must be positive, got ({norm_start}, {norm_end})")
    log_ratio = math.log(norm_start) - math.log(norm_end)
    if n == 1:
        return log_ratio / math.log(L)
    base = math.log(n / (n - 1))
    if base == 0.0:
        raise DegenerateBase(f"log base n/(n-1) degenerate for n={n}")
    return (log_ratio - 0.5 * math.log(L)) / base


def update_prefactors_power(h: ScalingHistory) -> tuple[float, float]:
    """Append A_n = L^(n(alpha_n - alpha_bar_n)), B_n analogous; return both."""
    n = h.n
    lnL = math.log(h.L)
    A = math.exp(n * (h.alpha[-1] - h.alpha_bar[-1]) * lnL)
    B = math.exp(n * (h.beta[-1] - h.beta_bar[-1]) * lnL)
    h.A_seq.append(A)
    h.B_seq.append(B)
    return A, B


def update_prefactor_log(h: ScalingHistory) -> float:
    """Append the log-mode u prefactor A_{u,n}; valid once gamma_2 is recorded.

    The defining product L^(1/2-gamma_1) * prod_{k=2..n} (k/(k-1))^(gamma_n-gamma_k)
    telescopes to exp[(1/2-gamma_1) ln L + gamma_n ln n - S_log], which is how
    it is evaluated (S_log is maintained incrementally by the history).
    """
    n = len(h.gamma)
    lnL = math.log(h.L)
    if n < 2:
        A = math.exp((0.5 - h.gamma[0]) * lnL)
    else:
        A = math.exp((0.5 - h.gamma[0]) * lnL + h.gamma[-1] * math.log(n) - h.S_log)
    h.A_seq.append(A)
    return A


def prefactor_log_direct(gamma: list, L: float) -> float:
    """Brute-force product form of the log-mode prefactor (oracle for tests)."""
    n = len(gamma)
    acc = (0.5 - gamma[0]) * math.log(L)
    for k in range(2, n + 1):
        acc += (gamma[n - 1] - gamma[k - 1]) * math.log(k / (k - 1))
    return math.exp(acc)


def update_prefactor_power2(h: ScalingHistory) -> float:
    """Append the second-component power-law prefactor L^(n(alpha2_n - mean))."""
    n = len(h.alpha2)
    A2 = math.exp(n * (h.alpha2[-1] - h.alpha2_bar[-1]) * math.log(h.L))
    h.A2_seq.append(A2)
    return A2


def converged(seq, tol: float = 1e-4, window: int = 20) -> bool:
    """True when the last `window` consecutive changes are all below tol."""
    if len(seq) < window + 1:
        return False
    tail = np.asarray(seq[-(window + 1):])
    return bool(np.all(np.abs(np.diff(tail)) < tol))


def _cell(v) -> str:
    return "" if v is None else f"{v:.15g}"


def write_trace(path, rows) -> None:
    """CSV trace, one row per iteration; empty cells where a column does not apply.

    Each row is a mapping with keys matching the fixed header; missing keys
    become empty cells.
    """
    cols = TRACE_HEADER.split(",")
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        for row in rows:
            fh.write(",".join(
                str(row["n"]) if c == "n" else _cell(row.get(c)) for c in cols
            ) + "\n")
