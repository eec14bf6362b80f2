"""Concrete numerical verification of the three auxiliary inequalities.

Each check evaluates one inequality at explicit parameter values and
returns a report with both sides and the margin.  Binomial arithmetic is
exact (big integers / rationals); only the balanced-strings check is
statistical, since its statement is a proportion over 2^n strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class LemmaCheckReport:
    lemma: str
    params: dict
    lhs: Number
    rhs: Number
    margin: Number  # lhs - rhs; the inequality asserts margin >= 0
    passed: bool
    samples: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def conv(v):
            if isinstance(v, Fraction):
                return {"num": str(v.numerator), "den": str(v.denominator)}
            return v

        return {
            "lemma": self.lemma,
            "params": {k: conv(v) for k, v in self.params.items()},
            "lhs": conv(self.lhs),
            "rhs": conv(self.rhs),
            "margin": conv(self.margin),
            "passed": self.passed,
            "samples": self.samples,
            "extra": {k: conv(v) for k, v in self.extra.items()},
        }


def check_binomial_fraction(
    alpha: Number, eps: Number, k: int, eta: Number, n: int
) -> LemmaCheckReport:
    """C(floor((alpha - eta) n), k) >= (alpha^k - eps) C(n, k), exactly."""
    alpha, eps, eta = Fraction(alpha), Fraction(eps), Fraction(eta)
    if not (0 < alpha <= 1 and eps > 0 and k >= 1 and 0 < eta < alpha and n >= k):
        raise ValueError("parameter constraints violated")
    m = math.floor((alpha - eta) * n)
    lhs = Fraction(math.comb(m, k))
    rhs = (alpha**k - eps) * math.comb(n, k)
    return LemmaCheckReport(
        lemma="binomial-fraction",
        params={"alpha": alpha, "eps": eps, "k": k, "eta": eta, "n": n},
        lhs=lhs,
        rhs=rhs,
        margin=lhs - rhs,
        passed=lhs >= rhs,
        extra={"floor_arg": m},
    )


def first_passing_n(
    alpha: Number, eps: Number, k: int, n_max: int, eta: Optional[Number] = None
) -> Optional[int]:
    """Least n <= n_max where the binomial-fraction inequality holds,
    with the canonical choice eta = eps / (2k) unless overridden.

    This is a scan, not a threshold claim: the inequality need not be
    monotone in n, and the asymptotic statement promises nothing at any
    specific n.
    """
    alpha, eps = Fraction(alpha), Fraction(eps)
    eta = Fraction(eta) if eta is not None else eps / (2 * k)
    if eta >= alpha:
        raise ValueError("eta must be smaller than alpha")
    for n in range(k, n_max + 1):
        if check_binomial_fraction(alpha, eps, k, eta, n).passed:
            return n
    return None


def _window_lengths(n: int) -> tuple[int, int]:
    """Minimal window m = ceil(ln^2 n) and the reduced check range [m, 2m).

    Checking only lengths in [m, 2m) is exact: any longer window splits
    into consecutive chunks with lengths in that range, and the absolute
    deviations add, so a violation at some length >= m forces one in the
    reduced range.
    """
    m = math.ceil(math.log(n) ** 2)
    return m, min(2 * m - 1, n)


def string_violates(bits: Sequence[int], eps: float) -> bool:
    """True iff some window of length >= ceil(ln^2 n) deviates by eps |J|."""
    n = len(bits)
    m, hi = _window_lengths(n)
    arr = np.asarray(bits, dtype=np.int64)
    prefix = np.concatenate([[0], np.cumsum(arr)])
    for length in range(m, hi + 1):
        sums = prefix[length:] - prefix[:-length]
        if np.any(np.abs(sums - length / 2) >= eps * length):
            return True
    return False


def check_locally_balanced(
    n: int,
    eps: float,
    n_samples: int,
    seed: int,
    exhaustive: bool = False,
) -> LemmaCheckReport:
    """Estimate the proportion of strings with an unbalanced long window.

    Monte Carlo over uniform strings (the statement itself is a proportion
    over 2^n strings, so sampling matches it); exhaustive mode enumerates
    all strings for n <= 22.  The report carries the violating fraction
    with a normal-approximation 95% confidence interval.

    Two statistics are reported.  The pass flag follows the statement's
    string-level proportion (strings with any unbalanced long window).  At
    desk-scale n that proportion is near 1 for small eps, because the
    per-window tail bound 2 exp(-2 eps^2 ln^2 n / 3) only becomes small at
    astronomically large n; ``extra["window_fraction"]`` therefore also
    gives the per-window violation rate over the checked lengths, the
    quantity the tail bound actually controls.
    """
    if n < 4 or eps <= 0:
        raise ValueError("need n >= 4 and eps > 0")
    m, hi = _window_lengths(n)

    def batch_violations(bits: np.ndarray) -> tuple[int, int, int]:
        prefix = np.zeros((bits.shape[0], n + 1), dtype=np.int64)
        np.cumsum(bits, axis=1, out=prefix[:, 1:])
        bad = np.zeros(bits.shape[0], dtype=bool)
        cells = bad_cells = 0
        for length in range(m, hi + 1):
            sums = prefix[:, length:] - prefix[:, :-length]
            viol = np.abs(sums - length / 2) >= eps * length
            bad |= np.any(viol, axis=1)
            cells += viol.size
            bad_cells += int(viol.sum())
        return int(bad.sum()), bad_cells, cells

    if exhaustive:
        if n > 22:
            raise ValueError("exhaustive mode supports n <= 22")
        total = 1 << n
        violating = bad_cells = cells = 0
        chunk = 1 << 14
        for start in range(0, total, chunk):
            vals = np.arange(start, min(start + chunk, total), dtype=np.int64)
            bits = (vals[:, None] >> np.arange(n - 1, -1, -1)) & 1
            v, bc, c = batch_violations(bits)
            violating, bad_cells, cells = violating + v, bad_cells + bc, cells + c
        frac = violating / total
        ci = (frac, frac)
        samples = total
    else:
        rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
        violating = bad_cells = cells = 0
        samples = n_samples
        chunk = max(1, (1 << 22) // n)
        remaining = n_samples
        while remaining:
            b = min(chunk, remaining)
            bits = rng.integers(0, 2, size=(b, n), dtype=np.int64)
            v, bc, c = batch_violations(bits)
            violating, bad_cells, cells = violating + v, bad_cells + bc, cells + c
            remaining -= b
        frac = violating / n_samples
        half = 1.96 * math.sqrt(max(frac * (1 - frac), 1e-12) / n_samples)
        ci = (max(0.0, frac - half), min(1.0, frac + half))

    return LemmaCheckReport(
        lemma="locally-balanced",
        params={"n": n, "eps": eps, "min_window": m},
        lhs=frac,
        rhs=eps,
        margin=eps - frac,  # the claim bounds the violating fraction by eps
        passed=frac < eps,
        samples=samples,
        extra={
            "ci_low": ci[0],
            "ci_high": ci[1],
            "violating": violating,
            "window_fraction": bad_cells / cells if cells else 0.0,
        },
    )


def vandermonde_identity_holds(n: int, x: int, y: int) -> bool:
    """Full-range identity: sum_t C(t-1, x) C(n-t, y) == C(n, x+y+1)."""
    lhs = sum(math.comb(t - 1, x) * math.comb(n - t, y) for t in range(1, n + 1))
    return lhs == math.comb(n, x + y + 1)


def check_binomial_average(
    f: Sequence[Number],
    n: int,
    x: int,
    y: int,
    alpha: Number,
    eps: Number,
    eta: Number,
) -> LemmaCheckReport:
    """sum_t f(t) C(t-1, x) C(n-t, y) >= (1-eps) alpha C(n, x+y+1), exactly.

    f is a table indexed 1..n with values in [0, 1].  The window premise
    (|mean_J f - alpha| <= eta on every window of length >= floor(eta n))
    is verified first; a premise failure is flagged but the inequality is
    still evaluated.
    """
    if len(f) != n:
        raise ValueError("f must tabulate exactly n values")
    alpha, eps, eta = Fraction(alpha), Fraction(eps), Fraction(eta)
    table = [Fraction(v) for v in f]
    if any(not 0 <= v <= 1 for v in table):
        raise ValueError("f values must lie in [0, 1]")

    min_len = max(1, math.floor(eta * n))
    prefix = [Fraction(0)]
    for v in table:
        prefix.append(prefix[-1] + v)
    premise_ok = True
    for lo in range(1, n + 1):
        if not premise_ok:
            break
        for hi in range(lo + min_len - 1, n + 1):
            size = hi - lo + 1
            mean = (prefix[hi] - prefix[lo - 1]) / size
            if abs(mean - alpha) > eta:
                premise_ok = False
                break

    t_lo = math.ceil(eta * n)
    t_hi = math.floor((1 - eta) * n)
    lhs = sum(
        table[t - 1] * math.comb(t - 1, x) * math.comb(n - t, y)
        for t in range(max(1, t_lo), t_hi + 1)
    )
    rhs = (1 - eps) * alpha * math.comb(n, x + y + 1)
    return LemmaCheckReport(
        lemma="binomial-average",
        params={"n": n, "x": x, "y": y, "alpha": alpha, "eps": eps, "eta": eta},
        lhs=lhs,
        rhs=rhs,
        margin=lhs - rhs,
        passed=lhs >= rhs,
        extra={"premise_ok": premise_ok, "t_lo": t_lo, "t_hi": t_hi},
    )
