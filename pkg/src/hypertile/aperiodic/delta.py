"""The Delta sequence: level exponents with an irrational mean log_q(lambda)."""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from ..errors import ValidationError
from ..grouptool.growth import exponent_collisions

MAX_EXP = 16


@dataclass
class DeltaSequence:
    alpha: object  # float, or Fraction for hand-built rational examples
    q: int
    values: dict  # level index -> Delta_i

    def __getitem__(self, i):
        return self.values[i]

    def __contains__(self, i):
        return i in self.values

    @property
    def indices(self):
        return sorted(self.values)

    def as_list(self):
        return [self.values[i] for i in self.indices]

    def to_dict(self):
        return {"alpha": float(self.alpha), "q": self.q, "values": {str(i): v for i, v in sorted(self.values.items())}}


def _floor_mult(i, alpha):
    if isinstance(alpha, (Fraction, int)):
        return math.floor(i * Fraction(alpha))
    if isinstance(alpha, Decimal):
        return int((alpha * i).to_integral_value(rounding="ROUND_FLOOR"))
    return math.floor(i * alpha)


def beatty_differences(alpha, indices):
    """``floor((i+1) alpha) - floor(i alpha)`` for each ``i``; exact for Fractions and Decimals."""
    return {i: _floor_mult(i + 1, alpha) - _floor_mult(i, alpha) for i in indices}


def log_ratio(lam, q, digits=40):
    """``log_q(lam)`` as a high-precision Decimal."""
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(repr(float(lam))).ln() / Decimal(q).ln()


def delta_sequence(lam, q, indices, acc=None, max_exp=MAX_EXP):
    """Beatty differences of ``alpha = log_q(lam)``; refuses when ``alpha`` is visibly rational.

    Rationality is tested exactly (``lam**b == q**a``) when ``lam`` is an
    integer or the acceptor is given, and numerically otherwise.
    """
    if lam <= 1:
        raise ValidationError("delta_sequence needs lambda > 1")
    if q not in (2, 3):
        raise ValidationError("q must be 2 or 3")
    exact = acc is not None or abs(lam - round(lam)) < 1e-9
    if exact:
        hits = exponent_collisions(lam, q, acc, max_exp)
    else:
        a = math.log(lam) / math.log(q)
        hits = [
            (x, y) for y in range(1, max_exp + 1) for x in range(1, max_exp + 1) if abs(y * a - x) < 1e-12
        ]
    if hits:
        raise ValidationError(f"log_{q}({lam}) is rational: lambda^b = q^a for (a, b) in {hits}")
    alpha = log_ratio(lam, q)
    vals = beatty_differences(alpha, list(indices))
    return DeltaSequence(float(alpha), q, vals)


def check_nonperiodic(ds, max_period, window, start=None):
    """True iff no ``p <= max_period`` has ``Delta_{i+p} == Delta_i`` across the window."""
    if window < 10 * max_period:
        raise ValidationError("window must be at least 10 times the largest period")
    start = ds.indices[0] if start is None else start
    idx = range(start, start + window)
    missing = [i for i in idx if i not in ds]
    if missing:
        raise ValidationError(f"sequence does not cover the window (missing {missing[0]})")
    for p in range(1, max_period + 1):
        if all(ds[i + p] == ds[i] for i in range(start, start + window - p)):
            return False
    return True


def window_mean(ds, start, width):
    return Fraction(sum(ds[i] for i in range(start, start + width)), width)
