"""Log-space representation for quantities that overflow double precision."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

# exp() overflows IEEE doubles just above this exponent
_MAX_LOG = math.log(sys.float_info.max)


@dataclass(frozen=True)
class LogValue:
    """A positive quantity carried as its natural logarithm.

    ``value`` is exp(log_value) when representable and inf otherwise, in
    which case ``overflow`` is set. ``log10`` is provided for reporting.
    """

    log_value: float
    value: float
    overflow: bool

    @classmethod
    def from_log(cls, log_value: float) -> "LogValue":
        lv = float(log_value)
        if lv > _MAX_LOG:
            return cls(log_value=lv, value=math.inf, overflow=True)
        return cls(log_value=lv, value=math.exp(lv), overflow=False)

    @property
    def log10(self) -> float:
        return self.log_value / math.log(10.0)
