"""Private multiprecision context.

The package never touches the global :data:`mpmath.mp`; all high precision
values live in :data:`MP`, whose working precision defaults to 50 digits and
can be overridden with the ``POLYCENTERS_DPS`` environment variable.
"""

from __future__ import annotations

import os
from fractions import Fraction

from mpmath.ctx_mp import MPContext

DEFAULT_DPS = int(os.environ.get("POLYCENTERS_DPS", "50"))

MP = MPContext()
MP.dps = DEFAULT_DPS


def mpq(value) -> "MP.mpf":
    """Convert an int, Fraction or float to an :data:`MP` number."""
    if isinstance(value, Fraction):
        return MP.mpf(value.numerator) / value.denominator
    return MP.mpf(value)
