"""Ring context: which delays, parameters, and mode an operator lives in."""
from enum import Enum

from .errors import ModeError
from .groundfield import RationalFunctionField

RESERVED = ("t", "Dt")


class RingMode(Enum):
    COMMUTATIVE = "Commutative"
    SKEW = "SkewSingleDelay"


def delay_length_name(delay):
    """Name of the length generator of a delay operator: d -> tau, d2 -> tau2."""
    if delay == "d":
        return "tau"
    if delay.startswith("d") and delay[1:].isalnum():
        return "tau" + delay[1:]
    return "tau_" + delay


class OreContext:
    """Generators and mode shared by every element of one operator ring.

    ``time_varying`` says whether coefficients may depend on t.  With one
    delay this selects the skew δ-ring; with two or more it is rejected
    because the multivariate skew fraction field is out of reach.
    """

    def __init__(self, delays=(), params=(), time_varying=False):
        delays = tuple(delays)
        params = tuple(params)
        s = len(delays)
        if time_varying and s >= 2:
            raise ModeError(
                f"time-varying coefficients with {s} delays are not supported "
                "(only one delay, or t-free coefficients)"
            )
        taus = tuple(delay_length_name(d) for d in delays)
        names = RESERVED + delays + taus + params
        if len(set(names)) != len(names):
            raise ValueError(f"clashing generator names: {names}")
        self.delays = delays
        self.params = params
        self.taus = taus
        self.s = s
        self.time_varying = bool(time_varying)
        self.mode = RingMode.SKEW if time_varying and s == 1 else RingMode.COMMUTATIVE
        gnames = ("t",) + taus + params
        self.ground = RationalFunctionField(gnames, 0, range(1, 1 + s))
        # commutative fractions live in Q(delays, t, taus, params)
        self.ext = RationalFunctionField(delays + gnames, s, range(s + 1, 2 * s + 1))
        self._key = (delays, params, self.mode)

    @property
    def skew(self):
        return self.mode is RingMode.SKEW

    def __eq__(self, other):
        return isinstance(other, OreContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (
            f"OreContext(delays={list(self.delays)}, params={list(self.params)}, "
            f"mode={self.mode.value})"
        )

    # shortcuts used all over the tests and the parser
    def t(self):
        from .delta import frac

        return frac(self, self.ground.gen("t"))

    def delta(self, i=0):
        from .delta import DeltaPoly, frac

        return frac(self, DeltaPoly.gen(self, i))

    def scalar(self, x):
        from .delta import frac

        return frac(self, x)
