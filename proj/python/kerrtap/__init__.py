"""BB84 translucent-eavesdropping toolkit.

Thin wrapper over the compiled core: probe-circuit state vectors,
closed-form attack statistics, channel information metrics and the seeded
protocol simulator.
"""

from kerrtap._core import *  # noqa: F401,F403
from kerrtap._core import __version__  # noqa: F401
