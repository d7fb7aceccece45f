"""Serrodyne optical-frequency-offset simulation.

Sawtooth drive synthesis (ideal, sampling-limited, bit-accurate DDS),
RF-chain transfer functions, optical spectra with shift-quality metrics,
and PDH offset-lock consequences (spurious lock shifts, dynamic range).
"""

from serrodyne._core import *  # noqa: F401,F403
