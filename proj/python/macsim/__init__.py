"""Analytic models and discrete-event simulation of five medium-access
techniques (pure/slotted ALOHA, CSMA/CA, TDMA, FDMA)."""

try:
    from ._macsim import *  # noqa: F401,F403  (installed package layout)
    from ._macsim import __version__  # noqa: F401
except ImportError:  # in-build layout: extension staged next to this file
    from _macsim import *  # noqa: F401,F403
    from _macsim import __version__  # noqa: F401
