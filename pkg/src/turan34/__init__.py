"""Tools for Turan's (3,4)-problem: 3-graphs, Fon-der-Flaass interpretations,
Kostochka slices, regularity, orientation extraction, exact small extremal
numbers and flag-algebra certificates."""
from __future__ import annotations

from .constructions import *  # noqa: F401,F403
from .extraction import *  # noqa: F401,F403
from .extremal import *  # noqa: F401,F403
from .flags import *  # noqa: F401,F403
from .hypergraph import *  # noqa: F401,F403
from .orgraph import *  # noqa: F401,F403
from .regularity import *  # noqa: F401,F403

__version__ = "0.1.0"
