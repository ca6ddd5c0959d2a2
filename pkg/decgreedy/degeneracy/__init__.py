from . import cores, graph  # noqa: F401
from .cores import *  # noqa: F401, F403
from .graph import *  # noqa: F401, F403
