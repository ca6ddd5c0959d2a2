from . import budget, curves, cycles, hulls, subsets  # noqa: F401
from .budget import *  # noqa: F401, F403
from .curves import *  # noqa: F401, F403
from .cycles import *  # noqa: F401, F403
from .hulls import *  # noqa: F401, F403
from .subsets import *  # noqa: F401, F403
