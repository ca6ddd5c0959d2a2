from . import enums, geometry, quality, results  # noqa: F401
from .enums import *  # noqa: F401, F403
from .geometry import *  # noqa: F401, F403
from .quality import *  # noqa: F401, F403
from .results import *  # noqa: F401, F403
