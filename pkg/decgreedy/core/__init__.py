from . import abstracts, better_abc, errors, settings, types  # noqa: F401
from .abstracts import *  # noqa: F401, F403
from .better_abc import *  # noqa: F401, F403
from .errors import *  # noqa: F401, F403
from .settings import *  # noqa: F401, F403
from .types import *  # noqa: F401, F403
