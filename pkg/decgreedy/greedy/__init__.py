from . import algorithms, antimatroid, instance, policies  # noqa: F401
from .algorithms import *  # noqa: F401, F403
from .antimatroid import *  # noqa: F401, F403
from .instance import *  # noqa: F401, F403
from .policies import *  # noqa: F401, F403
