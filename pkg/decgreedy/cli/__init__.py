from . import config, formats, generate, render, run  # noqa: F401
from .config import *  # noqa: F401, F403
from .formats import *  # noqa: F401, F403
from .generate import *  # noqa: F401, F403
from .render import *  # noqa: F401, F403
from .run import *  # noqa: F401, F403
