from . import debug, utils  # noqa: F401

from .debug import *  # noqa: F401, F403
from .utils import *  # noqa: F401, F403
