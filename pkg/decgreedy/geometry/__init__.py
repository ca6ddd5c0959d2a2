from . import curve3d, hull2, hull3, polygon2d, polyhedron3d  # noqa: F401
from .curve3d import *  # noqa: F401, F403
from .hull2 import *  # noqa: F401, F403
from .hull3 import *  # noqa: F401, F403
from .polygon2d import *  # noqa: F401, F403
from .polyhedron3d import *  # noqa: F401, F403
