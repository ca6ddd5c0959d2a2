from . import bridges, digraph, directed, mixed, polar, regular, undirected  # noqa: F401
from .bridges import *  # noqa: F401, F403
from .digraph import *  # noqa: F401, F403
from .directed import *  # noqa: F401, F403
from .mixed import *  # noqa: F401, F403
from .polar import *  # noqa: F401, F403
from .regular import *  # noqa: F401, F403
from .undirected import *  # noqa: F401, F403
