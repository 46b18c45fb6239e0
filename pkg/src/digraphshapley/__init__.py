from .errors import *
from .coalition import *
from .digraph import *
from .game import *
from .permutations import *
from .frontend import *
