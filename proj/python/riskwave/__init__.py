from ._core import *  # noqa: F401,F403
from ._core import __version__, RiskwaveError  # noqa: F401
