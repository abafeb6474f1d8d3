from ._version import __version__  # noqa: F401
from .constant import *  # noqa: F401, F403
from .exceptions import *  # noqa: F401, F403
from .gf import field_new  # noqa: F401
from .code import (  # noqa: F401
    analyze_code,
    enumerate_assisting,
    is_locc_assisting,
    linear_code,
    reed_solomon_code,
    repetition_code,
)
from .protocol import run_batch, run_protocol, verify_all, verify_theorem1  # noqa: F401
from .types import *  # noqa: F401, F403
