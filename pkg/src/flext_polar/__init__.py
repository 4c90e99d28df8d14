"""FLEXT-Polar - Polar Code SC Decoding and Multicore Pipeline Modeling.

Construction, encoding, successive-cancellation decoding (float and adaptively
quantized), Monte-Carlo link simulation and an architecture model of unrolled
multicore SC decoders. All exports use wildcard imports from individual modules.
"""

from __future__ import annotations

# ruff: noqa: F403
from flext_polar.api import *
from flext_polar.arch_model import *
from flext_polar.cli import *
from flext_polar.constants import *
from flext_polar.exceptions import *
from flext_polar.link_sim import *
from flext_polar.models import *
from flext_polar.polar_core import *
from flext_polar.protocols import *
from flext_polar.quant import *
from flext_polar.sc_decoder import *
from flext_polar.typings import *
from flext_polar.utilities import *

from flext_polar.cli import main as cli_main

# Note: __all__ is constructed dynamically at runtime from imported modules
__all__: list[str] = []

__version__ = "0.9.0"
__author__ = "FLEXT Development Team"
__email__ = "dev@flext.com"
__license__ = "MIT"
