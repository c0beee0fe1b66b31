# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
import os


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as f:
        return f.read().strip()
__version__ = read('version')

from . import core
from . import util
from . import simulation
from . import io
from . import examples
from .core import schemes
from .core.awgn_gap import GapParams, PamSpec
from .core.scheduler import Scenario, RatePoint, synth_schedule, validate_schedule
from .core.region import region, compare


def tests():
    """run the test suite with pytest"""
    import pytest
    return pytest.main([os.path.join(os.path.dirname(__file__), 'testing')])
