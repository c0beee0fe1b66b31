# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)

from . import errors
from . import schemes
from . import awgn_gap
from . import scheduler
from . import region
