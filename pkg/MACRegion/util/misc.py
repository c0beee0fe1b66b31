# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)

import os
import tempfile


def atomic_write(path, text):
    """
    Write ``text`` to ``path`` through a temporary file in the same
    directory, renamed into place once complete. On failure the destination
    is untouched and the temporary file removed.

    :param path: destination file
    :param text: file content
    :type text: str
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.' + os.path.basename(path) + '.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', newline='') as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def wilson_halfwidth(errors, trials, z):
    """
    Half width of the Wilson score interval for ``errors`` successes in
    ``trials`` trials at normal quantile ``z``.
    """
    if trials <= 0:
        return 0.
    n = float(trials)
    p = errors / n
    return z / (1. + z * z / n) * ((p * (1. - p) / n + z * z / (4. * n * n)) ** .5)
