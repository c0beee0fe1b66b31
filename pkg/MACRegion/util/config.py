#
# This loads the configuration
#
import configparser
import os

config = configparser.ConfigParser()

home = os.getenv('HOME') or os.getenv('USERPROFILE') or os.path.expanduser('~')
user_file = os.path.join(home, '.macregion_config.cfg')
default_file = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'macregion_config.cfg'))

# 1. check if the user has a ~/.macregion_config.cfg
if os.path.isfile(user_file):
    config.read(user_file)
elif os.path.isfile(default_file):
    # 2. if not, use the default one
    config.read(default_file)
else:
    # 3. panic
    raise ValueError("no configuration file found")


def thread_count():
    """
    Number of worker threads for Monte Carlo shards.

    ``MACREGION_THREADS`` overrides the ``[parallel] threads`` setting.
    """
    env = os.getenv('MACREGION_THREADS')
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError("MACREGION_THREADS must be an integer, got %r" % env)
    else:
        n = config.getint('parallel', 'threads', fallback=1)
    return max(1, n)
