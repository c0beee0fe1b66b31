# -*- coding: utf-8 -*-
#
# MACRegion documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import os
import sys

# The package is imported from the source tree, not from an installation.
sys.path.insert(0, os.path.abspath('..'))

from MACRegion import read

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.viewcode',
              'sphinx.ext.mathjax',
             ]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'MACRegion'
copyright = u'2024, MACRegion authors'

# The short X.Y version and the full version.
release = read('version')
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'MACRegiondoc'
