#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
from setuptools import setup


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as f:
        return f.read()

# Version number
version = read('MACRegion/version').strip()

setup(name = 'MACRegion',
      version = version,
      author = read('AUTHORS.txt'),
      description = ("Rate regions of the two-user Gaussian multiple access channel with uncoded PAM"),
      license = "BSD 3-clause",
      keywords = "information-theory multiple-access superposition pam rate-region",
      packages = ['MACRegion', 'MACRegion.core', 'MACRegion.util', 'MACRegion.simulation', 'MACRegion.io',
                  'MACRegion.examples', 'MACRegion.testing'],
      package_dir={'MACRegion': 'MACRegion'},
      package_data = {'MACRegion': ['macregion_config.cfg', 'version']},
      long_description=read('README.md'),
      python_requires='>=3.8',
      install_requires=['numpy >= 1.17', 'scipy >= 1.4'],
      extras_require = {
        'tests': ['pytest'],
        'docs': ['Sphinx'],
      },
      entry_points = {
        'console_scripts': ['macregion = MACRegion.cli:main'],
      },
      classifiers=[
      "License :: OSI Approved :: BSD License"],
      )
