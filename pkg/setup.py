#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Distribution logic

Note that "python setup.py test" invokes pytest on the package. With appropriately
configured setup.cfg, this will check both xxx_test modules and docstrings.

Copyright 2026 spectranon contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import io
import os
import subprocess
from sys import exit

from setuptools import setup

try:
    from setuptools.command.test import test as TestCommand
except ImportError:  # setuptools >= 72 dropped the test command
    TestCommand = None

## CONFIG
target_version = '1.0.0'


def version_info(target_version):
    is_dev_version = os.environ.get('PYPI') == 'pypitest'
    if is_dev_version:
        p = subprocess.Popen('git describe --tag'.split(), stdout=subprocess.PIPE)
        git_describe = p.communicate()[0].decode().strip()
        release, build, commitish = git_describe.split('-')
        version = "{0}a{1}".format(target_version, build)
    else:
        version = target_version
    return {
        'is_dev_version': is_dev_version,
        'version': version,
        'target_version': target_version
    }


vinfo = version_info(target_version)

with io.open('README.md', 'r', encoding='utf-8') as fh:
    long_description = fh.read()

cmdclass = {}
if TestCommand is not None:
    ## PyTest
    # This is a plug-in for setuptools that will invoke py.test
    # when you run python setup.py test
    class PyTest(TestCommand):
        def finalize_options(self):
            TestCommand.finalize_options(self)
            self.test_args = []
            self.test_suite = True

        def run_tests(self):
            import pytest  # import here, because outside the required eggs aren't loaded yet
            exit(pytest.main(self.test_args))

    cmdclass['test'] = PyTest

## Run setuptools
setup(
    name='spectranon',
    version=vinfo['version'],
    python_requires='>=3.8',
    install_requires=[
        'numpy >= 1.20',
        'scipy >= 1.7',
        'pandas >= 1.5',
        'PyYAML >= 5.1',
        'sortedcontainers < 3',
    ],
    description='Spectral anonymization (P, J and O variants) with utility and privacy evaluation',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Security',
    ],
    keywords='anonymization svd statistical-disclosure-control privacy',
    license="Apache License, Version 2.0",
    packages=["spectranon"],
    include_package_data=True,
    zip_safe=True,
    entry_points={
        'console_scripts': ['spectranon = spectranon.cli:main'],
    },
    tests_require=['pytest', 'hypothesis'],
    extras_require={'test': ['pytest', 'hypothesis']},
    cmdclass=cmdclass,
)
