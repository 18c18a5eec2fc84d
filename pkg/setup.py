#!/usr/bin/python3

# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

from setuptools import setup

setup(use_scm_version={"version_scheme": "no-guess-dev"})
