#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import os.path
import sys

import setuptools

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "visarea"))
from version import VERSION  # isort:skip noqa


with open("README.md", encoding="utf8") as f:
    readme = f.read()

with open("LICENSE") as f:
    license_text = f.read()

with open("requirements.txt") as f:
    reqs = f.read()

DISTNAME = "visarea"
DESCRIPTION = (
    "visarea: visibility polygons of simple polygons in linear time "
    "and constrained workspace"
)
LONG_DESCRIPTION = readme
AUTHOR = "visarea contributors"
LICENSE = license_text
REQUIREMENTS = reqs.strip().split("\n")
DEFAULT_EXCLUSION = ["test", "test.*", "examples", "examples.*"]


if __name__ == "__main__":
    setuptools.setup(
        name=DISTNAME,
        install_requires=REQUIREMENTS,
        packages=setuptools.find_packages(exclude=DEFAULT_EXCLUSION),
        version=VERSION,
        description=DESCRIPTION,
        long_description=LONG_DESCRIPTION,
        long_description_content_type="text/markdown",
        author=AUTHOR,
        license=LICENSE,
        python_requires=">=3.7",
        setup_requires=["pytest-runner"],
        tests_require=[
            "pytest-cov",
            "pytest-mock",
            "pytest",
            "hypothesis>=5.0",
            "mock",
        ],
        entry_points={"console_scripts": ["visarea=visarea.run:main"]},
        include_package_data=True,
    )
