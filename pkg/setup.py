# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.

from pathlib import Path

from setuptools import find_packages, setup

this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="qaw-verify",
    version="0.0.3",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["qaw_verify", "qaw_verify.*"]),
    python_requires=">=3.9",
    install_requires=["numpy", "sympy"],
    extras_require={
        "testing": ["pytest", "pytest-cov"],
    },
    entry_points={"console_scripts": ["qaw=qaw_verify.cli:main"]},
)
