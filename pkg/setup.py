#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import find_packages, setup

setup(
    name="peulab",
    version="1.0.0",
    description="Egalitarian social value and sequential choice under imprecise probability",
    packages=find_packages(exclude=("tests", "tests.*")),
    python_requires=">=3.9",
    install_requires=[
        "pydantic==2.0.*",
        "pydantic-settings==2.0.*",
        "numpy==1.24.*",
        "pyyaml==6.0.*",
    ],
    extras_require={
        "dev": ["pytest==7.4.*", "black==23.9.*", "flake8==6.1.*"],
    },
    entry_points={
        "console_scripts": ["peulab = peulab.main:main"],
    },
)
