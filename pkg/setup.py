#!/usr/bin/env python3
"""Setup script for troprank"""

import atexit
from pathlib import Path

from setuptools import setup
from setuptools.command.install import install


class PostInstallCommand(install):
    """Post-installation for installation mode."""

    def run(self):
        install.run(self)

        def print_success_message():
            print("\n🎉 Installation complete!")
            print("\n📋 Quick Start Commands:")
            print("  troprank mul A.txt B.txt        # Min-plus product")
            print("  troprank rank3 A.txt            # Decide factor rank <= 3")
            print("  troprank factor-rank A.txt      # Exact factor rank of a small matrix")
            print("  troprank --help                 # Every verb")
            print("\nMatrix files: 'm n' on the first line, then m rows; use 'inf' for infinity.\n")

        # Register to run after pip finishes
        atexit.register(print_success_message)


this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding="utf-8")

setup(
    name="troprank",
    version="1.0.0",
    author="troprank contributors",
    description=(
        "Exact tropical (min-plus) matrix factorization: products, tropical rank, "
        "factor rank <= 3 decision, exhaustive oracle and hardness gadgets."
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
        "Environment :: Console",
    ],
    python_requires=">=3.8",
    package_dir={"": "src"},
    py_modules=[
        "trop_core",
        "constraints",
        "oracle",
        "rank3",
        "reductions",
        "counterexamples",
        "troprank_cli",
    ],
    entry_points={
        "console_scripts": [
            "troprank=troprank_cli:main",
        ],
    },
    cmdclass={
        "install": PostInstallCommand,
    },
    install_requires=[],  # Exact arithmetic comes from fractions
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "hypothesis>=6.0.0",
            "black>=23.0.0",
            "flake8>=6.0.0",
            "bandit>=1.7.0",
        ],
    },
    keywords=(
        "tropical-algebra min-plus tropical-matrix factor-rank barvinok-rank "
        "tropical-rank matrix-factorization set-splitting np-hardness exact-arithmetic"
    ),
)
