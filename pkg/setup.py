"""Setup script for hyperprover"""
try:
    from setuptools import setup, find_packages
except ImportError as exc:
    raise RuntimeError("setuptools is required to install hyperprover") from exc


setup(
    # Core metadata - others inherited from pyproject.toml
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,
    package_data={
        "hyperprover": [
            "data/*.json",
        ],
    },
)
