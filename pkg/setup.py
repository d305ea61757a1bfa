import os
from setuptools import setup, find_packages

PACKAGE_ROOT = os.path.dirname(os.path.realpath(__file__))
README_FILE = open(os.path.join(PACKAGE_ROOT, "README.md"), "r").read()

if __name__ == "__main__":
    setup(
        name="frontlab",
        version="0.0.0",
        description="Cuspidal edges, their ridges, parallel surfaces and dual surfaces. ",
        long_description=README_FILE,
        long_description_content_type="text/markdown",
        license="MIT",
        packages=find_packages(exclude=["tests", "tests.*"]),
        package_data={"frontlab": ["surfaces/*.surf"]},
        install_requires=[
            "torch >=1.10.0",
        ],
        extras_require={
            "test": ["pytest", "hypothesis"],
        },
        entry_points={
            "console_scripts": ["frontlab = frontlab.cli:main"],
        },
    )
