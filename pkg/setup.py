from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

# pylint: disable=line-too-long
setup(
    name="polyplate",
    version="0.0.1",
    description="Polygonal discrete Kirchhoff-Mindlin elements for Reissner-Mindlin plates, with a verification harness.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords="finite-elements polygonal-elements plates python",
    packages=find_packages(exclude=("tests", "tests.*", "configs", "configs.*", "examples", "examples.*")),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.6",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.6",
    install_requires=["numpy", "scipy", "addict", "matplotlib", "wandb"],
    zip_safe=False,
)
