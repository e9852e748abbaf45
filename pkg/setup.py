import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="spiral-toolbox",
    version="1.0.0",
    description="Euler, logarithmic and generalized Euler spirals in 3D from curvature and torsion profiles",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",

    install_requires=[
        "numpy",
        "scipy",
        "Qt.py",
        "PySide6",
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": ["spiral-toolbox = spiral_toolbox:main"],
    },
)
