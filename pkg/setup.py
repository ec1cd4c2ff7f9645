from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="gaptrack",
    version="1.0.0",
    author="gaptrack developers",
    description="Supporting tracks for train cars with gaps: builders, verifier, exact oracle and lower-bound experiments",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        # CLI interface
        "click>=8.1.0",
        "rich>=13.0.0",

        # Data validation
        "pydantic>=2.0.0",

        # Numerics and seeded randomness
        "numpy>=1.22.0",

        # Environment and configuration
        "python-dotenv>=1.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
        ],
    },
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "gaptrack=gaptrack.cli:run",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
)
