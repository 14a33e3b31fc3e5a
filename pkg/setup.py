"""Setup configuration for the Kemeny aggregation toolkit."""
from setuptools import setup, find_packages

setup(
    name="kemenyqa",
    version="0.1.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={"kemenyqa": ["schemas/*.json"]},
    python_requires=">=3.9",
    install_requires=[
        "rich>=10.0.0",
        "python-dotenv>=1.0.0",
        "numpy>=1.22",
        "jsonschema>=4.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "kemenyqa=kemenyqa.cli:main",
        ],
    },
)
