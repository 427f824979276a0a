from setuptools import setup, find_packages

setup(
    name="fincat-engine",
    version="0.1.0",
    packages=find_packages(exclude=("tests",)),
    install_requires=[
        "numpy==2.1.3",
        "pandas==2.2.3",
        "networkx==3.4.2",
        "python-dotenv==1.0.1",
        "pytest==8.3.3",
        "hypothesis==6.115.0",
    ],
    entry_points={
        "console_scripts": [
            "fincat=src.main:main",
        ],
    },
)
