# setup.py
from setuptools import setup, find_packages

setup(
    name="hnlat",
    version="0.3.0",
    packages=find_packages(exclude=["tests"]),
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        'Click',
        'python-dotenv',
        'rich',  # For terminal tables and log output
        'tqdm',  # For progress bars during `hnlat check`
        'sympy>=1.13',  # DomainMatrix elimination and Smith invariants
    ],
    entry_points='''
        [console_scripts]
        hnlat=hnlat.cli:cli
    ''',
)
