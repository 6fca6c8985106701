from setuptools import find_packages, setup

setup(
    name='clausen-hierarchy',
    version='0.1.0',
    description='Jacobi theta seeds, Clausen-type towers and their verification suites',
    packages=find_packages(include=['config', 'src', 'src.*']),
    python_requires='>=3.9',
    install_requires=[
        'numpy>=1.24',
        'scipy>=1.10',
        'python-dotenv>=1.0',
        'pandas>=2.0',
        'pydantic>=2.5',
    ],
    extras_require={
        'dev': ['pytest>=8.0', 'hypothesis>=6.90', 'black', 'flake8'],
        'docs': ['mkdocs', 'mkdocs-material', 'mkdocstrings'],
    },
    entry_points={
        'console_scripts': ['clausen-hierarchy=src.cli.commands:run'],
    },
)
