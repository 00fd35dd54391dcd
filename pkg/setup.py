from setuptools import find_packages, setup

# Reading requirements from 'requirements.txt'
with open("requirements.txt", "r") as f:
    requirements = [line.strip() for line in f.readlines() if line.strip() and not line.startswith("#")]

setup(
    name="memkin",
    version="0.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=requirements,
    package_data={"memkin": ["settings/*.json"]},
    include_package_data=True,
    entry_points={"console_scripts": ["memkin=memkin.cli:main"]},
    python_requires=">=3.9",
    description="Master equation and kinetic Monte Carlo for stochastic memristor networks",
    license="MIT",
    keywords="memristor kinetic-monte-carlo master-equation",
)
