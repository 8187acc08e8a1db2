import os

from setuptools import setup, find_packages

__author__ = "tamedynfw developers"
__copyright__ = "Copyright 2026, IMTEK Simulation, University of Freiburg"
__date__ = "Oct 17, 2026"

module_dir = os.path.dirname(os.path.abspath(__file__))
readme = open(os.path.join(module_dir, 'README.md')).read()


def local_scheme(version):
    """Skip the local version (eg. +xyz of 0.6.1.dev4+gdf99fe2)
    to be able to upload to Test PyPI"""
    return ""


if __name__ == "__main__":
    setup(
        author='tamedynfw developers',
        name='tamedynfw',
        description='Exact finite models of tame dynamical systems as FireWorks tasks',
        long_description=readme,
        long_description_content_type="text/markdown",
        use_scm_version={
            "root": '.',
            "relative_to": __file__,
            "write_to": os.path.join("tamedynfw", "version.py"),
            "fallback_version": "0.0.0",
            "local_scheme": local_scheme},
        packages=find_packages(exclude=['tests', 'tests.*']),
        include_package_data=True,
        python_requires='>=3.8',
        zip_safe=False,
        install_requires=[
            'fireworks>=1.9.5',
            'jinja2>=2.10',
            'ruamel.yaml>=0.16.12',
        ],
        setup_requires=['setuptools_scm'],
        tests_require=['pytest'],
        extras_require={
            'testing': [
                'pytest',
                'hypothesis>=5.0',
            ],
        },
        entry_points={
            'console_scripts': [
                'tamedynfw = tamedynfw.cli:main',
            ],
        },
        license='MIT',
    )
