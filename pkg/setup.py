# -*- coding: utf-8 -*-

import os
from setuptools import setup

readme_file = 'README.md'


def readme():
    with open(readme_file, encoding="utf8") as f:
        return f.read()


def description():
    with open(readme_file, encoding="utf8") as f:
        started = False
        lines = []
        for line in f:
            if not started:
                if line.startswith('# Description'):
                    started = True
            else:
                if line.startswith('#'):
                    break
                else:
                    lines.append(line)
    return ''.join(lines).strip('\n')


def getFiles(path):
    return [f'{path}/{x}' for x in os.listdir(path)]


setup(
    name='PyESS',
    version='1.0',
    description=description(),
    long_description=readme(),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Artificial Intelligence'
    ],
    keywords=('explainability XAI technique selection multi-criteria decision Pareto '
              'compliance governance'),
    license='MIT',
    packages=['PyESS', 'PyESS.core'],
    package_data={'PyESS': ['data/catalogs/*.json', 'data/scenarios/*.json']},
    scripts=getFiles('scripts'),
    entry_points={'console_scripts': ['ess=PyESS.cli:main']},
    install_requires=[
        'numpy>=1.10',
        'scipy>=1.2',
        'pandas>=1.0.2',
        'colorlog>=3.0.1',
        'multiprocess>=0.70',
        'boltons>=20.1.0',
        'tabulate>=0.8.3'
    ],
    zip_safe=False
)
