import os
from setuptools import setup, find_packages

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))
ROOT = os.path.abspath(os.path.dirname(__file__))

setup(
    name='gaudinlab',
    version='1.0.0',
    packages=find_packages(),
    package_data={'gaudinlab': ['tests/data/*.json'], },
    include_package_data=True,
    zip_safe=False,
    description='A Django app for exact computations with Gaudin models and their commutative algebras.',
    long_description=open(os.path.join(ROOT, 'README.rst')).read(),
    install_requires=["Django>=3.2", "djangorestframework>=3.12", "sympy>=1.8", "numpy>=1.17"],
    extras_require={'test': ["hypothesis>=5.0"]},
    tests_require=["hypothesis>=5.0"],
    classifiers=[
        'Environment :: Console',
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
