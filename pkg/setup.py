import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

install_requires = [
    'numpy>=1.18',
    'tqdm>=4.40',
]

setuptools.setup(
    name="contractionpy",
    version="0.1.0",
    license='BSD-3-Clause',
    description="Regular elements, Green's relations and ranks of contraction semigroups on a finite chain",
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords="semigroups transformations contractions rank",
    packages=setuptools.find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Natural Language :: English",
    ],
    python_requires='>=3.8',
    install_requires=install_requires,
    entry_points={
        'console_scripts': ['contractionpy=contractionpy.commands:main'],
    },
)
