from setuptools import setup

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name='sl2prism',
    version='0.1.0',
    packages=['sl2prism', 'sl2prism.lib', 'sl2prism.test'],
    scripts=[],
    description='Regular prism tilings and geodesic ball packings in SL(2,R)~',
    long_description=long_description,
    long_description_content_type="text/markdown",
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'sl2prism = sl2prism.main:main',
            ],
        },
    install_requires=['numpy',
                      'scipy>=1.4',
                      'pyparsing>=3.0',
                      'path>=16',
                      ],
    package_dir={'sl2prism': 'sl2prism'},
    test_suite="sl2prism.test",
)
