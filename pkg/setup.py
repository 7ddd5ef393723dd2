#!/usr/bin/env python

import os
import sys

from setuptools import setup, find_packages




def readRequirements(*filenames):
    """Requirement lines of ``filenames``, without comments or duplicates.

    Returns
    -------
    list
        Sorted requirement specifiers.
    """

    root = os.path.dirname(__file__)
    file_paths = [os.path.join(root, filename) for filename in filenames]

    requirements = set()

    for file_path in file_paths:
        with open(file_path) as f:
            requirements.update(line.partition('#')[0].strip() for line in f)

    return sorted(requirements - {""})




def include_documentation(local_dir, install_dir):
    global DATA_FILES
    if 'bdist_wheel' in sys.argv and not os.path.exists(local_dir):
        print("Directory '{}' does not exist. "
              "Please build documentation before running bdist_wheel."
              .format(os.path.abspath(local_dir)))
        sys.exit(0)

    doc_files = []
    for dirpath, dirs, files in os.walk(local_dir):
        doc_files.append((dirpath.replace(local_dir, install_dir),
                          [os.path.join(dirpath, f) for f in files]))
    DATA_FILES.extend(doc_files)




NAME = "Orange3-FreeBoundary"

VERSION = "0.1.0"

DESCRIPTION = "Simulate and classify two competing species spreading through a habitat with a moving front."

README_FILE = os.path.join(os.path.dirname(__file__), 'README.md')
LONG_DESCRIPTION = open(README_FILE).read()

LONG_DESCRIPTION_TYPE = "text/markdown"

LICENSE = "GPLv3+"

PYTHON_REQUIRES = ">=3.8"

PACKAGES = find_packages()

PACKAGE_DATA = {}

DATA_FILES = []

INSTALL_REQUIRES = readRequirements("requirements.txt")

EXTRAS_REQUIRE = {}

ENTRY_POINTS = {
    # Entry points that marks this package as an orange add-on. If set, addon will
    # be shown in the add-ons manager even if not published on PyPi.
    'orange3.addon': (
        'freeboundary = orangecontrib.freeboundary',
    ),

    # Entry point used to specify packages containing widgets.
    'orange.widgets': (
        # Syntax: category name = path.to.package.containing.widgets
        'Free Boundary = orangecontrib.freeboundary.widgets',
    ),

    # Register widget help
    "orange.canvas.help": (
        'html-index = orangecontrib.freeboundary.widgets:WIDGET_HELP_PATH',),

    'console_scripts': (
        'freeboundary = orangecontrib.freeboundary.cli:main',
    ),
}

KEYWORDS = (
    "orange3 add-on",
    "orange3-freeboundary",
    "free boundary",
    "competition",
    "reaction-diffusion",
)

CLASSIFIERS = [
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Education',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
    'Programming Language :: Python :: 3 :: Only',
    'Topic :: Scientific/Engineering :: Mathematics',
]

NAMESPACE_PACKAGES = ["orangecontrib"]

TEST_SUITE = "orangecontrib.freeboundary.tests.suite"




if __name__ == '__main__':

    include_documentation('doc/build/htmlhelp', 'help/orange3-freeboundary')

    setup(
        name=NAME,
        version=VERSION,
        description=DESCRIPTION,
        long_description=LONG_DESCRIPTION,
        long_description_content_type=LONG_DESCRIPTION_TYPE,
        license=LICENSE,
        python_requires=PYTHON_REQUIRES,
        packages=PACKAGES,
        package_data=PACKAGE_DATA,
        data_files=DATA_FILES,
        install_requires=INSTALL_REQUIRES,
        extras_require=EXTRAS_REQUIRE,
        entry_points=ENTRY_POINTS,
        keywords=KEYWORDS,
        classifiers=CLASSIFIERS,
        namespace_packages=NAMESPACE_PACKAGES,
        test_suite=TEST_SUITE,
        include_package_data=True,
        zip_safe=False,
    )
