import os
import unittest

from orangecontrib.freeboundary import __file__ as ROOT_FILE




def getRootDir():
    return os.path.dirname(ROOT_FILE)


def getTestDirs(root_dir=None, test_names=("tests",), ignore_dirs=("__pycache__",)):
    """Every ``tests`` package below the add-on root, the root's own first."""
    if root_dir is None:
        root_dir = getRootDir()

    test_dirs = []

    for root, dirs, _ in os.walk(root_dir, topdown=True):
        for test_name in test_names:
            if test_name in dirs:
                dirs.remove(test_name)
                test_dirs.append(os.path.join(root, test_name))

        dirs[:] = [d for d in dirs if d not in ignore_dirs]

    return test_dirs


def suite(loader=None, pattern=None):
    if loader is None:
        loader = unittest.TestLoader()

    if pattern is None:
        pattern = "test*.py"

    test_dirs = getTestDirs()

    # Test module names must be unique across the tests directories.
    return unittest.TestSuite([loader.discover(d, pattern, d) for d in test_dirs])


def load_tests(loader, tests, pattern):
    return suite(loader, pattern)




if __name__ == '__main__':
    unittest.main(defaultTest='suite')
