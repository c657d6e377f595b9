# This file makes the 'handlers' directory a Python package.