# Copyright (c) 2026 Bivex
#
# Author: Bivex
# Available for contact via email: support@b-b.top
# For up-to-date contact information:
# https://github.com/bivex
#
# Created: 2026-10-12T09:14:02
# Last Updated: 2026-10-19T08:40:11
#
# Licensed under the MIT License.
# Commercial licensing available upon request.

"""
namecheck management shim
Runs the command-line interface: python manage.py <command> [options]
"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
