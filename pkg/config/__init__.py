# Copyright (c) 2026 Bivex
#
# Author: Bivex
# Available for contact via email: support@b-b.top
# For up-to-date contact information:
# https://github.com/bivex
#
# Created: 2026-10-12T09:14:02
# Last Updated: 2026-10-12T09:14:02
#
# Licensed under the MIT License.
# Commercial licensing available upon request.

# Config package: documented defaults and run-configuration validation
