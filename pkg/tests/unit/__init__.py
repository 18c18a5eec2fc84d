# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT
