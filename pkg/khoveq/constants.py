# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

# bound on crossings before state enumeration is refused, 2^n * 2^|s| growth
DEFAULT_CROSSING_CAP = 16

# bound on graph edges, 2^|E| edge subsets
DEFAULT_EDGE_CAP = 12

# bound on the total chain dimension handled by the dense oracle path
DEFAULT_DENSE_CAP = 4096

# environment variable holding the default crossing cap of the command line
CAP_ENVVAR = "KHOVEQ_CAP"

# partner slot of every slot of a crossing record (slots counterclockwise,
# slot 0 is the incoming under-strand) for the +1 smoothing, the -1 smoothing
# and for passing straight through the crossing
A_PARTNER = (1, 0, 3, 2)
B_PARTNER = (3, 2, 1, 0)
STRAIGHT = (2, 3, 0, 1)

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_RESOURCE_CAP = 2
EXIT_CHECK_FAILED = 3
EXIT_EVEN_ORDER = 4
