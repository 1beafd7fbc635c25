"""Allow running the command line front end as python -m mzsim."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
