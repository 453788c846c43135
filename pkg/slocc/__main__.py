"""Entry point for python -m slocc execution"""

import sys

from slocc.main import main

if __name__ == '__main__':
    sys.exit(main())
