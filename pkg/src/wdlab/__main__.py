""" part of wdlab module: ``python -m wdlab`` """

import sys

from ._cli import main

sys.exit(main())
