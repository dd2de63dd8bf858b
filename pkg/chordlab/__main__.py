import sys

from chordlab.cli import main

sys.exit(main())
