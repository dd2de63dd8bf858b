from chordlab.cli import main
import sys

if __name__ == "__main__":
    # Same entry point as `python -m chordlab`
    sys.exit(main())
