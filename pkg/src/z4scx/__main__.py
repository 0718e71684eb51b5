import sys

from z4scx.cli import main

sys.exit(main())
