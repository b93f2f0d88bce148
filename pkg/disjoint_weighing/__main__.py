import sys

from disjoint_weighing.cli import main

sys.exit(main())
