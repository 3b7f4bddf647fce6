import sys

from dtopo.cli import main

sys.exit(main())
