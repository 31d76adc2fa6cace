import sys

from ndtlab.cli import main

sys.exit(main())
