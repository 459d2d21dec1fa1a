import sys

from grovermem.cli import main

sys.exit(main())
