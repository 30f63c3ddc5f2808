import sys

from su3cd.cli import main

sys.exit(main())
