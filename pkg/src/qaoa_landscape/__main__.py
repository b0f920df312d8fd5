import sys

from qaoa_landscape.cli import main

sys.exit(main())
