import sys

from rootfacets.cli import main

sys.exit(main())
