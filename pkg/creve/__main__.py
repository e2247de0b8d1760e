import sys

from creve.cli import main

sys.exit(main())
