import sys

from softdress.cli_io.cli import main

sys.exit(main())
