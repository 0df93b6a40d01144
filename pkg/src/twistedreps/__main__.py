import sys

from twistedreps.cli import main

sys.exit(main())
