import sys

from metabench.harness.cli import main

sys.exit(main())
