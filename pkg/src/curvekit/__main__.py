from curvekit.cli import main
import sys

sys.exit(main())
