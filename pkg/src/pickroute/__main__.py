import sys
from pickroute.cli import main
sys.exit(main())
