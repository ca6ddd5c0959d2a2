import sys

from .init import main
sys.exit(main())
