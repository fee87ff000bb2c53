import sys

from genestream.main import main

sys.exit(main())
