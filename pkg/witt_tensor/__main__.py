import sys

from witt_tensor.main import main

sys.exit(main())
