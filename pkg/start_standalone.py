import sys

import spiral_toolbox

sys.exit(spiral_toolbox.main())
