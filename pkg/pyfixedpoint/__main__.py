# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import sys

from .cli import main

sys.exit(main())
