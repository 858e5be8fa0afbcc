from __future__ import annotations

import importlib.metadata

VERSION = importlib.metadata.version("cayley-cli")
