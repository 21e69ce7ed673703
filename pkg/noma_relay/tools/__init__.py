"""MCP tools; every public module here registers its tools with the server on import."""

import importlib
import pkgutil

for module in pkgutil.iter_modules(__path__):
    if not module.name.startswith("_"):
        importlib.import_module(f".{module.name}", package=__name__)
