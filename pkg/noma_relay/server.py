#!/usr/bin/env python
"""noma-relay MCP server - FastMCP tools over the outage, rate and figure engine."""

from fastmcp import FastMCP

# Create FastMCP instance
mcp = FastMCP("noma-relay")

# Import configuration
from .config import (  # noqa: E402
    DEBUG,
    DEFAULT_CHUNK_SIZE,
    DEFAULT_MC_SAMPLES,
    DEFAULT_SEED,
    NOMA_THREADS,
    setup_logging,
)

# Auto-import all tools
from . import tools  # noqa: E402,F401


def main() -> None:
    """Run the noma-relay MCP server."""
    # Set up logging
    logger = setup_logging()

    # Log startup information
    logger.info("Starting noma-relay MCP Server")
    logger.info(f"Monte Carlo: {DEFAULT_MC_SAMPLES} samples, seed {DEFAULT_SEED}")
    logger.info(f"Chunk size: {DEFAULT_CHUNK_SIZE}, workers: {NOMA_THREADS}")
    logger.info(f"Debug mode: {DEBUG}")

    # Run the server
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
