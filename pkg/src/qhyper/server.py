"""qhyper workbench MCP server."""

from fastmcp import FastMCP

from .config import SERVER_INSTRUCTIONS, SERVER_NAME
from .tools import (
    register_algebra_tools,
    register_law_tools,
    register_logic_tools,
    register_topos_tools,
)

# Create the FastMCP server instance
mcp = FastMCP(name=SERVER_NAME, instructions=SERVER_INSTRUCTIONS)

# Register all tools (must happen after mcp instance creation)
register_algebra_tools(mcp)
register_law_tools(mcp)
register_topos_tools(mcp)
register_logic_tools(mcp)


def run_server() -> None:
    """Run the MCP server."""
    mcp.run()
