"""Tripos-to-topos and omega-valued universe tools."""

from typing import Annotated, Any, Dict, Optional, Union

import anyio
from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from .. import commands
from ..config import DEFAULT_SEED
from ..serialization import resolve_omega

OmegaSpec = Annotated[Union[str, Dict[str, Any]], "Builtin name (2, mo2, o6, boolean:K, chain:N) or inline algebra"]


def register_topos_tools(mcp: FastMCP) -> None:
    """Register topos and universe tools with the MCP server.

    Args:
        mcp: The FastMCP server instance to register tools with
    """

    @mcp.tool(
        annotations={
            "title": "Build Tripos-to-Topos Category",
            "description": "Enumerate PERs, functional relations and compositions, then check the category laws",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def build_topos(
        omega: OmegaSpec,
        cap: Annotated[Optional[int], "Largest base carrier size (default from config)"] = None,
        seed: Annotated[int, "Seed for sampled law checks"] = DEFAULT_SEED,
    ) -> Dict[str, Any]:
        """Summarize objects, hom-class counts and global elements with a law report."""
        try:
            def _build() -> Dict[str, Any]:
                model = commands.resolve_model(omega=omega)
                return commands.topos_build(model, cap, seed).to_dict()

            return await anyio.to_thread.run_sync(_build)
        except Exception as e:
            raise ToolError(f"Failed to build topos: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Count Omega-Valued Universe",
            "description": "Closed-form sizes of V_0 .. V_rank",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def count_universe(
        omega: OmegaSpec,
        rank: Annotated[int, "Highest rank"],
    ) -> Dict[str, Any]:
        """Count the universe stages without enumerating them."""
        try:
            return commands.vset_count(resolve_omega(omega), rank).to_dict()
        except Exception as e:
            raise ToolError(f"Failed to count universe: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Build Omega-Valued Universe",
            "description": "Enumerate V_0 .. V_rank and compare with the closed form",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def build_universe(
        omega: OmegaSpec,
        rank: Annotated[int, "Highest rank"],
        cap: Annotated[Optional[int], "Largest stage to enumerate"] = None,
        include_elements: Annotated[bool, "Return the elements, not just the counts"] = False,
    ) -> Dict[str, Any]:
        """Enumerate the universe stage by stage."""
        try:
            def _build() -> Dict[str, Any]:
                return commands.vset_build(resolve_omega(omega), rank, cap, None, include_elements).to_dict()

            return await anyio.to_thread.run_sync(_build)
        except Exception as e:
            raise ToolError(f"Failed to build universe: {str(e)}")
