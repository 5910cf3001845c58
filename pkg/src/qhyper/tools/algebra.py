"""Algebra tools: law checks and generators for finite value algebras."""

from typing import Annotated, Any, Dict, Optional, Union

import anyio
from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from .. import commands
from ..serialization import resolve_omega

AlgebraSpec = Annotated[
    Union[str, Dict[str, Any]],
    "Builtin name (2, mo2, o6, boolean:K, chain:N) or an inline algebra object",
]


def register_algebra_tools(mcp: FastMCP) -> None:
    """Register algebra tools with the MCP server.

    Args:
        mcp: The FastMCP server instance to register tools with
    """

    @mcp.tool(
        annotations={
            "title": "Check Algebra Laws",
            "description": "Check the laws of a finite algebra against a class tag",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def check_algebra(
        algebra: AlgebraSpec,
        algebra_class: Annotated[
            Optional[str], "Class tag such as boolean, ortholattice or orthomodular; defaults to the algebra's tag"
        ] = None,
    ) -> Dict[str, Any]:
        """Check every law of the algebra class, with the first failing instance as witness.

        Non-distributive algebras also report a distributivity counterexample.
        """
        try:
            def _check() -> Dict[str, Any]:
                return commands.algebra_check(resolve_omega(algebra), algebra_class).to_dict()

            return await anyio.to_thread.run_sync(_check)
        except Exception as e:
            raise ToolError(f"Failed to check algebra: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Generate Algebra",
            "description": "Build a named algebra or the lattice of subspaces spanned by rational vectors",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def generate_algebra(
        name: Annotated[Optional[str], "2, mo2, o6, boolean:K or chain:N"] = None,
        subspaces: Annotated[
            Optional[Dict[str, Any]],
            "Subspace spec {dim, generators: [[vector, ...], ...], size_cap?}; vectors hold integers or 'p/q'",
        ] = None,
    ) -> Dict[str, Any]:
        """Return carrier, order, meet, join, orthocomplement and implication tables."""
        try:
            def _generate() -> Dict[str, Any]:
                return commands.algebra_generate(name, subspaces).to_dict()

            return await anyio.to_thread.run_sync(_generate)
        except Exception as e:
            raise ToolError(f"Failed to generate algebra: {str(e)}")
