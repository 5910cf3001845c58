"""Hyperdoctrine law tools."""

from typing import Annotated, Any, Dict, List, Literal, Optional, Union

import anyio
from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from .. import commands
from ..serialization import model_to_dict


def register_law_tools(mcp: FastMCP) -> None:
    """Register hyperdoctrine law tools with the MCP server.

    Args:
        mcp: The FastMCP server instance to register tools with
    """

    @mcp.tool(
        annotations={
            "title": "Check Hyperdoctrine Law",
            "description": "Verify adjunction, Beck-Chevalley, Frobenius, comprehension, generic-object or lifting laws",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def check_law(
        law: Annotated[
            Literal["adjunction", "bc", "frobenius", "comprehension", "generic", "lifting"],
            "Law to verify",
        ],
        omega: Annotated[
            Optional[Union[str, Dict[str, Any]]],
            "Value algebra for a finite-set model: builtin name or inline algebra",
        ] = None,
        sizes: Annotated[Optional[List[int]], "Carrier sizes of X, Y, Z (e.g. [2, 1] for Frobenius)"] = None,
        model: Annotated[
            Optional[Dict[str, Any]], "Inline model document; its objects are used unless sizes are given"
        ] = None,
        which: Annotated[
            Optional[Literal["forall", "exists", "equality"]], "Restrict to one quantifier"
        ] = None,
    ) -> Dict[str, Any]:
        """Check one law exhaustively over every fibre element of the chosen objects.

        Failing reports carry the first witness found in enumeration order.
        """
        try:
            def _check() -> Dict[str, Any]:
                resolved = commands.resolve_model(model, omega, [] if model else sizes or [])
                objects = commands.pick_objects(resolved, sizes if model else None)
                return commands.law_check(resolved, law, objects, which).to_dict()

            return await anyio.to_thread.run_sync(_check)
        except Exception as e:
            raise ToolError(f"Failed to check {law}: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Validate Model",
            "description": "Check the omega laws, fibre closure and base-object structure of a model",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def validate_model(
        model: Annotated[Dict[str, Any], "Model document {kind, omega, fibre_rule?, objects?, name?}"],
    ) -> Dict[str, Any]:
        """Validate a model and echo it back in normal form."""
        try:
            def _validate() -> Dict[str, Any]:
                resolved = commands.resolve_model(model)
                result = commands.model_validate(resolved).to_dict()
                result["model"] = model_to_dict(resolved)
                return result

            return await anyio.to_thread.run_sync(_validate)
        except Exception as e:
            raise ToolError(f"Failed to validate model: {str(e)}")
