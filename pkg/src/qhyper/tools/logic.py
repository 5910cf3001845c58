"""Typed quantum logic tools: sequent validity, rule soundness, countermodels."""

from typing import Annotated, Any, Dict, List, Optional, Union

import anyio
from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from .. import commands
from ..config import DEFAULT_SEED
from ..logic import baseline_rules, classical_schemas, ruleset_from_dict
from ..serialization import resolve_omega, signature_from_dict

DEFAULT_POOL = ["2", "boolean:2", "mo2", "o6"]


def register_logic_tools(mcp: FastMCP) -> None:
    """Register logic tools with the MCP server.

    Args:
        mcp: The FastMCP server instance to register tools with
    """

    @mcp.tool(
        annotations={
            "title": "Check Sequent",
            "description": "Decide a sequent in one model, under a signature or every interpretation",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def check_sequent(
        sequent: Annotated[str, "Sequent such as \"[x:S] P(x) & Q(x) |- P(x)\""],
        model: Annotated[Dict[str, Any], "Model document {kind, omega, objects, ...}"],
        signature: Annotated[
            Optional[Dict[str, Any]],
            "Signature {sorts?, functions, predicates}; omit to search every interpretation",
        ] = None,
    ) -> Dict[str, Any]:
        """Report validity with the failing point as witness."""
        try:
            def _check() -> Dict[str, Any]:
                resolved = commands.resolve_model(model)
                sig = signature_from_dict(resolved, signature) if signature is not None else None
                return commands.logic_check(resolved, sig, sequent).to_dict()

            return await anyio.to_thread.run_sync(_check)
        except Exception as e:
            raise ToolError(f"Failed to check sequent: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Check Rule Soundness",
            "description": "Sample or exhaust instantiations of inference rules in a finite-set model",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def check_soundness(
        omega: Annotated[Union[str, Dict[str, Any]], "Value algebra: builtin name or inline algebra"],
        sizes: Annotated[Optional[List[int]], "Carrier sizes of the sorts S and T"] = None,
        schemas: Annotated[bool, "Check the classical schemas instead of the baseline rules"] = False,
        ruleset: Annotated[Optional[Dict[str, Any]], "Inline rule file {name, rules: [...]}"] = None,
        rules: Annotated[Optional[List[str]], "Only these rule names"] = None,
        samples: Annotated[Optional[int], "Samples per rule (default from config)"] = None,
        seed: Annotated[int, "Sampling seed"] = DEFAULT_SEED,
        exhaustive: Annotated[bool, "Try every instantiation"] = False,
    ) -> Dict[str, Any]:
        """Soundness reports per rule, each with the failing instantiation when unsound."""
        try:
            def _check() -> Dict[str, Any]:
                model = commands.resolve_model(omega=omega, sizes=sizes or [2, 2], sort_names=("S", "T"))
                if ruleset is not None:
                    selected = ruleset_from_dict(ruleset)
                else:
                    selected = classical_schemas() if schemas else baseline_rules()
                return commands.logic_soundness(
                    model, None, selected, rules, samples, seed, exhaustive
                ).to_dict()

            return await anyio.to_thread.run_sync(_check)
        except Exception as e:
            raise ToolError(f"Failed to check soundness: {str(e)}")

    @mcp.tool(
        annotations={
            "title": "Search Countermodel",
            "description": "Search a pool of finite-set models for an interpretation refuting a sequent",
            "readOnlyHint": True,
            "openWorldHint": False,
            "idempotentHint": True,
        }
    )
    async def find_countermodel(
        sequent: Annotated[str, "Sequent to refute"],
        omegas: Annotated[Optional[List[str]], "Pool algebras (default 2, boolean:2, mo2, o6)"] = None,
        sizes: Annotated[Optional[List[int]], "Carrier sizes tried for every algebra"] = None,
    ) -> Dict[str, Any]:
        """First countermodel in pool order, or a pass when the pool has none."""
        try:
            def _search() -> Dict[str, Any]:
                pool = [(name, resolve_omega(name)) for name in omegas or DEFAULT_POOL]
                return commands.logic_countermodel(sequent, pool, sizes or [1, 2]).to_dict()

            return await anyio.to_thread.run_sync(_search)
        except Exception as e:
            raise ToolError(f"Failed to search countermodels: {str(e)}")
