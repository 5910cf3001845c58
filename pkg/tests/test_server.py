import json

import pytest
from fastmcp import Client
from fastmcp.exceptions import ToolError

from qhyper.server import mcp

pytestmark = pytest.mark.anyio

EXPECTED_TOOLS = {
    "check_algebra",
    "generate_algebra",
    "check_law",
    "validate_model",
    "build_topos",
    "count_universe",
    "build_universe",
    "check_sequent",
    "check_soundness",
    "find_countermodel",
}


def payload(result):
    return json.loads(result.content[0].text)


async def test_every_tool_is_registered():
    async with Client(mcp) as client:
        tools = await client.list_tools()
    assert EXPECTED_TOOLS <= {tool.name for tool in tools}


async def test_count_universe():
    async with Client(mcp) as client:
        result = await client.call_tool("count_universe", {"omega": "2", "rank": 2})
    assert payload(result) == {"ok": True, "report": {"omega": ["0", "1"], "counts": [1, 3, 27]}}


async def test_frobenius_fails_for_mo2():
    async with Client(mcp) as client:
        result = await client.call_tool("check_law", {"law": "frobenius", "omega": "mo2", "sizes": [2, 1]})
    data = payload(result)
    assert data["ok"] is False
    assert data["report"]["witness"]["rhs"] == {"y1": "b"}


async def test_check_sequent_with_inline_model():
    model = {"omega": "mo2", "objects": {"S": ["p0", "p1"]}}
    async with Client(mcp) as client:
        result = await client.call_tool("check_sequent", {
            "sequent": "P(x) & (P(x)' | (P(x) & Q(x))) |- Q(x)",
            "model": model,
        })
    assert payload(result)["ok"] is True


async def test_errors_become_tool_errors():
    async with Client(mcp) as client:
        with pytest.raises(ToolError):
            await client.call_tool("build_universe", {"omega": "mo2", "rank": 2})
