"""Tool registration exports for the qhyper workbench server."""

from .algebra import register_algebra_tools
from .laws import register_law_tools
from .logic import register_logic_tools
from .topos import register_topos_tools

__all__ = [
    "register_algebra_tools",
    "register_law_tools",
    "register_logic_tools",
    "register_topos_tools",
]
