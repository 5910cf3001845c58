"""Configuration for the qhyper workbench.

Every bound the enumerating operations respect lives here. Library calls take
an optional ``bounds`` argument; the CLI and the tool server derive overridden
copies with :meth:`Bounds.override`.
"""

from dataclasses import dataclass, fields, replace
from typing import Any

# =============================================================================
# ENUMERATION BOUNDS
# =============================================================================

# Largest fibre Hom(X, Omega) enumerated exhaustively (|Omega|^|X|)
FIBRE_BOUND = 10_000

# Largest morphism search space |Y|^|X| between base objects
MORPHISM_BOUND = 10_000

# Largest atom count accepted by boolean_algebra(k)
BOOLEAN_ATOM_BOUND = 5

# Largest chain accepted by chain(n)
CHAIN_BOUND = 12

# Subspace lattice closure gives up past this many elements
SUBSPACE_SIZE_CAP = 50

# Tripos-to-topos: base carriers range over sizes 0..TOPOS_CARRIER_CAP
TOPOS_CARRIER_CAP = 2
TOPOS_OBJECT_BOUND = 200
COMPOSITION_BOUND = 200_000

# Category/law checks switch from exhaustive to seeded sampling past this
LAW_INSTANCE_BOUND = 50_000

# Omega-valued universe
V_RANK_BOUND = 3
V_ENUMERATION_CAP = 100_000

# Countermodel search: interpretations tried per model
INTERPRETATION_BOUND = 100_000

# =============================================================================
# SAMPLING
# =============================================================================

SAMPLE_COUNT = 1000
DEFAULT_SEED = 0

# =============================================================================
# LOGGING
# =============================================================================

LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# =============================================================================
# SERVER CONFIGURATION
# =============================================================================

SERVER_NAME = "qhyper-workbench"

SERVER_INSTRUCTIONS = """
This MCP server exposes a finite-model workbench for quantum hyperdoctrines.

Algebra Tools:
- Law checking for finite posets, lattices, Heyting, Boolean, ortho- and
  orthomodular algebras
- Generators (MO2, O6, Boolean algebras, chains, rational subspace lattices)

Hyperdoctrine Tools:
- Adjunction, Beck-Chevalley, Frobenius, comprehension and generic-object
  verifiers over finite base categories

Topos and Logic Tools:
- Omega-valued universe counts and tripos-to-topos category summaries
- Sequent validity and countermodel search for typed quantum logic

Every tool is read-only; heavy checks run in a worker thread.
""".strip()


@dataclass(frozen=True)
class Bounds:
    """Capacity limits passed down to every enumerating operation."""

    fibre: int = FIBRE_BOUND
    morphisms: int = MORPHISM_BOUND
    boolean_atoms: int = BOOLEAN_ATOM_BOUND
    chain_length: int = CHAIN_BOUND
    subspace_size: int = SUBSPACE_SIZE_CAP
    topos_carrier: int = TOPOS_CARRIER_CAP
    topos_objects: int = TOPOS_OBJECT_BOUND
    compositions: int = COMPOSITION_BOUND
    law_instances: int = LAW_INSTANCE_BOUND
    v_rank: int = V_RANK_BOUND
    v_enumeration: int = V_ENUMERATION_CAP
    interpretations: int = INTERPRETATION_BOUND
    samples: int = SAMPLE_COUNT

    def override(self, **changes: Any) -> "Bounds":
        """Copy with the given non-``None`` fields replaced."""
        known = {f.name for f in fields(self)}
        unknown = set(changes) - known
        if unknown:
            raise ValueError(f"Unknown bounds: {', '.join(sorted(unknown))}")
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_BOUNDS = Bounds()
