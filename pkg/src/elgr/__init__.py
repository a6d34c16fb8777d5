"""elgr: gentle repair of EL ontologies.

Removes an unwanted consequence from an EL ontology by weakening axioms
instead of deleting them. The package exposes the EL core (concepts,
axioms, parsing, canonical rendering), a polynomial entailment engine,
upper-neighbor and syntactic-generalization computation, the weakening
relations with maximally-strong-weakening search, justification and
hitting-set computation, the repair algorithms, an HTTP session service,
and the ``elgr`` command line.
"""

from .axioms import (
    Axiom,
    Body,
    ConceptAssertion,
    GCI,
    Ontology,
    RoleAssertion,
)
from .concepts import (
    Concept,
    Conj,
    Exists,
    Name,
    TOP,
    Top,
    conj,
    msize,
    role_depth,
    size,
)
from .errors import (
    ElParseError,
    ElgrError,
    EngineInvariantError,
    NotEntailedError,
    PreconditionError,
    ScriptExhaustedError,
    SearchBudgetExceededError,
    StaticEntailsError,
    StrategyViolationError,
)
from .justifications import (
    Justification,
    all_justifications,
    find_one_justification,
    minimal_hitting_sets,
)
from .neighbors import (
    NeighborSet,
    all_syntactic_generalizations,
    syn_generalizes,
    syn_one_step_down_toward,
    syn_one_step_up,
    upper_neighbors,
)
from .parser import parse_axiom, parse_concept, parse_ontology
from .reasoner import (
    EntailmentContext,
    entails,
    equivalent_empty,
    is_tautology,
    reduce_concept,
    strictly_subsumed_empty,
    subsumes_empty,
)
from .render import render
from .repair import (
    InteractiveStrategy,
    MaxStrongStrategy,
    OracleStrategy,
    RepairProblem,
    RepairTrace,
    ScriptedStrategy,
    Strategy,
    TautologyStrategy,
    classical_repair,
    gentle_repair,
    modified_gentle_repair,
    parse_script,
    verify_repair,
)
from .weakening import (
    SUB,
    SYN,
    WeakeningContext,
    WeakeningRelation,
    is_weaker_general,
    is_weaker_s,
    max_strong_weakenings,
    oracle_step,
    relation_by_kind,
    single_max_strong_syn,
    sub_one_step,
    syn_one_step,
    tautology_for,
    weaken_until,
)

reduce = reduce_concept

__version__ = "0.1.0"
