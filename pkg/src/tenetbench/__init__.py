"""tenetbench: derive verifiable LTL properties from informal tenets by
refining them against a goal model and a domain-knowledge rule base."""

from .engine import (
    CompletenessAnswer,
    CompletenessRecord,
    EngineError,
    Move,
    MovePalette,
    NodeStatus,
    NotOpenLeafError,
    OpenLeavesError,
    RefNode,
    RefTree,
    ReplayError,
    Session,
    StaleMoveError,
    UnknownNodeError,
    add_session_rule,
    apply_move,
    collect_properties,
    enumerate_moves,
    export_properties_text,
    export_report,
    export_report_text,
    formalize_in_place,
    frontier,
    init_session,
    insert_session_phantom,
    record_completeness,
    replay,
    session_from_doc,
    session_hash,
    session_to_doc,
)
from .goals import (
    Case2Move,
    Decomposition,
    Goal,
    GoalError,
    GoalGraph,
    ImpliedRule,
    implied_rules,
    insert_phantom,
    match_goals,
    parse_goal_graph,
)
from .knowledge import (
    Case0Move,
    Case1Move,
    DomainRule,
    FormalizationEntry,
    KnowledgeBase,
    KnowledgeError,
    MacroDef,
    RuleKind,
    add_rule,
    expand_macros,
    match_formalizations,
    match_rules,
    parse_rules,
    rule_semantics,
    serialize_rules,
)
from .store import SessionStore, StoreError

__version__ = "0.1.0"
