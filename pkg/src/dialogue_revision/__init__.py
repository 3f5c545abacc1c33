"""Revision engine for scripted dialogue plans.

Takes an abstract dialogue plan, enumerates everything reachable via
adjacency-pair aggregation and clarification-subdialogue insertion,
scores candidates against global turn/emphasis constraints, and picks a
winner by Nash-product arbitration over the Pareto front.
"""

from .plan_model import (
    ActType,
    AdjacencyPair,
    Condition,
    ConstraintSetting,
    DialogueAct,
    DialoguePlan,
    EmptyPlanError,
    Extremum,
    InvalidPlanError,
    PairOrigin,
    Participant,
    Role,
    SemanticContent,
    Track,
    Violation,
    emphasis_marks,
    turn_count,
    validate,
)
from .revision import AggrSite, InsertSite, PreconditionError, aggr_sites, apply_aggr, apply_insert, insert_sites
from .search import MemberCeilingExceeded, PlanSpace, canonical_form, canonical_key, enumerate_closure, oracle_closure
from .arbitration import (
    ArbitrationPlan,
    PhaseOrder,
    ScoreTuple,
    Selection,
    nash_select,
    normalize,
    pareto_front,
    raw_scores,
    sequential_revise,
    sum_select,
)
from .realizer import Lexicon, LexiconGapError, load_lexicon, realize
from .rrl_io import RrlParseError, load_plan, parse, save_plan, serialize

__all__ = [name for name in dir() if not name.startswith("_")]
