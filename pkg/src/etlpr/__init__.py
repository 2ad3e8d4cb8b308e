"""Perfect-recall tooling for epistemic temporal logic trees and forests.

The package decides recall frame conditions, model-checks the modal
language with knowledge and one-step event operators, and verifies the
relationships between the conditions by exhaustive enumeration of small
frames.
"""

__version__ = "0.1.0"

from .claims import ClaimReport, verify_claim, verify_claims
from .enumeration import EnumBounds, enumerate_frames, enumeration_size
from .errors import (
    DuplicateEvent,
    DuplicateRoot,
    EtlError,
    FormulaSyntaxError,
    FrameDocumentError,
    FrameError,
    NonTotalMap,
    NotPrefixClosed,
    PreconditionViolated,
    SearchSpaceTooLarge,
    UnknownClaim,
    UnknownEvent,
    UnknownFixture,
    UnknownHistory,
)
from .fixtures import all_fixtures, fig4_morphism, fixture, fixture_info
from .formulas import (
    AfterDia,
    And,
    Atom,
    Bot,
    Formula,
    Implies,
    K,
    L,
    Not,
    Or,
    Top,
    after_box,
    box,
    dia,
    formula_to_text,
    parse_formula,
    spr_axiom,
    star_axiom,
)
from .framedoc import frame_to_dict, parse_frame_document, serialize_frame
from .frames import (
    ACCESS,
    LEADSTO,
    LEADSTO_STAR,
    EventId,
    Frame,
    HistoryId,
    build_frame,
    replace_access,
)
from .morphisms import (
    BoundedMorphism,
    MorphismCheck,
    NondefinabilityReport,
    check_bounded_morphism,
    compose,
    identity_morphism,
    nondefinability_witness,
)
from .recall import (
    EpistemicExperience,
    RecallVerdict,
    epistemic_experience,
    has_pr_combined,
    has_pr_ee,
    has_pr_hc,
    has_pr_hcl,
    has_spr,
    has_wspr,
    pr_hc_by_inclusion,
    stutter_equivalent,
)
from .relations import (
    RelationReport,
    closure_is_symmetric_reflexive_only,
    initially_synchronous,
    is_introspective,
    is_s5,
    is_synchronous,
    persistent_insanity,
    relation_report,
    s5_closure,
    symmetric_reflexive_closure,
)
from .semantics import satisfies, truth_set, valid_on_frame, valid_on_model
from .verdicts import PROPERTY_NAMES, property_table, property_verdict
