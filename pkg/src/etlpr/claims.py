"""Sweep-backed verification of the library's headline claims.

Each claim couples a hypothesis class (a relation filter, a tree-count
range, and optionally extra frame predicates) with an assertion that must
hold on every frame of the class.  ``verify_claim`` enumerates the class
within the given bounds and reports the violations (none, if the claim is
right and the checkers are sound).

Two engines produce identical reports:

* ``pure``   -- materialize every frame and run the reference checkers;
* ``vector`` -- for claims over *all* relations, run the bitmask kernel
                from :mod:`etlpr.vectorsweep` and materialize only the
                violating frames.

``auto`` picks the vector engine when the class is too big to walk frame
by frame.  Several claims fielding the same bounds can share one sweep
via ``verify_claims``.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import recall, relations
from .enumeration import EnumBounds, Protocol, enum_ceiling, enumeration_size, protocols, relation_masks
from .errors import SearchSpaceTooLarge, UnknownClaim
from .formulas import spr_axiom, star_axiom
from .framedoc import frame_to_dict
from .frames import Frame
from .semantics import valid_on_frame
from .vectorsweep import ChunkContext, sweep_violations_multi

VECTOR_THRESHOLD = 1 << 20
MAX_REPORTED_VIOLATIONS = 5


# -- pure assertion checks ------------------------------------------------


def _iff(a: bool, b: bool, left: str, right: str) -> str | None:
    if a != b:
        return f"{left} is {a} but {right} is {b}"
    return None


def _check_prop1(frame: Frame) -> str | None:
    return _iff(recall.has_pr_ee(frame).holds, recall.has_pr_hc(frame).holds,
                "pr_ee", "pr_hc")


def _check_prop2(frame: Frame) -> str | None:
    verdicts = {
        name: recall.CHECKS[name](frame).holds
        for name in ("pr_ee", "pr_hc", "spr", "wspr")
    }
    if len(set(verdicts.values())) > 1:
        return f"notions diverge: {verdicts}"
    return None


def _check_prop3(frame: Frame) -> str | None:
    if recall.has_wspr(frame).holds and not recall.has_pr_hc(frame).holds:
        return "wspr holds but pr_hc fails"
    return None


def _check_lemma4(frame: Frame) -> str | None:
    if recall.has_pr_hcl(frame).holds and not recall.has_pr_hc(frame).holds:
        return "pr_hcl holds but pr_hc fails"
    return None


def _check_prop5(frame: Frame) -> str | None:
    hcl = recall.has_pr_hcl(frame).holds
    return (
        _iff(recall.has_pr_hc(frame).holds, hcl, "pr_hc", "pr_hcl")
        or _iff(recall.has_pr_ee(frame).holds, hcl, "pr_ee", "pr_hcl")
    )


def _star_valid_all_events(frame: Frame) -> bool:
    alphabet = [e.name for e in frame.events]
    return all(
        valid_on_frame(frame, star_axiom(e, alphabet))[0] for e in alphabet
    )


def _check_thm6(frame: Frame) -> str | None:
    return _iff(recall.has_pr_hcl(frame).holds, _star_valid_all_events(frame),
                "pr_hcl", "validity of the recall axiom for every event")


def _check_prop7(frame: Frame) -> str | None:
    alphabet = [e.name for e in frame.events]
    valid, _ = valid_on_frame(frame, spr_axiom(alphabet))
    return _iff(recall.has_spr(frame).holds, valid, "spr", "validity of the spr axiom")


def _check_prop9(frame: Frame) -> str | None:
    if recall.has_pr_ee(frame).holds and not relations.is_introspective(frame):
        return "pr_ee holds but the relation is not transitive+Euclidean"
    return None


def _check_prop10(frame: Frame) -> str | None:
    closure_hcl = recall.has_pr_hcl(relations.s5_closure(frame)).holds
    return _iff(recall.has_pr_ee(frame).holds, closure_hcl,
                "pr_ee", "pr_hcl of the S5 closure")


def _check_rem11(frame: Frame) -> str | None:
    if recall.has_pr_hcl(frame).holds and not relations.persistent_insanity(frame):
        return "pr_hcl holds but persistent insanity fails"
    return None


def _check_thm12(frame: Frame) -> str | None:
    return _iff(recall.has_pr_combined(frame).holds, recall.has_pr_hcl(frame).holds,
                "pr (combined)", "pr_hcl")


def _check_obs13(frame: Frame) -> str | None:
    rows = frame.access_rows
    for h1, h2 in frame.access_sorted:
        if not frame.is_prefix(h1, h2):
            continue
        chain2 = frame.prefix_chain(h2)
        for h1p in frame.prefix_chain(h1):
            if not any(h2p in rows[h1p] for h2p in chain2):
                return (
                    f"{frame.label(h1)} ~ its extension {frame.label(h2)} but the "
                    f"prefix {frame.label(h1p)} accesses no prefix of {frame.label(h2)}"
                )
    return None


def _check_lem14(frame: Frame) -> str | None:
    closure = relations.s5_closure(frame).access
    rows = frame.access_rows
    for h1 in range(frame.n_histories):
        for h2 in sorted(rows[h1]):
            for h2p in sorted(rows[h1]):
                if not frame.is_prefix(h2p, h2):
                    continue
                for h in frame.prefix_chain(h2):
                    if frame.is_prefix(h2p, h) and (h1, h) not in closure:
                        return (
                            f"{frame.label(h1)} accesses {frame.label(h2)} and "
                            f"{frame.label(h2p)} but is not closure-related to the "
                            f"intermediate {frame.label(h)}"
                        )
    return None


def _check_closure_preserves_hcl(frame: Frame) -> str | None:
    if not recall.has_pr_hcl(relations.s5_closure(frame)).holds:
        return "pr_hcl holds but fails on the S5 closure"
    return None


def _check_spr_sync(frame: Frame) -> str | None:
    if recall.has_spr(frame).holds and not relations.is_synchronous(frame):
        return "spr holds on an asynchronous frame"
    return None


def _check_footnote7(frame: Frame) -> str | None:
    if not relations.closure_is_symmetric_reflexive_only(frame):
        return "S5 closure needs a transitive step beyond the symmetric-reflexive closure"
    return None


def _has_hcl(frame: Frame) -> bool:
    return recall.has_pr_hcl(frame).holds


# -- fixture-backed checks -------------------------------------------------


def _fixture_prop3_converse() -> list[tuple[Frame, str]]:
    from .fixtures import fixture

    frame = fixture("fig1a")
    out = []
    if not recall.has_pr_hc(frame).holds:
        out.append((frame, "fig1a was expected to satisfy pr_hc"))
    if recall.has_wspr(frame).holds:
        out.append((frame, "fig1a was expected to violate wspr (strictness witness)"))
    return out


def _fixture_prop16() -> list[tuple[Frame, str]]:
    from .fixtures import fig4_morphism
    from .morphisms import nondefinability_witness

    report = nondefinability_witness()
    out = []
    if not report.establishes_nondefinability:
        out.append((fig4_morphism().source, f"witness incomplete: {report.to_json()}"))
    return out


# -- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    statement: str
    relation_filter: str = "all"
    trees: tuple[int, int] | None = None  # (min, max-cap); None = bounds as given
    frame_filter: Callable[[Frame], bool] | None = None
    check: Callable[[Frame], str | None] = lambda f: None
    vector: Callable[[ChunkContext], np.ndarray] | None = None
    bounds_overrides: dict = field(default_factory=dict)
    fixture_checks: Callable[[], list[tuple[Frame, str]]] | None = None
    sweepless: bool = False


def _vec(antecedent: str, consequent: str):
    def fn(ctx: ChunkContext) -> np.ndarray:
        return ctx.pred(antecedent) & ~ctx.pred(consequent)

    return fn


def _vec_thm6(ctx: ChunkContext) -> np.ndarray:
    return ctx.pred("pr_hcl") != ctx.star_valid_all_events()


CLAIMS: dict[str, ClaimSpec] = {
    spec.claim_id: spec
    for spec in (
        ClaimSpec(
            "prop1",
            "on equivalence frames, experience recall and history consistency coincide",
            relation_filter="s5",
            check=_check_prop1,
        ),
        ClaimSpec(
            "prop2",
            "on synchronous equivalence frames all four recall notions coincide",
            relation_filter="s5",
            frame_filter=relations.is_synchronous,
            check=_check_prop2,
        ),
        ClaimSpec(
            # the sweep half of this claim finds real counterexamples: a
            # chain whose root is related to its depth-2 extension passes
            # wspr (root exemption) while failing pr_hc; the fixture half
            # always holds
            "prop3",
            "on equivalence trees wspr implies recall, and not vice versa (fig1a)",
            relation_filter="s5",
            trees=(1, 1),
            check=_check_prop3,
            fixture_checks=_fixture_prop3_converse,
        ),
        ClaimSpec(
            "lemma4",
            "the local history-consistency condition implies the global one",
            check=_check_lemma4,
            vector=_vec("pr_hcl", "pr_hc"),
        ),
        ClaimSpec(
            "prop5",
            "on equivalence frames recall coincides with the local condition",
            relation_filter="s5",
            check=_check_prop5,
        ),
        ClaimSpec(
            "thm6",
            "a frame satisfies the local condition iff it validates the recall "
            "axiom for every event",
            check=_check_thm6,
            vector=_vec_thm6,
            bounds_overrides={"max_histories": 4},
        ),
        ClaimSpec(
            "prop7",
            "an equivalence frame has synchronous recall iff it validates "
            "'dia L p -> L dia p'",
            relation_filter="s5",
            check=_check_prop7,
            bounds_overrides={"max_histories": 4},
        ),
        ClaimSpec(
            "prop9",
            "experience recall forces a transitive and Euclidean relation",
            check=_check_prop9,
            vector=_vec("pr_ee", "introspective"),
        ),
        ClaimSpec(
            "prop10",
            "with introspection and persistent insanity, experience recall is "
            "equivalent to the local condition on the S5 closure",
            relation_filter="introspective",
            frame_filter=relations.persistent_insanity,
            check=_check_prop10,
        ),
        ClaimSpec(
            "rem11",
            "the local condition implies persistent insanity",
            check=_check_rem11,
            vector=_vec("pr_hcl", "persistent_insanity"),
        ),
        ClaimSpec(
            "thm12",
            "on introspective trees the combined recall property is equivalent "
            "to the local condition",
            relation_filter="introspective",
            trees=(1, 1),
            check=_check_thm12,
        ),
        ClaimSpec(
            "obs13",
            "on introspective frames with the local condition, accessibility "
            "along a history reaches back through every prefix",
            relation_filter="introspective",
            frame_filter=_has_hcl,
            check=_check_obs13,
        ),
        ClaimSpec(
            "lem14",
            "on introspective frames with the local condition, histories "
            "between two accessed prefixes are closure-accessible",
            relation_filter="introspective",
            frame_filter=_has_hcl,
            check=_check_lem14,
        ),
        ClaimSpec(
            "lem15",
            "on introspective trees the local condition survives S5 closure",
            relation_filter="introspective",
            trees=(1, 1),
            frame_filter=_has_hcl,
            check=_check_closure_preserves_hcl,
        ),
        ClaimSpec(
            "lem17",
            "on introspective, initially synchronous forests the local "
            "condition survives S5 closure",
            relation_filter="introspective",
            trees=(2, 99),
            frame_filter=lambda f: relations.initially_synchronous(f) and _has_hcl(f),
            check=_check_closure_preserves_hcl,
        ),
        ClaimSpec(
            "thm18",
            "on introspective, initially synchronous forests the combined "
            "recall property is equivalent to the local condition",
            relation_filter="introspective",
            trees=(2, 99),
            frame_filter=relations.initially_synchronous,
            check=_check_thm12,
        ),
        ClaimSpec(
            "prop16",
            "the combined recall property is not definable by formulas on "
            "introspective forests (bounded-morphism witness)",
            sweepless=True,
            fixture_checks=_fixture_prop16,
        ),
        ClaimSpec(
            # needs symmetry: with a one-way root-to-extension pair the
            # condition is vacuous while the relation is asynchronous
            "spr_sync",
            "on equivalence frames synchronous recall forces a synchronous relation",
            relation_filter="s5",
            check=_check_spr_sync,
        ),
        ClaimSpec(
            "footnote7",
            "on introspective frames the S5 closure is already the "
            "symmetric-reflexive closure",
            relation_filter="introspective",
            check=_check_footnote7,
        ),
    )
}


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    statement: str
    bounds: str
    engine: str
    checked: int
    violations: tuple[tuple[str, str], ...]  # (frame document json, detail)
    violation_count: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_lines(self) -> list[str]:
        lines = [
            f"claim: {self.claim}",
            f"statement: {self.statement}",
            f"bounds: {self.bounds}",
            f"engine: {self.engine}",
            f"checked: {self.checked}",
            f"violations: {self.violation_count}",
        ]
        for doc, detail in self.violations:
            lines.append(f"violation: {doc} :: {detail}")
        return lines


def claim_spec(claim_id: str) -> ClaimSpec:
    spec = CLAIMS.get(claim_id.lower())
    if spec is None:
        raise UnknownClaim(
            f"unknown claim {claim_id!r}; known: {', '.join(sorted(CLAIMS))}"
        )
    return spec


def effective_bounds(spec: ClaimSpec, bounds: EnumBounds | None) -> EnumBounds:
    if bounds is None:
        bounds = EnumBounds(**spec.bounds_overrides)
    fields = {"relation_filter": spec.relation_filter}
    if spec.relation_filter == "custom":
        raise ValueError("claims do not take custom filters")
    if spec.trees is not None:
        lo, hi = spec.trees
        fields["min_trees"] = lo
        fields["max_trees"] = max(lo, min(hi, bounds.max_trees))
    return replace(bounds, **fields)


def _frame_json(frame: Frame) -> str:
    return json.dumps(frame_to_dict(frame), sort_keys=True)


def _pure_protocol_task(spec: ClaimSpec, bounds: EnumBounds, proto: Protocol):
    checked = 0
    violations = []
    for mask in relation_masks(proto, bounds):
        frame = proto.frame(mask)
        if spec.frame_filter is not None and not spec.frame_filter(frame):
            continue
        checked += 1
        detail = spec.check(frame)
        if detail is not None:
            violations.append((frame, detail))
    return checked, violations


def _vector_protocol_task(specs: dict[str, ClaimSpec], proto: Protocol):
    fns = {cid: spec.vector for cid, spec in specs.items()}
    raw = sweep_violations_multi(proto, fns, max_witnesses=MAX_REPORTED_VIOLATIONS)
    out = {}
    for cid, (total, count, witness_masks) in raw.items():
        witnesses = []
        for mask in witness_masks:
            frame = proto.frame(mask)
            detail = specs[cid].check(frame)
            if detail is None:
                raise RuntimeError(
                    f"vector kernel flagged mask {mask} for {cid} but the "
                    "reference checker disagrees"
                )
            witnesses.append((frame, detail))
        out[cid] = (total, count, witnesses)
    return out


def _guard(bounds: EnumBounds) -> None:
    size = enumeration_size(bounds)
    limit = enum_ceiling(bounds.ceiling)
    if size > limit:
        raise SearchSpaceTooLarge(
            f"sweep would cover {size} relation assignments, above the ceiling {limit}"
        )


def _run_map(tasks, fn, workers: int):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def verify_claims(
    claim_ids: Sequence[str],
    bounds: EnumBounds | None = None,
    engine: str = "auto",
    workers: int = 1,
) -> dict[str, ClaimReport]:
    """Verify several claims, sharing sweeps where their classes agree.

    The report for each claim is byte-identical to what verify_claim
    produces for it alone, for every engine choice and worker count.
    """
    reports: dict[str, ClaimReport] = {}
    vector_groups: dict[EnumBounds, dict[str, ClaimSpec]] = {}
    for cid in claim_ids:
        spec = claim_spec(cid)
        eff = None if spec.sweepless else effective_bounds(spec, bounds)
        use_vector = (
            not spec.sweepless
            and spec.vector is not None
            and engine != "pure"
            and (engine == "vector" or enumeration_size(eff) > VECTOR_THRESHOLD)
        )
        if use_vector:
            vector_groups.setdefault(eff, {})[spec.claim_id] = spec
        else:
            reports[spec.claim_id] = _verify_single(spec, eff, engine, workers)

    for eff, specs in vector_groups.items():
        _guard(eff)
        protos = list(protocols(eff))
        results = _run_map(
            protos, lambda p: _vector_protocol_task(specs, p), workers
        )
        for cid, spec in specs.items():
            checked = 0
            count = 0
            witnesses: list[tuple[Frame, str]] = []
            for per_proto in results:
                total, c, wit = per_proto[cid]
                checked += total
                count += c
                if len(witnesses) < MAX_REPORTED_VIOLATIONS:
                    witnesses.extend(wit[: MAX_REPORTED_VIOLATIONS - len(witnesses)])
            reports[cid] = _make_report(spec, eff, "vector", checked, count, witnesses)
    return reports


def _make_report(spec, eff, engine, checked, count, witnesses) -> ClaimReport:
    fixture_violations: list[tuple[Frame, str]] = []
    if spec.fixture_checks is not None:
        fixture_violations = spec.fixture_checks()
    all_witnesses = [
        (_frame_json(frame), detail)
        for frame, detail in list(witnesses) + fixture_violations
    ]
    return ClaimReport(
        claim=spec.claim_id,
        statement=spec.statement,
        bounds="(fixture only)" if eff is None else eff.describe(),
        engine=engine,
        checked=checked,
        violations=tuple(all_witnesses[:MAX_REPORTED_VIOLATIONS]),
        violation_count=count + len(fixture_violations),
    )


def _verify_single(
    spec: ClaimSpec, eff: EnumBounds | None, engine: str, workers: int
) -> ClaimReport:
    if spec.sweepless or eff is None:
        return _make_report(spec, None, "fixture", 0, 0, [])
    if engine == "vector":
        if spec.vector is None:
            raise ValueError(f"claim {spec.claim_id} has no vector engine")
        _guard(eff)
        protos = list(protocols(eff))
        results = _run_map(
            protos, lambda p: _vector_protocol_task({spec.claim_id: spec}, p), workers
        )
        checked = sum(r[spec.claim_id][0] for r in results)
        count = sum(r[spec.claim_id][1] for r in results)
        witnesses = []
        for r in results:
            witnesses.extend(r[spec.claim_id][2])
        return _make_report(spec, eff, "vector", checked, count, witnesses)
    _guard(eff)
    protos = list(protocols(eff))
    results = _run_map(protos, lambda p: _pure_protocol_task(spec, eff, p), workers)
    checked = sum(c for c, _ in results)
    witnesses = []
    for _, v in results:
        witnesses.extend(v)
    return _make_report(spec, eff, "pure", checked, len(witnesses), witnesses)


def verify_claim(
    claim_id: str,
    bounds: EnumBounds | None = None,
    engine: str = "auto",
    workers: int = 1,
) -> ClaimReport:
    """Sweep one claim's hypothesis class and report the violations."""
    return verify_claims([claim_id], bounds, engine, workers)[claim_id]
