"""Bounded verification for the 8_5 pair: no enumerated partner of delta passes.

Every system reachable from epsilon by a bounded number of rewires is checked
against delta (rectangle verdict, scan oracle, no-partner certificate) and
against epsilon (wave existence, normal-form uniqueness, adjacent-pair
classification, Euler formula).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .arrangement import minimal_arrangement
from .catalog import dumps, load_system
from .criteria import (
    IsotopicDegenerate,
    certify_no_rc_partner,
    classify_adjacent_pairs,
    find_waves,
    normal_form_report,
    rectangle_report,
    rectangle_tuples_by_scan,
)
from .moves import enumerate_systems
from .sphere import EPSILON, ArcSystem, are_isotopic


@dataclass(frozen=True)
class HarnessConfig:
    rewires: int = 2
    max_crossings: int = 8
    max_classes: int = 20000
    jobs: int = 1


@dataclass
class CandidateResult:
    index: int
    rc_holds: bool
    oracle_agrees: bool
    certificate: tuple | None
    degenerate: bool
    wave_violation: bool
    normal_form_exception: bool
    unclassified: int
    euler_ok: bool

    @property
    def violations(self) -> list[str]:
        out = []
        if self.rc_holds:
            out.append("rectangle condition holds against delta")
        if not self.oracle_agrees:
            out.append("rectangle oracles disagree")
        if self.wave_violation:
            out.append("no wave for a non-trivial system")
        if self.normal_form_exception:
            out.append("normal form without isotopy to epsilon")
        if self.unclassified:
            out.append(f"{self.unclassified} unclassified adjacent pairs")
        if not self.euler_ok:
            out.append("Euler formula failed")
        return out


@dataclass
class HarnessReport:
    rewires: int
    max_crossings: int
    classes_enumerated: int = 0
    rc_failures: int = 0
    certificates: int = 0
    degenerate: int = 0
    systems_without_wave: int = 0
    normal_form_exceptions: int = 0
    unclassified_pairs: int = 0
    oracle_disagreements: int = 0
    euler_failures: int = 0
    truncated: bool = False
    certificate_kinds: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return (self.rc_failures == self.classes_enumerated
                and not (self.systems_without_wave or self.normal_form_exceptions
                         or self.unclassified_pairs or self.oracle_disagreements or self.euler_failures))

    def to_json(self, with_time: bool = True) -> str:
        d = asdict(self)
        if not with_time:
            d.pop("wall_time")
        d["ok"] = self.ok
        return json.dumps(d, sort_keys=True, indent=2)


_DELTA: ArcSystem | None = None


def _delta() -> ArcSystem:
    global _DELTA
    if _DELTA is None:
        _DELTA = load_system("@delta85")
    return _DELTA


def check_candidate(index: int, beta: ArcSystem, delta: ArcSystem | None = None) -> CandidateResult:
    delta = delta or _delta()
    arr = minimal_arrangement(delta, beta)
    rc = rectangle_report(delta, beta, arr)
    scan = rectangle_tuples_by_scan(delta, beta, arr)
    try:
        cert = certify_no_rc_partner(delta, beta, arr)
        degenerate = False
    except IsotopicDegenerate:
        cert, degenerate = None, True
    ref = minimal_arrangement(EPSILON, beta)
    iso = are_isotopic(beta, EPSILON)
    wave_violation = bool(not iso and ref.n_crossings and not find_waves(EPSILON, beta, ref))
    nf_exception = normal_form_report(beta, EPSILON).holds and not iso
    unclassified = 0 if iso else sum(
        c.kind == "Unclassified" for c in classify_adjacent_pairs(EPSILON, beta, ref))
    return CandidateResult(
        index=index,
        rc_holds=rc.holds,
        oracle_agrees=scan == rc.realized,
        certificate=None if cert is None else (cert.witness_arc, cert.missing_pair),
        degenerate=degenerate,
        wave_violation=wave_violation,
        normal_form_exception=nf_exception,
        unclassified=unclassified,
        euler_ok=arr.euler_holds() and ref.euler_holds(),
    )


def _check_packed(args):
    index, text = args
    from .catalog import loads

    return check_candidate(index, loads(text))


def verify_85(cfg: HarnessConfig) -> HarnessReport:
    t0 = time.perf_counter()
    enum = enumerate_systems(EPSILON, cfg.rewires, cfg.max_crossings, cfg.max_classes)
    systems = enum.systems
    if cfg.jobs > 1:
        payload = [(i, dumps(S)) for i, S in enumerate(systems)]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_check_packed, payload, chunksize=max(1, len(payload) // (4 * cfg.jobs))))
    else:
        results = [check_candidate(i, S) for i, S in enumerate(systems)]
    results.sort(key=lambda r: r.index)
    rep = HarnessReport(cfg.rewires, cfg.max_crossings, truncated=enum.truncated)
    rep.classes_enumerated = len(systems)
    kinds: dict[str, int] = {}
    for r in results:
        rep.rc_failures += not r.rc_holds
        rep.certificates += r.certificate is not None
        rep.degenerate += r.degenerate
        rep.systems_without_wave += r.wave_violation
        rep.normal_form_exceptions += r.normal_form_exception
        rep.unclassified_pairs += r.unclassified
        rep.oracle_disagreements += not r.oracle_agrees
        rep.euler_failures += not r.euler_ok
        key = "none" if r.certificate is None else f"arc{r.certificate[0]}:{r.certificate[1][0]}{r.certificate[1][1]}"
        kinds[key] = kinds.get(key, 0) + 1
        if r.violations:
            rep.counterexamples.append({"index": r.index, "problems": r.violations,
                                        "system": dumps(systems[r.index])})
    rep.certificate_kinds = dict(sorted(kinds.items()))
    rep.wall_time = round(time.perf_counter() - t0, 3)
    return rep
