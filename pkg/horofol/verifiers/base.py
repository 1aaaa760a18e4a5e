"""
Verifier base class, registry and the seeded trial runner
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Type

import numpy as np

from ..errors import HorofolError, UnknownLemma
from ..models import LemmaId, Report, VerifyJob

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    """Result of one trial; larger scores are worse"""
    failed: bool
    score: float
    details: Dict[str, Any]


class Verifier:
    """Checks one statement on seeded random configurations"""

    lemma_id: LemmaId
    description: str = ""
    defaults: Dict[str, float] = {}

    def tolerances(self, job: VerifyJob) -> Dict[str, float]:
        merged = dict(self.defaults)
        merged.update(job.tolerances)
        return merged

    def check(self, rng: np.random.Generator, tol: Dict[str, float]) -> Outcome:
        raise NotImplementedError

    def run(self, job: VerifyJob) -> Report:
        """Every trial, optionally split across worker processes"""
        tol = self.tolerances(job)
        if job.workers > 1 and job.trials > 1:
            bounds = np.linspace(0, job.trials, min(job.workers, job.trials) + 1).astype(int)
            with ProcessPoolExecutor(max_workers=job.workers) as pool:
                parts = list(pool.map(
                    _run_chunk,
                    [self.lemma_id.value] * (len(bounds) - 1),
                    [job.seed] * (len(bounds) - 1),
                    [tol] * (len(bounds) - 1),
                    bounds[:-1].tolist(),
                    bounds[1:].tolist(),
                ))
        else:
            parts = [self.trials(job.seed, tol, 0, job.trials)]
        failures, worst = _merge(parts)
        return Report(job, failures, worst or {})

    def trials(self, seed: int, tol: Dict[str, float], start: int, stop: int):
        """Failure count and worst outcome over trials [start, stop)"""
        failures, worst = 0, None
        for trial in range(start, stop):
            outcome = self._safe_check(np.random.default_rng([seed, trial]), tol)
            if outcome.failed:
                failures += 1
            score = outcome.score if math.isfinite(outcome.score) else math.inf
            if worst is None or score > worst[0]:
                worst = (score, trial, outcome)
        return failures, worst

    def _safe_check(self, rng: np.random.Generator, tol: Dict[str, float]) -> Outcome:
        try:
            return self.check(rng, tol)
        except HorofolError as e:
            logger.debug("%s trial raised %s", self.lemma_id.value, e)
            return Outcome(True, math.inf, {'error': f"{type(e).__name__}: {e}"})


def _merge(parts) -> Tuple[int, Optional[Dict]]:
    """Sum failures; keep the worst score, ties going to the lowest trial"""
    failures = sum(p[0] for p in parts)
    candidates = [p[1] for p in parts if p[1] is not None]
    if not candidates:
        return failures, None
    score, trial, outcome = max(candidates, key=lambda c: (c[0], -c[1]))
    worst = {'trial': trial, 'score': score if math.isfinite(score) else None}
    worst.update(outcome.details)
    return failures, worst


def _run_chunk(lemma: str, seed: int, tol: Dict[str, float], start: int, stop: int):
    return get_verifier(LemmaId(lemma)).trials(seed, tol, start, stop)


REGISTRY: Dict[LemmaId, Verifier] = {}


def register(cls: Type[Verifier]) -> Type[Verifier]:
    """Class decorator adding one instance to the registry"""
    if cls.lemma_id in REGISTRY:
        raise ValueError(f"Verifier for {cls.lemma_id.value} registered twice")
    REGISTRY[cls.lemma_id] = cls()
    return cls


def get_verifier(lemma_id: LemmaId) -> Verifier:
    # registration happens on import of the verifier modules
    from . import alignment_checks, group_checks, plane_checks  # noqa: F401

    try:
        return REGISTRY[lemma_id]
    except KeyError as e:
        raise UnknownLemma(f"No verifier registered for '{lemma_id.value}'") from e


def run_verify(job: VerifyJob) -> Report:
    """Run a verification job and time it"""
    verifier = get_verifier(job.lemma_id)
    started = time.perf_counter()
    report = verifier.run(job)
    report.wall_time = time.perf_counter() - started
    logger.info("%s: %d/%d failures in %.2fs", job.lemma_id.value, report.failures,
                job.trials, report.wall_time)
    return report


def registered() -> List[Verifier]:
    get_verifier(LemmaId.COCYCLE)
    return [REGISTRY[lemma] for lemma in LemmaId if lemma in REGISTRY]
