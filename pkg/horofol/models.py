"""
Data models for verification jobs, reports and pipeline runs
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .errors import InputError, UnknownLemma


class LemmaId(Enum):
    """Verifiable statements, one registered verifier each"""
    THIN = "thin"
    CONTRACTING = "contracting"
    PROJECTION_DEFECT = "projection_defect"
    SQUEEZE = "squeeze"
    ALIGN_DICHOTOMY = "align_dichotomy"
    SHADOW_ALIGN_FWD = "shadow_align_fwd"
    SHADOW_ALIGN_BWD = "shadow_align_bwd"
    AXIS_BOUNDS = "axis_bounds"
    APPENDIX_CONST = "appendix_const"
    COCYCLE = "cocycle"
    SHADOW_BUSE = "shadow_buse"
    SIMULTANEOUS_SHADOW = "simultaneous_shadow"
    DIV_FACTORS = "div_factors"
    BUSEMANN_LIMIT = "busemann_limit"
    EQUIVARIANCE = "equivariance"
    PROJECTION_LIPSCHITZ = "projection_lipschitz"
    TRANSLATION_LIMIT = "translation_limit"
    CARTAN_SUBADDITIVE = "cartan_subadditive"
    JORDAN_GROWTH = "jordan_growth"

    @classmethod
    def parse(cls, value: str) -> "LemmaId":
        try:
            return cls(value)
        except ValueError as e:
            known = ", ".join(m.value for m in cls)
            raise UnknownLemma(f"Unknown lemma '{value}' (known: {known})") from e


@dataclass
class VerifyJob:
    """One seeded verification run"""
    lemma_id: LemmaId
    trials: int
    seed: int
    tolerances: Dict[str, float] = field(default_factory=dict)
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.lemma_id, str):
            self.lemma_id = LemmaId.parse(self.lemma_id)
        if self.trials < 1:
            raise InputError(f"trials must be at least 1, got {self.trials}")

    def to_dict(self) -> Dict:
        return {
            'lemma_id': self.lemma_id.value,
            'trials': self.trials,
            'seed': self.seed,
            'tolerances': dict(sorted(self.tolerances.items())),
        }


@dataclass
class Report:
    """Outcome of a verification job"""
    job: VerifyJob
    failures: int = 0
    worst_case: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self, timing: bool = False) -> Dict:
        """Convert to dictionary for JSON export; wall time only on request"""
        data = {
            'lemma_id': self.job.lemma_id.value,
            'trials': self.job.trials,
            'failures': self.failures,
            'worst_case': self.worst_case,
            'seed': self.job.seed,
            'job': self.job.to_dict(),
        }
        if timing:
            data['wall_time'] = self.wall_time
        return data


@dataclass
class PipelineResult:
    """Files written by a pipeline run and the records behind them"""
    spec_name: str
    max_word_length: int
    psi: List[float]
    artifacts: Dict[str, str] = field(default_factory=dict)
    records: Dict[str, Any] = field(default_factory=dict)
    refused: List[str] = field(default_factory=list)

    def add_artifact(self, kind: str, path: str, record: Any = None) -> None:
        self.artifacts[kind] = path
        if record is not None:
            self.records[kind] = record

    def to_dict(self) -> Dict:
        return {
            'spec_name': self.spec_name,
            'max_word_length': self.max_word_length,
            'psi': self.psi,
            'artifacts': self.artifacts,
            'refused': self.refused,
        }
