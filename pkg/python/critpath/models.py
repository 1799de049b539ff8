"""Pydantic models for critpath."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from critpath.utils import path_label, to_fraction

Mode = Literal["cpm", "pert"]
Engine = Literal["exact", "ga", "brute-force"]

GENERATOR_ID = "numpy.random.PCG64"


def _coerce_time(value):
    if isinstance(value, (dict, BaseModel)):
        return value
    return to_fraction(value)


class ThreePointEstimate(BaseModel):
    """PERT estimate: optimistic, most likely and pessimistic time."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: Fraction
    m: Fraction
    b: Fraction

    @field_validator("a", "m", "b", mode="before")
    @classmethod
    def _as_time(cls, value):
        return to_fraction(value)

    @property
    def expected(self) -> Fraction:
        from critpath.network import expected_duration
        return expected_duration(self.a, self.m, self.b)


DurationSpec = Union[ThreePointEstimate, Fraction]


class Activity(BaseModel):
    """Named arc from one event node to another."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    name: str
    from_node: str = Field(..., alias="from")
    to_node: str = Field(..., alias="to")
    duration: DurationSpec
    virtual: bool = Field(default=False, description="Zero-duration arc added by terminal normalization")

    @field_validator("from_node", "to_node", "name", mode="before")
    @classmethod
    def _as_text(cls, value):
        return str(value).strip() if value is not None else value

    @field_validator("duration", mode="before")
    @classmethod
    def _as_duration(cls, value):
        return _coerce_time(value)

    @property
    def key(self) -> Tuple[str, str]:
        return (self.from_node, self.to_node)

    @property
    def is_estimate(self) -> bool:
        return isinstance(self.duration, ThreePointEstimate)

    @property
    def effective_duration(self) -> Fraction:
        """Fixed duration, or the expected value of a three-point estimate."""
        if isinstance(self.duration, ThreePointEstimate):
            return self.duration.expected
        return self.duration


class ProjectDocument(BaseModel):
    """Parsed project file."""
    model_config = ConfigDict(frozen=True)

    mode: Mode
    activities: Tuple[Activity, ...]


class ValidationReport(BaseModel):
    """Errors block both engines; warnings are informational."""
    errors: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


class NodeSchedule(BaseModel):
    """Earliest/latest event times of one node."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    node: str
    earliest: Fraction
    latest: Fraction
    slack: Fraction

    @model_validator(mode="after")
    def _check_slack(self):
        if self.slack != self.latest - self.earliest:
            raise ValueError("slack must equal latest - earliest")
        if self.slack < 0:
            raise ValueError(f"negative slack on node {self.node}")
        return self


class ScheduleResult(BaseModel):
    """Critical path answer produced by one engine."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    schedules: Tuple[NodeSchedule, ...] = ()
    critical_path: Tuple[str, ...]
    critical_activities: Tuple[str, ...]
    project_duration: Fraction
    engine: Engine
    virtual_nodes: Tuple[str, ...] = ()
    seed: Optional[int] = None
    generator: Optional[str] = None

    def real_path(self) -> Tuple[str, ...]:
        """Critical path without virtual START/FINISH terminals."""
        return tuple(n for n in self.critical_path if n not in self.virtual_nodes)

    def path_text(self, sep: str = "-") -> str:
        return path_label(self.real_path(), sep=sep)

    def zero_slack_nodes(self) -> Tuple[str, ...]:
        return tuple(s.node for s in self.schedules if s.slack == 0)


@dataclass(frozen=True)
class Chromosome:
    """Source-to-sink path; each gene is a node."""
    __pydantic_config__ = ConfigDict(arbitrary_types_allowed=True)

    genes: Tuple[str, ...]
    fitness: Fraction
    order_key: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.genes)


class GAConfig(BaseModel):
    """Genetic algorithm parameters."""
    model_config = ConfigDict(frozen=True)

    population_size: int = Field(8, ge=2)
    elitism_rate: float = Field(0.25, gt=0.0, le=1.0)
    generations: int = Field(10, ge=1)
    iterations: int = Field(1, ge=1, description="Independent restarts")
    seed: int = Field(0, ge=0)
    clone_retries: int = Field(8, ge=0, description="Re-walk attempts for offspring that duplicate a member")
    workers: int = Field(1, ge=1)

    @property
    def elite_count(self) -> int:
        # exact product: 0.1 * 30 must give 3, not 4
        return math.ceil(to_fraction(self.elitism_rate) * self.population_size)

    @model_validator(mode="after")
    def _check_elites(self):
        if self.elite_count < 1:
            raise ValueError("elitism_rate * population_size must keep at least one chromosome")
        return self

    @classmethod
    def from_settings(cls, settings, **overrides) -> "GAConfig":
        """Build a config from Settings, letting non-None overrides win."""
        values = {
            "population_size": settings.pop_size,
            "elitism_rate": settings.elitism_rate,
            "generations": settings.generations,
            "iterations": settings.iterations,
            "seed": settings.seed,
            "clone_retries": settings.clone_retries,
            "workers": settings.workers,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class GAResult(BaseModel):
    """Outcome of evolve()."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    best: Chromosome
    history: List[Fraction] = Field(default_factory=list, description="Best fitness per generation of the best run")
    run_best: List[Fraction] = Field(default_factory=list, description="Best fitness of every iteration")
    initial_population: List[Chromosome] = Field(default_factory=list)
    seed_used: int
    generator: str = GENERATOR_ID
    converged_to_exact: Optional[bool] = None

    @model_validator(mode="after")
    def _check_history(self):
        if any(later < earlier for earlier, later in zip(self.history, self.history[1:])):
            raise ValueError("best fitness history must be non-decreasing")
        return self


class RunSpec(BaseModel):
    """One invocation of the pipeline."""
    model_config = ConfigDict(frozen=True)

    input_path: Optional[Path] = None
    document: Optional[str] = Field(default=None, description="Inline project text instead of a file")
    label: Optional[str] = None
    mode: Optional[Mode] = None
    engine: Literal["exact", "ga", "both"] = "exact"
    ga: Optional[GAConfig] = None
    output_format: Literal["table", "structured", "dot", "population"] = "table"
    oracle_check: bool = False
    max_paths: int = Field(1_000_000, ge=1)

    @model_validator(mode="after")
    def _check_spec(self):
        if (self.input_path is None) == (self.document is None):
            raise ValueError("exactly one of input_path or document is required")
        if self.engine in ("ga", "both") and self.ga is None:
            raise ValueError(f"engine={self.engine} requires a GA configuration")
        if self.output_format == "population" and self.engine == "exact":
            raise ValueError("population output needs the GA engine")
        return self

    @property
    def project_label(self) -> str:
        if self.label:
            return self.label
        if self.input_path is not None:
            return self.input_path.stem
        return "inline"


class BenchmarkRecord(BaseModel):
    """One row of the exact-vs-GA comparison."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    project: str
    nodes: int = 0
    activities: int = 0
    exact_duration: Optional[Fraction] = None
    ga_duration: Optional[Fraction] = None
    critical_path: str = ""
    critical_activities: str = ""
    agreement: bool = False
    exact_seconds: float = 0.0
    ga_seconds: float = 0.0
    error: Optional[str] = None

    @model_validator(mode="after")
    def _check_agreement(self):
        same = self.exact_duration is not None and self.exact_duration == self.ga_duration
        if self.agreement != same:
            raise ValueError("agreement must be true exactly when both engines report the same duration")
        return self
