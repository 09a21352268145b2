"""
Witt Tensor - Schemas and Report Definitions

This module defines the data models shared across the package: simple-module
labels, composition reports, verification checks and the configuration of a
verification run. Matrices never appear here; everything in this module is
plain data that serializes to JSON.
"""

from collections import Counter
from enum import Enum
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from witt_tensor.errors import IndexOutOfRangeError


# ============================================================================
# ENUMS
# ============================================================================

class CheckStatus(str, Enum):
    """Outcome of a single verification check."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class VerificationPhase(str, Enum):
    """Phase of the verification graph a check belongs to."""
    STRUCTURE = "structure"
    CONSTRUCTORS = "constructors"
    LINALG = "linalg"
    LEMMAS = "lemmas"
    SPLIT = "split"
    WEIGHTS = "weights"
    CHAINS = "chains"
    THEOREM = "theorem"
    GROTHENDIECK = "grothendieck"


class RunMode(str, Enum):
    """Which suite of phases a run executes."""
    VERIFY = "verify"
    SELFTEST = "selftest"


class OutputFormat(str, Enum):
    TEXT = "text"
    MARKDOWN = "md"
    JSON = "json"


# ============================================================================
# SIMPLE MODULE LABELS
# ============================================================================

def simple_dim(p: int, highest_weight: int) -> int:
    """Dimension of L(lambda): 1 for lambda=0, p-1 for lambda=p-1, p otherwise."""
    if highest_weight == 0:
        return 1
    if highest_weight == p - 1:
        return p - 1
    return p


def lowest_from_highest(p: int, highest_weight: int) -> int:
    """Label mu of L^-(mu) for L(lambda)."""
    if highest_weight == 0:
        return 0
    if highest_weight == p - 1:
        return 1
    return highest_weight + 1


def highest_from_lowest(p: int, lowest_weight: int) -> int:
    """Inverse of lowest_from_highest."""
    if lowest_weight == 0:
        return 0
    if lowest_weight == 1:
        return p - 1
    return lowest_weight - 1


class SimpleLabel(BaseModel):
    """Identity card of a simple restricted W(1)-module."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int = Field(description="Characteristic of the ground field")
    highest_weight: int = Field(alias="lambda", description="Label lambda of L(lambda)")
    lowest_weight: int = Field(description="e_0-weight mu of the vector killed by e_-1, label of L^-(mu)")
    dim: int = Field(description="Dimension of the simple module")

    @model_validator(mode="after")
    def check_consistency(self) -> "SimpleLabel":
        if not (0 <= self.highest_weight < self.p and 0 <= self.lowest_weight < self.p):
            raise ValueError(f"weights must lie in 0..{self.p - 1}")
        if lowest_from_highest(self.p, self.highest_weight) != self.lowest_weight:
            raise ValueError(
                f"L({self.highest_weight}) has lowest weight "
                f"{lowest_from_highest(self.p, self.highest_weight)}, not {self.lowest_weight}"
            )
        if simple_dim(self.p, self.highest_weight) != self.dim:
            raise ValueError(f"L({self.highest_weight}) has dimension {simple_dim(self.p, self.highest_weight)}")
        return self

    @classmethod
    def from_highest_weight(cls, p: int, highest_weight: int) -> "SimpleLabel":
        if not 0 <= highest_weight < p:
            raise IndexOutOfRangeError(f"lambda={highest_weight} outside 0..{p - 1}")
        return cls(
            p=p,
            highest_weight=highest_weight,
            lowest_weight=lowest_from_highest(p, highest_weight),
            dim=simple_dim(p, highest_weight),
        )

    @classmethod
    def from_lowest_weight(cls, p: int, lowest_weight: int) -> "SimpleLabel":
        if not 0 <= lowest_weight < p:
            raise IndexOutOfRangeError(f"mu={lowest_weight} outside 0..{p - 1}")
        return cls.from_highest_weight(p, highest_from_lowest(p, lowest_weight))

    def notation(self) -> str:
        return f"L({self.highest_weight})"

    def lowest_notation(self) -> str:
        return f"L⁻({self.lowest_weight})"

    def __str__(self) -> str:
        return f"{self.notation()}={self.lowest_notation()}"


# ============================================================================
# COMPOSITION REPORTS
# ============================================================================

class CompositionReport(BaseModel):
    """
    A composition series of a module.

    `chain` lists submodule dimensions top-down ending at 0 and `factors[k]`
    is the simple quotient chain[k] / chain[k+1].
    """
    module_name: str = Field(description="Human readable name of the module")
    p: int = Field(description="Characteristic")
    module_dim: int = Field(description="Dimension of the module")
    chain: List[int] = Field(description="Descending submodule dimensions ending at 0")
    factors: List[SimpleLabel] = Field(description="Simple factor per chain step, top-down")
    grothendieck: List[int] = Field(description="Multiplicity of L(lambda), indexed by lambda")

    @model_validator(mode="after")
    def check_chain(self) -> "CompositionReport":
        if not self.chain or self.chain[0] != self.module_dim or self.chain[-1] != 0:
            raise ValueError("chain must run from module_dim down to 0")
        if len(self.factors) != len(self.chain) - 1:
            raise ValueError("one factor per chain step required")
        for k, label in enumerate(self.factors):
            if self.chain[k] - self.chain[k + 1] != label.dim:
                raise ValueError(f"step {k} has dimension {self.chain[k] - self.chain[k + 1]} but factor {label.notation()} has {label.dim}")
        if len(self.grothendieck) != self.p:
            raise ValueError("grothendieck vector must have p entries")
        counts = Counter(label.highest_weight for label in self.factors)
        if any(self.grothendieck[lam] != counts.get(lam, 0) for lam in range(self.p)):
            raise ValueError("grothendieck vector disagrees with factors")
        return self

    @classmethod
    def from_factors(cls, module_name: str, p: int, factors: List[SimpleLabel]) -> "CompositionReport":
        """Build a report from top-down factors; dimensions are accumulated from the bottom."""
        chain = [0]
        for label in reversed(factors):
            chain.append(chain[-1] + label.dim)
        return cls(
            module_name=module_name,
            p=p,
            module_dim=chain[-1],
            chain=list(reversed(chain)),
            factors=list(factors),
            grothendieck=grothendieck_vector(p, factors),
        )

    def factor_multiset(self) -> Tuple[int, ...]:
        return tuple(sorted(label.highest_weight for label in self.factors))


def grothendieck_vector(p: int, factors: List[SimpleLabel]) -> List[int]:
    counts = Counter(label.highest_weight for label in factors)
    return [counts.get(lam, 0) for lam in range(p)]


# ============================================================================
# VERIFICATION RESULTS
# ============================================================================

class CheckResult(BaseModel):
    """One named check of a verification run."""
    name: str = Field(description="Stable identifier of the check")
    phase: VerificationPhase = Field(description="Graph phase that produced the check")
    status: CheckStatus = Field(description="pass, fail or skipped")
    detail: str = Field(default="", description="What was compared, or why it failed")


class WeightTable(BaseModel):
    """Dimensions of weight spaces per module of the tensor square."""
    p: int
    rows: Dict[str, List[int]] = Field(description="Computed dims per weight 0..p-1")
    expected: Dict[str, List[int]] = Field(description="Closed-form dims per weight 0..p-1")

    def mismatches(self) -> List[str]:
        return [name for name, dims in self.expected.items() if self.rows.get(name) != dims]


class ChainTable(BaseModel):
    """The spans A^+[i] = u(g).v_i of one top level with the degrees of their generators."""
    kind: str = Field(description="'sym' or 'alt'")
    degrees: List[int] = Field(description="Degrees i of the generators v_i")
    dims: List[int] = Field(description="dim A^+[i] per generator, followed by 0")
    heads: List[SimpleLabel] = Field(default_factory=list, description="Top factor of u(g).v_i per generator")
    nested: bool = Field(description="The spans decrease strictly from the whole top level")


class VerificationReport(BaseModel):
    """Everything a run produced for one prime."""
    prime: int
    mode: RunMode
    checks: List[CheckResult] = Field(default_factory=list)
    tables: Dict[str, Any] = Field(default_factory=dict)
    series: List[CompositionReport] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)

    @computed_field
    @property
    def status(self) -> CheckStatus:
        if self.checks and all(check.status == CheckStatus.PASS for check in self.checks):
            return CheckStatus.PASS
        return CheckStatus.FAIL

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status != CheckStatus.PASS]


# ============================================================================
# RUN CONFIGURATION
# ============================================================================

class VerificationConfig(BaseModel):
    """Knobs of a verification run; every field maps to a CLI flag."""
    enumeration_cap: int = Field(default=5, ge=1, description="Max dim of a weight component of ker e_-1 to enumerate")
    shuffles: int = Field(default=5, ge=0, description="Random candidate orders per Jordan-Holder stability test")
    seed: int = Field(default=0, description="Seed of every randomized property test")
    linalg_trials: int = Field(default=20, ge=1, description="Random instances per linear-algebra property")
    stability_max_prime: int = Field(default=7, description="Largest prime that runs the stability test")
    include_timings: bool = Field(default=True, description="Record per-phase wall time")
