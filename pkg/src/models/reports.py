"""
JSON 报告数据模型
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "n2verma/1"


class Status(str, Enum):
    """检验状态"""
    PASS = "pass"
    FAIL = "fail"


class OutputFormat(str, Enum):
    """输出格式"""
    TEXT = "text"
    JSON = "json"
    DOT = "dot"
    CSV = "csv"


class Report(BaseModel):
    """所有报告的基类, 序列化时带 "schema" 字段"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class MonomialTerm(BaseModel):
    monomial: str
    coeff: str


class BigradeModel(BaseModel):
    charge: int
    level: int


# 代数结构
class StructureReport(Report):
    """代数结构检验"""
    algebra: str
    samples: int
    seed: int
    antisymmetry_failures: int = 0
    jacobi_failures: int = 0
    flow_failures: int = 0
    witnesses: List[str] = Field(default_factory=list)
    passed: bool


class FlowReport(Report):
    """谱流像"""
    algebra: str
    theta: int
    mode: str
    image: str


# 模
class BasisReport(Report):
    module: str
    parameters: Dict[str, str]
    bigrade: BigradeModel
    dimension: int
    basis: List[str]


class GramReport(Report):
    module: str
    bigrade: BigradeModel
    basis: List[str]
    matrix: List[List[str]]
    symmetric: bool
    rank: int


class NormReport(Report):
    j: str
    Lambda: str
    n: int
    norm: str


class SingularVectorEntry(BaseModel):
    kind: str
    bigrade: BigradeModel
    theta: int
    condition: str
    verified: bool
    kernel_dimension: int
    state: List[MonomialTerm]
    labels: Dict[str, Any] = Field(default_factory=dict)


class SingularVectorReport(Report):
    module: str
    max_level: int
    vectors: List[SingularVectorEntry]


class DiagramReport(Report):
    name: str
    nodes: List[Dict[str, Any]]
    edges: List[Dict[str, str]]


class CharacterEntry(BaseModel):
    key: List[int]
    dim: int


class CharacterReport(Report):
    module: str
    gradings: List[str]
    bounds: Dict[str, List[int]]
    entries: List[CharacterEntry]


# Theorem 检验
class HighestWeightEntry(BaseModel):
    theta: int
    passed: bool
    kernel_dimension: int
    detail: str = ""
    state: List[MonomialTerm] = Field(default_factory=list)


class MismatchEntry(BaseModel):
    key: List[int]
    difference: int


class DecompositionReport(Report):
    theorem: str
    module: str
    theta_window: List[int]
    charge_window: List[int]
    max_level: int
    closure_failures: int
    highest_weight: List[HighestWeightEntry]
    mismatches: List[MismatchEntry]
    dictionary: Dict[str, str]
    status: Status


# 弦实现
class LabelReport(BaseModel):
    h: str
    l: str
    t: str
    theta: int
    alpha: Optional[int] = None


class StringCheckEntry(BaseModel):
    name: str
    status: Status
    detail: str = ""
    label: Optional[LabelReport] = None


class StringCheckReport(Report):
    t: str
    checks: List[StringCheckEntry]
    status: Status


# 验收套件
class CriterionEntry(BaseModel):
    number: int
    name: str
    status: Status
    checks: int
    detail: str = ""


class SuiteReport(Report):
    scale: str
    seed: int
    criteria: List[CriterionEntry]
    passed: int
    failed: int
    status: Status


def status_of(passed: bool) -> Status:
    return Status.PASS if passed else Status.FAIL
