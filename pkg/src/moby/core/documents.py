"""JSON documents exchanged between pipeline stages."""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1"


class TransitionDocument(BaseModel):
    source: str
    input: List[str] = Field(default_factory=list)
    output: List[str] = Field(default_factory=list)
    target: str


class MachineDocument(BaseModel):
    schema_version: Literal["1"] = SCHEMA_VERSION
    states: List[str]
    initial: str
    inputs: List[str]
    outputs: List[str]
    transitions: List[TransitionDocument]


class ManifestMode(BaseModel):
    index: int
    name: str
    projection: str
    machine: str
    fresh_atoms: List[str] = Field(default_factory=list)
    jumps: Dict[int, str] = Field(default_factory=dict)


class ManifestDocument(BaseModel):
    """What `project` leaves behind for `compose`."""

    schema_version: Literal["1"] = SCHEMA_VERSION
    inputs: List[str]
    outputs: List[str]
    modes: List[ManifestMode]
    relation: List[List[int]] = Field(default_factory=list)
    start_mode: int = 1


class CounterexampleDocument(BaseModel):
    schema_version: Literal["1"] = SCHEMA_VERSION
    inputs: List[List[str]]
    trace: List[List[str]]
    step: int
    requirement: str
    kind: Literal["guarantee", "preset"] = "guarantee"
    description: Optional[str] = None
