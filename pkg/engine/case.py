"""Case files: YAML or line grammar, both loading into CaseFile.

Line grammar (`#` starts a comment):

    semigroup: 6 11 15 31
    char: 32003
    ideal: t^6, t^11, t^31
    reduction: t^6
    option rBound=50
"""

import logging
import os
from pathlib import Path
from typing import Any, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from engine.errors import CaseError
from engine.series import validate_characteristic

logger = logging.getLogger(__name__)

DEFAULT_CHARACTERISTIC = 32003
CHARACTERISTIC_ENV = "FIBERCONE_CHAR"


def default_characteristic() -> int:
    """
    The characteristic used when a case does not name one.

    Raises:
        CaseError: If FIBERCONE_CHAR is set to something other than a supported prime
    """
    raw = os.environ.get(CHARACTERISTIC_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CHARACTERISTIC
    try:
        value = int(raw)
    except ValueError as exc:
        raise CaseError(f"{CHARACTERISTIC_ENV} must be an integer, got {raw!r}") from exc
    return validate_characteristic(value)


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        where = ".".join(str(x) for x in err["loc"]) or "case"
        parts.append(f"{where}: {err['msg']}")
    return "; ".join(parts)


class CaseOptions(BaseModel):
    """Analysis options of a case.

    Attributes:
        r_bound: Largest reduction number tried (alias rBound)
        attempts: Random reduction candidates tried after the generators
        seed: Seed of every random choice in the analysis
        truncation: Reporting degree override; None means certify automatically
        comparisons: Random reductions added to the comparison
        max_doublings: Doubling budget of truncation certification (alias maxDoublings)
    """
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    r_bound: int = Field(50, alias="rBound", ge=0)
    attempts: int = Field(20, ge=0)
    seed: int = 0
    truncation: Optional[int] = Field(None, ge=0)
    comparisons: int = Field(3, ge=0)
    max_doublings: int = Field(4, alias="maxDoublings", ge=0)


class CaseFile(BaseModel):
    """One analysis input.

    Attributes:
        name: Label used in reports and sweep rows
        description: Free text
        semigroup: Generators of S
        char: Field characteristic p
        ideal: Generator expressions of I
        reductions: Optional reduction expressions, verified before use
        options: Analysis options
    """
    name: str = "case"
    description: str = ""
    semigroup: list[int]
    char: int = Field(default_factory=default_characteristic)
    ideal: list[str]
    reductions: list[str] = Field(default_factory=list)
    options: CaseOptions = Field(default_factory=CaseOptions)

    @field_validator("char")
    @classmethod
    def _check_char(cls, value: int) -> int:
        validate_characteristic(value)
        return value

    @field_validator("ideal")
    @classmethod
    def _check_ideal(cls, value: list[str]) -> list[str]:
        if not value:
            raise ValueError("zero ideal: no generators given")
        return value

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CaseFile":
        """
        Build a case from a parsed mapping.

        `reduction` is accepted for `reductions`; a single string becomes a
        one-element list.

        Raises:
            CaseError: If the mapping does not describe a valid case
        """
        if not isinstance(data, dict):
            raise CaseError(f"case must be a mapping, got {type(data).__name__}")
        data = dict(data)
        if "reduction" in data:
            data.setdefault("reductions", data.pop("reduction"))
        for key in ("ideal", "reductions"):
            if isinstance(data.get(key), str):
                data[key] = [data[key]]
        if data.get("options") is None:
            data.pop("options", None)
        try:
            return cls(**data)
        except ValidationError as exc:
            raise CaseError(f"invalid case: {_validation_message(exc)}") from exc

    @classmethod
    def from_yaml(cls, text: str, name: Optional[str] = None) -> "CaseFile":
        """Parse a YAML case; `name` fills in a missing `name` key."""
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise CaseError(f"invalid YAML: {exc}") from exc
        if name is not None and isinstance(data, dict):
            data.setdefault("name", name)
        return cls.from_dict(data)

    @classmethod
    def from_text(cls, text: str, name: str = "case") -> "CaseFile":
        """
        Parse the line grammar.

        Raises:
            CaseError: On an unknown key, a malformed line or an invalid case
        """
        data: dict[str, Any] = {"name": name, "reductions": [], "options": {}}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("option "):
                body = line[len("option "):].strip()
                key, sep, value = body.partition("=")
                if not sep or not key.strip():
                    raise CaseError(f"line {number}: option needs <name>=<value>, got {body!r}")
                data["options"][key.strip()] = _option_value(value.strip(), number)
                continue
            key, sep, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if not sep:
                raise CaseError(f"line {number}: expected '<key>: <value>', got {line!r}")
            if key == "semigroup":
                try:
                    data["semigroup"] = [int(x) for x in value.replace(",", " ").split()]
                except ValueError as exc:
                    raise CaseError(f"line {number}: semigroup generators must be integers") from exc
            elif key == "char":
                data["char"] = _option_value(value, number)
            elif key == "ideal":
                data["ideal"] = [g.strip() for g in value.split(",") if g.strip()]
            elif key == "reduction":
                data["reductions"].append(value)
            elif key in ("name", "description"):
                data[key] = value
            else:
                raise CaseError(f"line {number}: unknown key {key!r}")
        for required in ("semigroup", "ideal"):
            if required not in data:
                raise CaseError(f"missing '{required}:' line")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CaseFile":
        """
        Load a case file; `.yaml`/`.yml` files are YAML, anything else is line grammar.

        Raises:
            CaseError: If the file cannot be read or parsed
        """
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise CaseError(f"cannot read case file {path}: {exc}") from exc
        if path.suffix not in (".yaml", ".yml"):
            return cls.from_text(text, name=path.stem)
        return cls.from_yaml(text, name=path.stem)


def _option_value(value: str, number: int) -> Union[int, None, str]:
    if value.lower() in ("none", "auto", ""):
        return None
    try:
        return int(value)
    except ValueError:
        return value
