import logging
import pathlib
import re
from typing import Literal, Mapping, Optional

import toml
from pydantic import BaseModel, Field, ValidationError

from moby.synth.SafetyGame import DEFAULT_ARENA_BUDGET

logger = logging.getLogger(__name__)

CONFIG_FILE = "moby.toml"
BUDGET_ENV = "MOBY_ARENA_BUDGET"
LOG_LEVEL_ENV = "LOG_LEVEL"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_POWER = re.compile(r"^\s*2\s*(\^|\*\*)\s*(\d+)\s*$")


def parse_budget(text: str) -> int:
    """An arena budget written as an integer or as a power of two ("2^20", "2**20")."""
    match = _POWER.match(text)
    if match:
        return 1 << int(match.group(2))
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"Invalid arena budget '{text}'") from None
    if value < 1:
        raise ValueError(f"Arena budget must be positive, got {value}")
    return value


# --- Solver Configuration Model ---


class SolverConfig(BaseModel):
    arena_budget: int = Field(DEFAULT_ARENA_BUDGET, ge=1)
    # None means no time limit
    timeout: Optional[float] = Field(None, gt=0)
    bench_timeout: float = Field(60.0, gt=0)
    jobs: int = Field(1, ge=1)
    # "window" lays out the full arena, "lazy" only explores reachable progression states
    method: Literal["window", "lazy"] = "window"


# --- Main Application Configuration Model ---


class MobyConfig(BaseModel):
    """
    Main application configuration.

    Precedence is command line flag > environment > moby.toml > defaults; the
    command line is applied by the caller after the other two.
    """

    workspace_path: Optional[pathlib.Path] = Field(
        None, description="Root of the artifact repository used by the HTTP server"
    )
    solver: SolverConfig = Field(default_factory=SolverConfig)
    log_level: str = "INFO"

    def load_workspace_config(self) -> None:
        """
        Loads `<workspace>/moby.toml` over the current settings.

        Raises:
            ValueError: if the file cannot be read or does not validate
        """
        if self.workspace_path is None:
            return

        config_file_path = self.workspace_path / CONFIG_FILE
        if not config_file_path.exists():
            logger.warning(
                f"No config file found at {config_file_path}. Using default configuration."
            )
            return

        try:
            with open(config_file_path, "r") as f:
                loaded = toml.load(f)
            merged = self.model_dump()
            merged.update({k: v for k, v in loaded.items() if k != "solver"})
            merged["solver"] = {**merged["solver"], **loaded.get("solver", {})}
            validated = MobyConfig.model_validate(merged)
        except ValidationError as e:
            raise ValueError(f"Error validating config in {config_file_path}: {e}")
        except Exception as e:
            raise ValueError(f"Error loading config from {config_file_path}: {e}")

        self.solver = validated.solver
        self.log_level = validated.log_level
        logger.info(f"Loaded configuration from {config_file_path}")

    def apply_environment(self, env: Mapping[str, str]) -> None:
        """
        Applies MOBY_ARENA_BUDGET and LOG_LEVEL.

        Raises:
            ValueError: if a value is malformed
        """
        if env.get(BUDGET_ENV):
            self.solver.arena_budget = parse_budget(env[BUDGET_ENV])
            logger.debug(f"Arena budget {self.solver.arena_budget} from {BUDGET_ENV}")
        if env.get(LOG_LEVEL_ENV):
            level = env[LOG_LEVEL_ENV].upper()
            if level not in LOG_LEVELS:
                raise ValueError(f"Invalid log level '{env[LOG_LEVEL_ENV]}'")
            self.log_level = level
