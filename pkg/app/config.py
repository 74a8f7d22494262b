"""
Application configuration using Pydantic settings
Server, logging, solver tolerance and verification defaults from the environment
"""

import re

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.services.solvers import SolverConfig

_GRID_PATTERN = re.compile(r"^\d+x\d+$")


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Server Configuration
    host: str = Field(default="0.0.0.0", alias="HOST")
    port: int = Field(default=8000, alias="PORT")
    reload: bool = Field(default=True, alias="RELOAD")

    # Logging Configuration
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")

    # Solver Configuration
    solver_abs_tol: float = Field(default=1e-12, alias="SOLVER_ABS_TOL")
    solver_rel_tol: float = Field(default=1e-15, alias="SOLVER_REL_TOL")
    solver_xtol: float = Field(default=1e-15, alias="SOLVER_XTOL")
    solver_max_iter: int = Field(default=200, alias="SOLVER_MAX_ITER")
    solver_fd_step: float = Field(default=1e-6, alias="SOLVER_FD_STEP")

    # Oracle and verification defaults
    oracle_resolution: int = Field(default=200, alias="ORACLE_RESOLUTION")
    verify_seed: int = Field(default=42, alias="VERIFY_SEED")
    verify_grid: str = Field(default="20x200", alias="VERIFY_GRID")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Ensure log level is valid"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v = v.upper()
        if v not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}")
        return v

    @field_validator("port")
    @classmethod
    def validate_port(cls, v: int) -> int:
        """Ensure port is in valid range"""
        if not 1 <= v <= 65535:
            raise ValueError("PORT must be between 1 and 65535")
        return v

    @field_validator("solver_abs_tol", "solver_rel_tol", "solver_xtol", "solver_fd_step")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Tolerances and step sizes must be strictly positive"""
        if not v > 0.0:
            raise ValueError("solver tolerances and steps must be positive")
        return v

    @field_validator("solver_max_iter")
    @classmethod
    def validate_max_iter(cls, v: int) -> int:
        if v < 1:
            raise ValueError("SOLVER_MAX_ITER must be at least 1")
        return v

    @field_validator("oracle_resolution")
    @classmethod
    def validate_resolution(cls, v: int) -> int:
        if v < 10:
            raise ValueError("ORACLE_RESOLUTION must be at least 10")
        return v

    @field_validator("verify_grid")
    @classmethod
    def validate_grid(cls, v: str) -> str:
        """Grid is RxC with both dimensions positive"""
        v = v.strip().lower()
        if not _GRID_PATTERN.match(v) or any(int(n) < 1 for n in v.split("x")):
            raise ValueError("VERIFY_GRID must look like RxC, e.g. 20x200")
        return v

    def solver_config(self) -> SolverConfig:
        """SolverConfig assembled from the solver fields"""
        return SolverConfig(
            abs_tol=self.solver_abs_tol,
            rel_tol=self.solver_rel_tol,
            xtol=self.solver_xtol,
            max_iter=self.solver_max_iter,
            fd_step=self.solver_fd_step,
        )


# Global settings instance
settings = Settings()
