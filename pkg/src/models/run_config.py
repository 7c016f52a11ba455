"""
Command-line run configuration.
"""
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import config
from models.factorization import FactorizationConfig
from models.regression import DescentConfig, IrslsConfig, NewtonConfig
from utils.validators import (
    raise_on_errors, validate_choice, validate_integer, validate_number
)

OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """
    Solver settings collected from the command line, validated once and
    converted to the per-solver configurations.
    """
    seed: int = config.DEFAULT_SEED
    starts: int = config.MULTISTART_STARTS
    mu: float = config.NEWTON_MU
    stall: int = config.STALL_WINDOW
    max_iter: int = config.MAX_ITER
    tol: float = config.TOL
    lam: float = 0.0
    rank: int = 2
    restarts: int = config.FACTOR_RESTARTS
    tie_tol: float = 0.0
    threads: Optional[int] = None
    output_format: str = "json"

    def __post_init__(self):
        results = [
            validate_integer(self.seed, "seed", 0),
            validate_integer(self.starts, "starts", 1),
            validate_number(self.mu, "mu", 0.0, 1.0, min_inclusive=False),
            validate_integer(self.stall, "stall", 1),
            validate_integer(self.max_iter, "max_iter", 1),
            validate_number(self.tol, "tol", 0.0),
            validate_number(self.lam, "lambda", 0.0),
            validate_integer(self.rank, "rank", 1),
            validate_integer(self.restarts, "restarts", 1),
            validate_number(self.tie_tol, "tie_tol", 0.0),
            validate_choice(self.output_format, "output_format", OUTPUT_FORMATS),
        ]
        if self.threads is not None:
            results.append(validate_integer(self.threads, "threads", 1))
        raise_on_errors(results)

    def newton(self) -> NewtonConfig:
        return NewtonConfig(
            mu=self.mu,
            stall_window=self.stall,
            max_iter=self.max_iter,
            starts=self.starts,
            seed=self.seed,
            tol=self.tol,
            threads=self.threads,
        )

    def irsls(self) -> IrslsConfig:
        return IrslsConfig(newton=self.newton())

    def descent(self) -> DescentConfig:
        return DescentConfig(tie_tol=max(self.tie_tol, config.DESCENT_TIE_TOL))

    def factorization(self) -> FactorizationConfig:
        return FactorizationConfig(
            seed=self.seed,
            restarts=self.restarts,
            threads=self.threads,
        )

    def to_dict(self) -> Dict[str, Any]:
        document = asdict(self)
        document["lambda"] = document.pop("lam")
        return document
