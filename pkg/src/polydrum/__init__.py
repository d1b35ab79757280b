"""polydrum: certified Dirichlet eigenvalues of regular polygons and the
coefficients, closed forms, and convergence radius of their 1/S expansion.

Modules
-------
specfun      Bessel roots, even/odd zeta values, known closed-form
             coefficients, and the truncated-series predictor.
geometry     Area conventions and the inscribed-polygon rescaling of the
             expansion.
eigensolver  Certified fundamental eigenvalues via particular solutions
             with two-sided a posteriori enclosures.
tablefile    Plain-text eigenvalue tables with directed decimal rounding.
seriesfit    Four-pass arbitrary-precision regression for expansion
             coefficients with up/down split error estimates.
intrel       Exact-lattice integer-relation mining for closed forms.
convergence  Coefficient growth model and convergence-radius estimate.
cli          Batch front end (solve, fit, relation, converge, predict,
             check-error).
"""

from . import (  # noqa: F401
    convergence,
    eigensolver,
    errors,
    geometry,
    intrel,
    kernel,
    seriesfit,
    specfun,
    tablefile,
)
from .eigensolver import EigenInterval, MpsConfig, solve  # noqa: F401
from .errors import (  # noqa: F401
    BracketError,
    CertificationError,
    ConvergenceError,
    PolydrumError,
    PrecisionUnachievableError,
    SingularSystemError,
)
from .specfun import known_coefficient, lambda_circle, predict  # noqa: F401

__version__ = "1.0.0"

__all__ = [
    "BracketError",
    "CertificationError",
    "ConvergenceError",
    "EigenInterval",
    "MpsConfig",
    "PolydrumError",
    "PrecisionUnachievableError",
    "SingularSystemError",
    "__version__",
    "convergence",
    "eigensolver",
    "errors",
    "geometry",
    "intrel",
    "kernel",
    "known_coefficient",
    "lambda_circle",
    "predict",
    "seriesfit",
    "solve",
    "specfun",
    "tablefile",
]
