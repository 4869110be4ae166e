"""Information geometry of quantum states from divergence functions.

Closed-form Tsallis metrics and connections on qubit and qutrit state spaces,
a finite-difference oracle that derives the same objects from any divergence,
spin and Gaussian tomograms, and a small command-line front end.
"""

from .charts import qubit_exp_chart, qubit_polar_chart, qutrit_exp_chart, simplex_chart
from .divergences import (DivergenceKind, classical_tsallis, half_half_divergence, hellinger_potential,
                          make_divergence, quantum_tsallis, shannon_relative, von_neumann_relative)
from .errors import QIGError
from .hermitian import eigendecompose_hermitian, matrix_log, matrix_power, validate_density
from .metrics import (MetricTensor, fisher_rao_simplex, petz_f, qubit_metric, qubit_metric_q1,
                      qutrit_metric, radial_limit_metric)
from .oracle import FDScheme, connection_fd, curvature_fd, metric_fd

__version__ = "0.1.0"
