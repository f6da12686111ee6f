"""BCC data envelopment analysis with intuitionistic fuzzy data and missing values."""

from .dataio import Dataset, DmuRecord, ImputationPolicy, parse_dataset, parse_policy, write_report  # noqa: F401
from .ifn import TIFN, expected_value, tifn_from_crisp, tifn_new  # noqa: F401
from .imputation import column_stats, crisp_impute, impute_missing_tifn, prepare_dataset  # noqa: F401
from .lp import Constraint, LinearProgram, LpSolution, solve  # noqa: F401
from .models import EfficiencyResult, build_crisp_imbcc, build_fifimbcc, evaluate_all, score_and_classify  # noqa: F401

__version__ = "0.1.0"
