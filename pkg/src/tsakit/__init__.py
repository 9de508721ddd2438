"""Time-series analysis toolkit with a reproducible analysis pipeline.

All numerical machinery (distribution tails, FFT, Levinson-Durbin, polynomial
roots, random number generation) is implemented inside this package; numpy is
used for array storage and arithmetic only.
"""

__version__ = "0.1.0"

from .armodel import (AicRow, AicTable, ArModel, RandomWalkMoments,
                      RandomWalkSpec, characteristic_roots,
                      fit_ar_least_squares, fit_ar_yule_walker, is_stationary,
                      psi_weights, random_walk_moments, select_order_aic,
                      simulate_ar, simulate_random_walk, unit_root_flags)
from .correlation import AcfEstimate, sample_acf, theoretical_ar_acf
from .errors import (DegenerateFitError, DuplicateMonthError, IngestionError,
                     InsufficientDataError, InvalidArgumentError,
                     MalformedRowError, MissingInputError, MonthGapError,
                     NonStationaryModelError, PipelineStageError, TsaError,
                     ZeroVarianceError)
from .pipeline import (AnalysisReport, PipelineConfig, histogram_data,
                       ingest_csv, qq_plot_data, run_pipeline, write_outputs)
from .regression import (Censoring, LinearTrendFit, PValue, f_distribution_sf,
                         fit_linear_trend, t_distribution_sf)
from .series import (DifferenceSpec, Period, TimeSeries, demean,
                     detrend_linear, difference, integrate)
from .spectral import (DftResult, EstimatorKind, SpectrumEstimate, ar_psd,
                       daniell_smooth, dft, inverse_dft, periodogram)
from .stattests import (HypothesisTestResult, chi_square_sf, jarque_bera,
                        kpss_level, shapiro_wilk)
