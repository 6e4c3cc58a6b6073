"""Adaptive multiscale ensemble forecasting for seasonal time series.

The toolkit decomposes a series into trend, seasonal and volatility modes,
forecasts each mode with a specialized model (ARIMA, seasonal ARIMA,
least-squares SVR), fuses the component forecasts with an LSSVR combiner,
and evaluates the result against eight benchmark pipelines with MAPE,
directional symmetry, Diebold-Mariano and Pesaran-Timmermann tests.
"""

from .errors import (
    AmeForecastError,
    DegenerateInputError,
    InvalidInputError,
    NumericalFailureError,
    UnsupportedConfigError,
)

__version__ = "0.1.0"

__all__ = [
    "AmeForecastError",
    "DegenerateInputError",
    "InvalidInputError",
    "NumericalFailureError",
    "UnsupportedConfigError",
    "__version__",
]
