"""Multi-frequency imaging of perfectly conducting cracks from multi-static response data."""
from .scene import (ArcCrack, DirectionSet, FrequencyGrid, ImagingGrid, Point2, PointCrack,
                    ScattererCloud, SegmentCrack, discretize, make_directions, make_frequencies)
from .specfun import bessel_j0, bessel_j1, circle_sum, quadrature_oracle_psf
from .forward import MSRMatrix, NoiseSpec, add_noise, assemble_msr
from .imaging import (ImagingMap, SVDResult, evaluate_map, find_peaks, imaging_value,
                      psf_closed_form, select_rank, steering, svd)

__version__ = "0.1.0"
