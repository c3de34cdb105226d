"""Alpha-rooting colour image enhancement with the two-sided quaternion DFT."""

__version__ = "0.1.0"

from .enhance_freq import (AlphaParams, alpha_root_spectrum, enhance_dft_channelwise,
                           enhance_qdft)
from .measures import BlockGrid, MeasureReport, ceme, eme
from .pipeline import (AlphaGrid, ComparisonConfig, ComparisonRow, MeasureConfig, SweepResult,
                       run_comparison, sweep_dft_channelwise, sweep_qdft)
from .qdft import QSpectrum, iqdft_two_sided, qdft_two_sided_fast, qdft_two_sided_naive
from .qimage import (QuaternionImage, RgbImage, load_image, quaternion_to_rgb,
                     rgb_to_quaternion, save_image)
from .quat_core import Quaternion
from .spatial import hist_eq_v
