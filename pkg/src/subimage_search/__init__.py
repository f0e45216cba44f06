"""Accelerated multi-occurrence sub-image search with per-axis time-series
search-space reduction, plus clustering and TSP-ordered patch contours."""

from .imaging import ImageRGB, IntegralImage, integral_image, load_image, rect_sum, save_image, to_gray
from .patches import PatchContour, build_patches, cluster_candidates, tsp_contour
from .profile_search import cost_profile, run_apts_v2
from .search import (
    Candidate,
    SearchResult,
    TopM,
    cost_ssd,
    filter_nonoverlap,
    run_apts_v1,
    run_exhaustive,
    scan_top_m,
)
from .searchspace import SearchSpace, exhaustive_space, reduced_space
from .segmentation import AptsParams, SegmentationInstants, segment, trade_instants
from .timeseries import AxisProfile, MultiSeries, project, reduce_reference

__all__ = [
    "AptsParams",
    "AxisProfile",
    "Candidate",
    "ImageRGB",
    "IntegralImage",
    "MultiSeries",
    "PatchContour",
    "SearchResult",
    "SearchSpace",
    "SegmentationInstants",
    "TopM",
    "build_patches",
    "cluster_candidates",
    "cost_profile",
    "cost_ssd",
    "exhaustive_space",
    "filter_nonoverlap",
    "integral_image",
    "load_image",
    "project",
    "rect_sum",
    "reduce_reference",
    "reduced_space",
    "run_apts_v1",
    "run_apts_v2",
    "run_exhaustive",
    "save_image",
    "scan_top_m",
    "segment",
    "to_gray",
    "trade_instants",
    "tsp_contour",
]
