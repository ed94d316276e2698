"""Time series dimensionality reduction by optimized selection of timestamps."""

from .dataset import (
    DatasetPair,
    LabeledDataset,
    TimeSeries,
    load_pair,
    load_ucr,
    parse_ucr,
    serialize_ucr,
    znormalize,
)
from .distance import euclidean, mindist, paa_distance, reduced_distance
from .errors import ContractError, EmptyDatasetError, FormatError, InvariantError
from .representation import (
    SaxWord,
    TimestampChromosome,
    gaussian_breakpoints,
    paa,
    project,
    sax,
)

__version__ = "0.1.0"
