"""Panel data model and CSV I/O"""
from .models import Panel, PanelSplit, PanelValidationError, split_pre_post
from .config import BlockPosition, ConfigurationError, EstimationConfig
from .io import dump_panel, load_panel

__all__ = [
    'Panel',
    'PanelSplit',
    'PanelValidationError',
    'split_pre_post',
    'BlockPosition',
    'ConfigurationError',
    'EstimationConfig',
    'dump_panel',
    'load_panel',
]
