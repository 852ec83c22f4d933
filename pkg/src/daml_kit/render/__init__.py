from .dot import RenderError, to_dot
from .json_io import VERSION, from_json, to_dict, to_json
from .summary import DataSummary, summarize

__all__ = ["DataSummary", "RenderError", "VERSION", "from_json", "summarize", "to_dict", "to_dot", "to_json"]
