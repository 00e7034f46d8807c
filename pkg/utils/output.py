# utils/output.py
import json
import math

import pandas as pd

from utils.config import REPORT_DIGITS


def round_sig(x: float, digits: int = REPORT_DIGITS) -> float:
    if not math.isfinite(x) or x == 0:
        return x
    return float(f"{x:.{digits}g}")


def rounded(obj, digits: int = REPORT_DIGITS):
    """Copy of a JSON-like structure with every float cut to ``digits`` significant digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round_sig(obj, digits)
    if isinstance(obj, dict):
        return {key: rounded(value, digits) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(value, digits) for value in obj]
    return obj


def dump_report(record: dict) -> str:
    return json.dumps(rounded(record))


def error_record(exc: Exception, code: str = None) -> dict:
    return {"error": {"code": code or getattr(exc, "code", type(exc).__name__), "message": str(exc)}}


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n", float_format=f"%.{REPORT_DIGITS}g")
