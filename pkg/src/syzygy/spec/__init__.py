from .models import MeasureReport, OracleDocument
from .schemas import SchemaRegistry, SchemaValidationError

__all__ = ["MeasureReport", "OracleDocument", "SchemaRegistry", "SchemaValidationError"]
