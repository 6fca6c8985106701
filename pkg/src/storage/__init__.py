from .exporters import FLOAT_FORMAT, TableExporter

__all__ = ['FLOAT_FORMAT', 'TableExporter']
