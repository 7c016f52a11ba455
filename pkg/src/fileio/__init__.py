"""
File formats: dense matrix text, CSV time series, edge lists and JSON result documents.
"""
from fileio.matrix_text import (
    format_float, parse_token, parse_matrix, read_text, read_matrix, read_vector, format_matrix, write_matrix
)
from fileio.tables import (
    read_csv_matrix, write_csv_rows, read_timeseries_csv, write_timeseries_csv,
    parse_edge_list, read_edge_list
)
from fileio.documents import to_jsonable, from_jsonable, dumps_document, write_document

__all__ = [
    'format_float', 'parse_token', 'parse_matrix', 'read_text', 'read_matrix', 'read_vector',
    'format_matrix', 'write_matrix',
    'read_csv_matrix', 'write_csv_rows', 'read_timeseries_csv', 'write_timeseries_csv',
    'parse_edge_list', 'read_edge_list',
    'to_jsonable', 'from_jsonable', 'dumps_document', 'write_document',
]
