"""
Report generators for different formats
"""
from .csv_reporter import CSVReporter
from .json_reporter import JSONReporter, jsonable
from .markdown_reporter import MarkdownReporter

__all__ = ['CSVReporter', 'JSONReporter', 'MarkdownReporter', 'jsonable']
