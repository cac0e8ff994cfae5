"""Bibliometric analysis: record ingestion, keyword grouping, citation indices, trends and networks."""

__version__ = "0.1.0"
