"""Corpus exploration engine for scientific paper metadata.

Ingests a CORD-19-style metadata CSV, classifies abstract sentences into
research aspects, trains per-aspect topic models, and serves topic
browsing, paper recommendation, keyword search, 2D projection, and
dictionary-based entity linking over HTTP and a CLI.
"""

__version__ = "0.1.0"
