"""Small-independence, small-codegree hypergraph constructions and their verification."""

__version__ = "0.1.0"
