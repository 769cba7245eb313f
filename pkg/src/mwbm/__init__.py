"""Maximum weight bipartite matching by modified graph decomposition."""

__version__ = "0.1.0"
