"""Command-line surface: file formats, named source graphs, entry point."""
