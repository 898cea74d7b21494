"""Data files, settings and logging for the geostar command line."""
