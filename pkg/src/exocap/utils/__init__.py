"""exocap utilities.

Should not have any dependency on other exocap packages.
"""
