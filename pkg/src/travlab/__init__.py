"""Traversal-invariant definability workbench."""
