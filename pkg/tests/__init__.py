"""Test suite for rsharmonic."""
