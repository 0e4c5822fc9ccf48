"""Dummy modules used to test module registration."""
