"""A dummy module with a schema and a constants class."""
