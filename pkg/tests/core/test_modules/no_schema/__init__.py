"""A dummy module without a schema file."""
