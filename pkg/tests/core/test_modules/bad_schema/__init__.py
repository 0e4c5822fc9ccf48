"""A dummy module whose schema does not describe its section."""
