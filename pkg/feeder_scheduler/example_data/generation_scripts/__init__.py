"""Scripts used to generate the synthetic example data."""
