"""Decision procedures, oracles, corpora and experiments."""
