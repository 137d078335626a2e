"""Clustered graphs, embeddings, drawings and result schemas."""
