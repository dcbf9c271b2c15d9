"""Certify graphs as identified by their generalized block Laplacian spectrum."""
