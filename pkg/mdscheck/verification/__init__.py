"""Independent re-verification of the certificates attached to verdicts."""
