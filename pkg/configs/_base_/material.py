"""Plate material shared by every problem; thickness is set per run."""
material = dict(E=10.92e6, nu=0.3, kappa=5.0 / 6.0)
